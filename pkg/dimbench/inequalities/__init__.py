# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Exposes interfaces of the inequality catalogue used by the DimBench executor."""

import importlib

from dimbench.inequalities.context import ItemCategory, InequalityId, LsiVariant, BrascampLiebVariant
from dimbench.inequalities.result import Verdict, judge, InequalityEvaluation, AuditReport
from dimbench.inequalities.tolerance import Evidence, TolerancePolicy
from dimbench.inequalities.deficits import CoreDeficits, deficit_delta, deficit_lambda, core_deficits
from dimbench.common.utils import LazyImport

InequalityRegistry = LazyImport(
    'dimbench.inequalities.registry', 'InequalityRegistry', lambda: list(
        map(
            importlib.import_module, [
                'dimbench.inequalities.{}'.format(module)
                for module in ['logsobolev', 'talagrand', 'brascamp_lieb', 'concentration', 'structural']
            ] + ['dimbench.dynamics.audits']
        )
    )
)

__all__ = [
    'AuditReport', 'BrascampLiebVariant', 'CoreDeficits', 'Evidence', 'InequalityEvaluation', 'InequalityId',
    'InequalityRegistry', 'ItemCategory', 'LsiVariant', 'TolerancePolicy', 'Verdict', 'core_deficits',
    'deficit_delta', 'deficit_lambda', 'judge'
]
