# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""A module for unified results of inequality evaluations and audits."""

import json
import math
from enum import Enum

import numpy as np
import pandas as pd

from dimbench.common.enum import Enum as DimBenchEnum
from dimbench.common.utils import logger


class Verdict(DimBenchEnum):
    """The Enum class representing the verdict of an evaluation."""
    PASS = 'pass'
    FAIL = 'fail'


def judge(slack, tolerance):
    """Verdict of a slack against a tolerance, NaN slacks fail.

    Args:
        slack (float): rhs - lhs.
        tolerance (float): accepted negative slack.

    Return:
        Verdict: PASS iff slack >= -tolerance.
    """
    if math.isnan(slack) or math.isnan(tolerance):
        return Verdict.FAIL
    return Verdict.PASS if slack >= -tolerance else Verdict.FAIL


class InequalityEvaluation():
    """Result class of one inequality evaluation in the "lhs <= rhs" orientation.

    The slack is always rhs - lhs and the verdict is derived from the slack and the
    tolerance, so the two can never disagree.
    """
    def __init__(self, inequality_id, lhs, rhs, tolerance, variant=None):
        """Constructor.

        Args:
            inequality_id (InequalityId or str): id of the inequality.
            lhs (float): left-hand side.
            rhs (float): right-hand side.
            tolerance (float): tolerance used for the verdict.
            variant (Enum or str, optional): variant of the inequality.
        """
        self.__inequality_id = str(inequality_id)
        self.__variant = None if variant is None else str(variant)
        self.__lhs = float(lhs)
        self.__rhs = float(rhs)
        self.__tolerance = float(tolerance)
        self.__intermediates = dict()
        self.__flags = list()
        self.__error = None

    @classmethod
    def failure(cls, inequality_id, error, variant=None):
        """Evaluation that raised, recorded with NaN sides and a FAIL verdict.

        Args:
            inequality_id (InequalityId or str): id of the inequality.
            error (str): error text.
            variant (Enum or str, optional): variant of the inequality.

        Return:
            InequalityEvaluation: the failed evaluation.
        """
        evaluation = cls(inequality_id, math.nan, math.nan, math.nan, variant)
        evaluation.set_error(error)
        return evaluation

    def __eq__(self, rhs):
        """Override equal function for deep comparison.

        Args:
            rhs (InequalityEvaluation): instance to compare.

        Return:
            True if two instances have all the same values for all the same attributes.
        """
        return self.__dict__ == rhs.__dict__

    def add_intermediate(self, name, value):
        """Record a named scalar of the computation.

        Args:
            name (str): name of the intermediate, e.g. H, W2 or s_star.
            value (float): the value.

        Return:
            True if succeed to add the intermediate.
        """
        if not name or not isinstance(name, str):
            logger.error('Intermediate name is not string, inequality: {}, name type: {}'.format(
                self.__inequality_id, type(name)
            ))
            return False
        self.__intermediates[name] = float(value)
        return True

    def add_flag(self, flag):
        """Record a diagnostic flag such as a vacuous regime or a violated side condition."""
        if flag not in self.__flags:
            self.__flags.append(str(flag))

    def set_error(self, error):
        """Record the error that prevented the evaluation."""
        self.__error = str(error)

    @property
    def name(self):
        """Id with its variant, as written in reports."""
        return self.__inequality_id if self.__variant is None else '{}:{}'.format(self.__inequality_id, self.__variant)

    @property
    def inequality_id(self):
        """Decoration function to access __inequality_id."""
        return self.__inequality_id

    @property
    def variant(self):
        """Decoration function to access __variant."""
        return self.__variant

    @property
    def lhs(self):
        """Decoration function to access __lhs."""
        return self.__lhs

    @property
    def rhs(self):
        """Decoration function to access __rhs."""
        return self.__rhs

    @property
    def tolerance(self):
        """Decoration function to access __tolerance."""
        return self.__tolerance

    @property
    def slack(self):
        """rhs - lhs."""
        return self.__rhs - self.__lhs

    @property
    def verdict(self):
        """PASS iff slack >= -tolerance and no error occurred."""
        if self.__error is not None:
            return Verdict.FAIL
        return judge(self.slack, self.__tolerance)

    @property
    def passed(self):
        """Whether the verdict is PASS."""
        return self.verdict == Verdict.PASS

    @property
    def intermediates(self):
        """Decoration function to access __intermediates."""
        return self.__intermediates

    @property
    def flags(self):
        """Decoration function to access __flags."""
        return self.__flags

    @property
    def error(self):
        """Decoration function to access __error."""
        return self.__error

    def to_dict(self):
        """Plain dict of the evaluation with its derived slack and verdict."""
        formatted_obj = dict()
        for key in self.__dict__:
            # The name of internal member is like '_InequalityEvaluation__lhs'.
            formatted_key = key.split('__')[1]
            value = self.__dict__[key]
            formatted_obj[formatted_key] = value.value if isinstance(value, Enum) else value
        formatted_obj['slack'] = self.slack
        formatted_obj['verdict'] = self.verdict.value
        return formatted_obj

    def to_string(self):
        """Serialize the InequalityEvaluation object to string.

        Return:
            The serialized string of InequalityEvaluation object.
        """
        return json.dumps(self.to_dict())


class AuditReport():
    """Table of checks sharing one audit, one row per time, node or node pair.

    The table has the columns check, lhs, rhs and tolerance; slack and verdict are
    derived. Any other numeric column is carried into the evaluations as an intermediate.
    """
    required_columns = ['check', 'lhs', 'rhs', 'tolerance']

    def __init__(self, audit_id, table, variant=None):
        """Constructor.

        Args:
            audit_id (InequalityId or str): id of the audit.
            table (pd.DataFrame or list): rows of the audit.
            variant (Enum or str, optional): variant of the audit.
        """
        table = pd.DataFrame(table)
        missing = [c for c in self.required_columns if c not in table.columns]
        if missing:
            logger.log_and_raise(ValueError, 'Audit {} table misses columns {}.'.format(audit_id, missing))
        table = table.reset_index(drop=True)
        table['slack'] = table['rhs'] - table['lhs']
        table['verdict'] = [judge(s, t).value for s, t in zip(table['slack'], table['tolerance'])]
        self.__audit_id = str(audit_id)
        self.__variant = None if variant is None else str(variant)
        self.__table = table
        self.__intermediates = dict()
        self.__flags = list()

    def add_intermediate(self, name, value):
        """Record a named scalar shared by every check of the audit."""
        self.__intermediates[str(name)] = float(value)

    def add_flag(self, flag):
        """Record a diagnostic flag of the audit."""
        if flag not in self.__flags:
            self.__flags.append(str(flag))

    @property
    def audit_id(self):
        """Decoration function to access __audit_id."""
        return self.__audit_id

    @property
    def variant(self):
        """Decoration function to access __variant."""
        return self.__variant

    @property
    def table(self):
        """Decoration function to access __table."""
        return self.__table

    @property
    def intermediates(self):
        """Decoration function to access __intermediates."""
        return self.__intermediates

    @property
    def flags(self):
        """Decoration function to access __flags."""
        return self.__flags

    @property
    def passed(self):
        """Whether every row passes."""
        return bool((self.__table['verdict'] == Verdict.PASS.value).all())

    def worst_slack(self, check):
        """Smallest slack of one check."""
        return float(self.__table.loc[self.__table['check'] == check, 'slack'].min())

    def to_evaluations(self):
        """One evaluation per check, taken at its worst row.

        The worst row is the one with the smallest slack + tolerance. The row count and
        the failing row count are added as intermediates.

        Return:
            list: InequalityEvaluation per check, ordered by check name.
        """
        evaluations = list()
        for check, rows in sorted(self.__table.groupby('check', sort=False), key=lambda item: str(item[0])):
            margin = (rows['slack'] + rows['tolerance']).fillna(-np.inf)
            worst = rows.loc[margin.idxmin()]
            variant = check if self.__variant is None else '{}.{}'.format(self.__variant, check)
            evaluation = InequalityEvaluation(self.__audit_id, worst['lhs'], worst['rhs'], worst['tolerance'], variant)
            for column, value in worst.items():
                if column in ('check', 'lhs', 'rhs', 'tolerance', 'slack', 'verdict'):
                    continue
                if isinstance(value, (bool, np.bool_)):
                    if value:
                        evaluation.add_flag(column)
                elif isinstance(value, (int, float, np.integer, np.floating)):
                    evaluation.add_intermediate(column, value)
            for name, value in self.__intermediates.items():
                evaluation.add_intermediate(name, value)
            for flag in self.__flags:
                evaluation.add_flag(flag)
            evaluation.add_intermediate('rows', len(rows))
            evaluation.add_intermediate('failing_rows', int((rows['verdict'] == Verdict.FAIL.value).sum()))
            evaluations.append(evaluation)
        return evaluations
