# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Report rows and their CSV and JSON writers."""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from dimbench.common.utils import get_config, logger
from dimbench.inequalities import Verdict

CSV_COLUMNS = [
    'scenario', 'item', 'variant', 'label', 'lhs', 'rhs', 'slack', 'tolerance', 'verdict', 'intermediates', 'flags',
    'error'
]


def format_float(value):
    """Float with 17 significant digits, as every report writes them."""
    return get_config().executor.float_format % value


@dataclass
class ReportRow:
    """One evaluation of one scenario item.

    Rows sort by scenario, sweep point and item id; ``order`` breaks ties by
    declaration order. ``parameters`` holds the swept values of a sweep row.
    """
    scenario: str
    item: str
    lhs: float
    rhs: float
    slack: float
    tolerance: float
    verdict: str
    variant: str = ''
    label: str = ''
    intermediates: Dict[str, float] = field(default_factory=dict)
    flags: List[str] = field(default_factory=list)
    error: Optional[str] = None
    wall_time: float = 0.0
    order: tuple = ()
    point: int = 0
    parameters: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_evaluation(cls, scenario, evaluation, label='', wall_time=0.0, order=(), point=0, parameters=None):
        """Row of an InequalityEvaluation."""
        return cls(
            scenario=scenario,
            item=evaluation.inequality_id,
            variant=evaluation.variant or '',
            label=label,
            lhs=evaluation.lhs,
            rhs=evaluation.rhs,
            slack=evaluation.slack,
            tolerance=evaluation.tolerance,
            verdict=evaluation.verdict.value,
            intermediates=dict(evaluation.intermediates),
            flags=list(evaluation.flags),
            error=evaluation.error,
            wall_time=wall_time,
            order=tuple(order),
            point=point,
            parameters=dict(parameters or {}),
        )

    @property
    def passed(self):
        """Whether the verdict is PASS."""
        return self.verdict == Verdict.PASS.value

    @property
    def sort_key(self):
        """Scenario, sweep point, item id, then declaration order."""
        return (self.scenario, self.point, self.item) + tuple(self.order)

    def flattened_intermediates(self):
        """Intermediates as key=value pairs joined by ';' in key order."""
        return ';'.join('{}={}'.format(k, format_float(v)) for k, v in sorted(self.intermediates.items()))

    def to_csv_record(self):
        """Dict of the CSV columns, sweep parameters first."""
        record = {'sweep_{}'.format(k): v for k, v in self.parameters.items()}
        record.update(
            {
                'scenario': self.scenario,
                'item': self.item,
                'variant': self.variant,
                'label': self.label,
                'lhs': self.lhs,
                'rhs': self.rhs,
                'slack': self.slack,
                'tolerance': self.tolerance,
                'verdict': self.verdict,
                'intermediates': self.flattened_intermediates(),
                'flags': ';'.join(self.flags),
                'error': self.error or '',
            }
        )
        return record

    def to_json_record(self):
        """Dict with nested intermediates and the wall time, NaN written as null."""
        def clean(value):
            return None if isinstance(value, float) and math.isnan(value) else value

        record = {
            'scenario': self.scenario,
            'item': self.item,
            'variant': self.variant,
            'label': self.label,
            'lhs': clean(self.lhs),
            'rhs': clean(self.rhs),
            'slack': clean(self.slack),
            'tolerance': clean(self.tolerance),
            'verdict': self.verdict,
            'intermediates': {k: clean(v) for k, v in sorted(self.intermediates.items())},
            'flags': self.flags,
            'error': self.error,
            'wall_time': self.wall_time,
        }
        if self.parameters:
            record['parameters'] = {k: clean(v) for k, v in self.parameters.items()}
        return record


def sort_rows(rows):
    """Rows in their deterministic report order."""
    return sorted(rows, key=lambda row: row.sort_key)


def rows_to_frame(rows):
    """DataFrame of the CSV columns, empty with the same columns for no rows."""
    records = [row.to_csv_record() for row in sort_rows(rows)]
    sweep_columns = sorted({k for record in records for k in record if k.startswith('sweep_')})
    return pd.DataFrame(records, columns=sweep_columns + CSV_COLUMNS)


def write_csv(rows, path):
    """Write report.csv; reruns with the same inputs give identical bytes."""
    frame = rows_to_frame(rows)
    frame.to_csv(path, index=False, float_format=get_config().executor.float_format)
    logger.info('Wrote %d rows to %s.', len(frame), str(path))


def write_json(rows, path, summary=None):
    """Write report.json with the rows and an optional summary."""
    document = {'summary': summary or {}, 'rows': [row.to_json_record() for row in sort_rows(rows)]}
    with Path(path).open('w') as fp:
        json.dump(document, fp, indent=2)
    logger.info('Wrote %d rows to %s.', len(document['rows']), str(path))
