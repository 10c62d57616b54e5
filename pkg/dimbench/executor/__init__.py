# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Exposes interfaces of the DimBench executor."""

from dimbench.executor.scenario import Scenario, ScenarioItem
from dimbench.executor.report import CSV_COLUMNS, ReportRow, rows_to_frame, sort_rows, write_csv, write_json
from dimbench.executor.executor import DimBenchExecutor, ExitCode, evaluate_scenario, exit_code_of
from dimbench.executor.sweep import Sweep, parameter_values, run_sweep
from dimbench.executor.oracle import oracle_document, run_oracle

__all__ = [
    'CSV_COLUMNS', 'DimBenchExecutor', 'ExitCode', 'ReportRow', 'Scenario', 'ScenarioItem', 'Sweep',
    'evaluate_scenario', 'exit_code_of', 'oracle_document', 'parameter_values', 'rows_to_frame', 'run_oracle',
    'run_sweep', 'sort_rows', 'write_csv', 'write_json'
]
