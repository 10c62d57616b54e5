# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""DimBench Executor."""

import time
from pathlib import Path

from joblib import Parallel, delayed

from dimbench.common.enum import Enum
from dimbench.common.errors import DimBenchError
from dimbench.common.utils import DimBenchLogger, get_config, logger, set_config
from dimbench.executor.report import ReportRow, sort_rows, write_csv, write_json
from dimbench.inequalities import InequalityEvaluation, InequalityRegistry


class ExitCode(Enum):
    """The Enum class representing the exit status of a run."""
    SUCCESS = 0
    THEOREM_VIOLATION = 1
    INPUT_ERROR = 2


def _evaluate_item(config, scenario, item, arguments, point=0, parameters=None):
    """Evaluate one resolved item into report rows, recording failures as FAIL rows.

    Args:
        config (DictConfig): numerical configuration of the run, installed in the worker.
        scenario (str): scenario name.
        item (ScenarioItem): the item.
        arguments (dict or DimBenchError): resolved arguments, or the error raised while building them.
        point (int): sweep point index.
        parameters (dict, optional): swept values.

    Return:
        list: ReportRow objects of the item.
    """
    set_config(config)
    start = time.perf_counter()
    if isinstance(arguments, DimBenchError):
        evaluations = [InequalityEvaluation.failure(item.id, arguments, item.variant)]
    else:
        try:
            evaluations = InequalityRegistry.evaluate(
                item.id, variant=item.variant, tolerance=item.tolerance, **arguments
            )
        except DimBenchError as e:
            logger.error('Item %s of %s failed: %s', item.id, scenario, str(e))
            evaluations = [InequalityEvaluation.failure(item.id, e, item.variant)]
    if item.equality:
        for evaluation in evaluations:
            if evaluation.error is None and abs(evaluation.slack) > evaluation.tolerance:
                evaluation.add_flag('equality_broken')
                evaluation.set_error(
                    'expected equality, |slack| = {:.3e} > tolerance {:.3e}'.format(
                        abs(evaluation.slack), evaluation.tolerance
                    )
                )
    wall_time = time.perf_counter() - start
    return [
        ReportRow.from_evaluation(
            scenario,
            evaluation,
            label=item.label,
            wall_time=wall_time,
            order=(item.index, i),
            point=point,
            parameters=parameters,
        ) for i, evaluation in enumerate(evaluations)
    ]


def evaluate_scenario(scenario, jobs=1, point=0, parameters=None):
    """Evaluate every item of a scenario.

    Objects are built once in this process in declaration order; the evaluations run
    on a joblib pool and the rows are sorted before they are returned, so the pool
    size never changes the report.

    Args:
        scenario (Scenario): validated scenario.
        jobs (int): worker count.
        point (int): sweep point index.
        parameters (dict, optional): swept values.

    Return:
        list: sorted ReportRow objects.
    """
    resolver = scenario.resolver()
    tasks = list()
    for item in scenario.items:
        try:
            arguments = resolver.resolve(item.arguments)
        except DimBenchError as e:
            logger.error('Building the arguments of item %s failed: %s', item.id, str(e))
            arguments = e
        tasks.append((item, arguments))
    logger.info('Scenario %s: evaluating %d items with %d jobs.', scenario.name, len(tasks), jobs)
    config = get_config()
    results = Parallel(n_jobs=jobs)(
        delayed(_evaluate_item)(config, scenario.name, item, arguments, point, parameters)
        for item, arguments in tasks
    )
    return sort_rows([row for rows in results for row in rows])


def exit_code_of(rows):
    """SUCCESS when every row passes, THEOREM_VIOLATION otherwise."""
    failing = [row for row in rows if not row.passed]
    for row in failing:
        logger.error(
            'FAIL %s %s %s: lhs %r rhs %r slack %r tolerance %r %s', row.scenario, row.item, row.variant, row.lhs,
            row.rhs, row.slack, row.tolerance, row.error or ''
        )
    return ExitCode.THEOREM_VIOLATION if failing else ExitCode.SUCCESS


def summary_of(rows, exit_code):
    """Counts written at the top of report.json."""
    passed = sum(1 for row in rows if row.passed)
    return {'rows': len(rows), 'passed': passed, 'failed': len(rows) - passed, 'exit_code': exit_code.value}


class DimBenchExecutor():
    """DimBench executor class."""
    def __init__(self, scenario, output_dir, jobs=None):
        """Initilize.

        Args:
            scenario (Scenario): validated scenario.
            output_dir (str): directory of report.csv, report.json and dimbench.log.
            jobs (int, optional): worker count, the configured one if None.
        """
        self._scenario = scenario
        self._output_path = Path(output_dir).expanduser().resolve()
        self._output_path.mkdir(parents=True, exist_ok=True)
        self._jobs = int(jobs if jobs is not None else get_config().executor.jobs)
        logger.debug('Executor runs scenario %s with %d jobs.', scenario.name, self._jobs)
        logger.debug('Executor writes to: %s.', str(self._output_path))

    @property
    def output_path(self):
        """Resolved output directory."""
        return self._output_path

    def run(self):
        """Evaluate the scenario and write the reports.

        Return:
            ExitCode: SUCCESS iff every verdict passes.
        """
        with DimBenchLogger.run_log(logger, self._output_path):
            rows = evaluate_scenario(self._scenario, self._jobs)
            exit_code = exit_code_of(rows)
            write_csv(rows, self._output_path / 'report.csv')
            write_json(rows, self._output_path / 'report.json', summary_of(rows, exit_code))
        logger.info('Scenario %s finished: %s.', self._scenario.name, exit_code.name)
        return exit_code
