# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""DimBench CLI command handler."""

import sys
from pathlib import Path
from importlib_metadata import version, PackageNotFoundError

from knack.util import CLIError

import dimbench
from dimbench.common.utils import create_dimbench_output_dir, get_dimbench_config, logger, set_config
from dimbench.executor import DimBenchExecutor, ExitCode, Scenario, Sweep, run_oracle, run_sweep


def check_argument_file(name, file):
    """Check file path in CLI arguments.

    Args:
        name (str): argument name.
        file (str): file path.

    Returns:
        str: Absolute file path if it exists.

    Raises:
        CLIError: If file does not exist.
    """
    if file:
        if not Path(file).exists():
            raise CLIError('{} {} does not exist.'.format(name, file))
        return str(Path(file).resolve())
    return file


def process_config_arguments(config_file=None, config_override=None, tol_scale=None, jobs=None, output_dir=None):
    """Process configuration arguments and install the numerical configuration.

    Args:
        config_file (str, optional): Path to a numerical defaults YAML. Defaults to None.
        config_override (list, optional): dotlist overrides such as measures.tail_epsilon=1e-8. Defaults to None.
        tol_scale (float, optional): factor applied to every tolerance. Defaults to None.
        jobs (int, optional): worker count. Defaults to None.
        output_dir (str, optional): Path to output directory. Defaults to None.

    Returns:
        DictConfig: DimBench config object.
        str: Dir for output.

    Raises:
        CLIError: If input arguments are invalid.
    """
    config_file = check_argument_file('config_file', config_file)
    if tol_scale is not None and not tol_scale > 0:
        raise CLIError('tol_scale must be > 0, got {}.'.format(tol_scale))
    if jobs is not None and jobs < 1:
        raise CLIError('jobs must be >= 1, got {}.'.format(jobs))

    overrides = list(config_override or [])
    if tol_scale is not None:
        overrides.append('inequalities.tolerance_scale={}'.format(tol_scale))
    if jobs is not None:
        overrides.append('executor.jobs={}'.format(jobs))
    dimbench_config = set_config(get_dimbench_config(config_file), overrides)

    dimbench_output_dir = create_dimbench_output_dir(output_dir)

    return dimbench_config, dimbench_output_dir


def exit_on_failure(exit_code):
    """Exit with the status of a run unless every verdict passed.

    Args:
        exit_code (ExitCode): status of the run.
    """
    if exit_code != ExitCode.SUCCESS:
        logger.error('Run finished with %s, see report.csv for the failing rows.', exit_code.name)
        sys.exit(exit_code.value)


def version_command_handler():
    """Print the current DimBench tool version.

    Returns:
        str: current DimBench tool version.
    """
    try:
        return version('dimbench')
    except PackageNotFoundError:
        return dimbench.__version__


def verify_command_handler(
    scenario_file, output_dir=None, tol_scale=None, seed=None, jobs=None, config_file=None, config_override=None
):
    """Evaluate every item of a scenario and write the reports.

    Args:
        scenario_file (str): Path to scenario JSON file.
        output_dir (str, optional): Path to output directory. Defaults to None.
        tol_scale (float, optional): Factor applied to every tolerance. Defaults to None.
        seed (int, optional): Seed overriding the scenario seed. Defaults to None.
        jobs (int, optional): Number of parallel evaluation workers. Defaults to None.
        config_file (str, optional): Path to a numerical defaults YAML. Defaults to None.
        config_override (list, optional): Extra arguments to override the numerical defaults. Defaults to None.

    Raises:
        CLIError: If input arguments are invalid.
        ScenarioError: If the scenario does not parse or validate.
    """
    dimbench_config, dimbench_output_dir = process_config_arguments(
        config_file=config_file,
        config_override=config_override,
        tol_scale=tol_scale,
        jobs=jobs,
        output_dir=output_dir,
    )
    scenario = Scenario.from_file(scenario_file, seed=seed)
    executor = DimBenchExecutor(scenario, dimbench_output_dir, dimbench_config.executor.jobs)
    exit_on_failure(executor.run())


def sweep_command_handler(
    sweep_file, output_dir=None, tol_scale=None, seed=None, jobs=None, config_file=None, config_override=None
):
    """Evaluate a scenario template over its swept parameters and write the long format reports.

    Args:
        sweep_file (str): Path to sweep JSON file.
        output_dir (str, optional): Path to output directory. Defaults to None.
        tol_scale (float, optional): Factor applied to every tolerance. Defaults to None.
        seed (int, optional): Seed overriding the template seed. Defaults to None.
        jobs (int, optional): Number of parallel evaluation workers. Defaults to None.
        config_file (str, optional): Path to a numerical defaults YAML. Defaults to None.
        config_override (list, optional): Extra arguments to override the numerical defaults. Defaults to None.

    Raises:
        CLIError: If input arguments are invalid.
        ScenarioError: If the sweep does not parse, validate or fit under the sweep cap.
    """
    dimbench_config, dimbench_output_dir = process_config_arguments(
        config_file=config_file,
        config_override=config_override,
        tol_scale=tol_scale,
        jobs=jobs,
        output_dir=output_dir,
    )
    sweep = Sweep.from_file(sweep_file)
    exit_on_failure(run_sweep(sweep, dimbench_output_dir, int(dimbench_config.executor.jobs), seed))


def oracle_command_handler(output_dir=None, tol_scale=None, jobs=None, config_file=None, config_override=None):
    """Run the built-in closed-form Gaussian self-test suite.

    Args:
        output_dir (str, optional): Path to output directory. Defaults to None.
        tol_scale (float, optional): Factor applied to every tolerance. Defaults to None.
        jobs (int, optional): Number of parallel evaluation workers. Defaults to None.
        config_file (str, optional): Path to a numerical defaults YAML. Defaults to None.
        config_override (list, optional): Extra arguments to override the numerical defaults. Defaults to None.
    """
    dimbench_config, dimbench_output_dir = process_config_arguments(
        config_file=config_file,
        config_override=config_override,
        tol_scale=tol_scale,
        jobs=jobs,
        output_dir=output_dir,
    )
    exit_on_failure(run_oracle(dimbench_output_dir, dimbench_config.executor.jobs))
