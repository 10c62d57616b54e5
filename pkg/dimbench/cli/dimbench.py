#!/usr/bin/env python3

# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""DimBench command line interface."""

import sys

from knack import CLI
from knack.util import CLIError

import dimbench
from dimbench.cli._help import CLI_NAME, DimBenchCLIHelp
from dimbench.cli._commands import DimBenchCommandsLoader
from dimbench.common.errors import ScenarioError
from dimbench.common.utils import logger
from dimbench.executor import ExitCode


class DimBenchCLI(CLI):
    """The main driver for DimBench CLI."""
    def get_cli_version(self):
        """Get the CLI version.

        Returns:
            str: CLI semantic version.
        """
        return dimbench.__version__

    def exception_handler(self, ex):
        """Map input errors to the input error exit status.

        Args:
            ex (Exception): exception raised by a command handler.

        Returns:
            int: exit status.
        """
        if isinstance(ex, ScenarioError):
            logger.error('%s', str(ex))
            for diagnostic in ex.diagnostics:
                logger.error('  %s', diagnostic)
            return ExitCode.INPUT_ERROR.value
        if isinstance(ex, CLIError):
            super().exception_handler(ex)
            return ExitCode.INPUT_ERROR.value
        return super().exception_handler(ex)

    @classmethod
    def get_cli(cls):
        """Get CLI instance.

        Returns:
            DimBenchCLI: An instance for DimBench CLI.
        """
        return cls(
            cli_name=CLI_NAME,
            config_env_var_prefix=CLI_NAME,
            commands_loader_cls=DimBenchCommandsLoader,
            help_cls=DimBenchCLIHelp,
        )


def main():
    """The main function for CLI."""
    dimbench_cli = DimBenchCLI.get_cli()
    exit_code = dimbench_cli.invoke(sys.argv[1:])
    sys.exit(exit_code)


if __name__ == '__main__':
    main()
