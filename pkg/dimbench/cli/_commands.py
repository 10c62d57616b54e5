# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""DimBench CLI commands."""

from knack.arguments import ArgumentsContext
from knack.commands import CLICommandsLoader, CommandGroup


class DimBenchCommandsLoader(CLICommandsLoader):
    """DimBench CLI commands loader."""
    def load_command_table(self, args):
        """Load commands into the command table.

        Args:
            args (list): List of arguments from the command line.

        Returns:
            collections.OrderedDict: Load commands into the command table.
        """
        with CommandGroup(self, '', 'dimbench.cli._handler#{}') as g:
            g.command('version', 'version_command_handler')
            g.command('verify', 'verify_command_handler')
            g.command('sweep', 'sweep_command_handler')
            g.command('oracle', 'oracle_command_handler')
        with CommandGroup(self, 'inequality', 'dimbench.cli._inequality_handler#{}') as g:
            g.command('list', 'inequality_list_command_handler')
        return super().load_command_table(args)

    def load_arguments(self, command):
        """Load arguments for commands.

        Args:
            command: The command to load arguments for.
        """
        with ArgumentsContext(self, '') as ac:
            ac.argument(
                'output_dir',
                options_list=('--out', '-o'),
                type=str,
                help='Path to output directory, outputs/{datetime} will be used if not specified.'
            )
            ac.argument(
                'tol_scale', options_list=('--tol-scale', ), type=float, help='Factor applied to every tolerance.'
            )
            ac.argument('seed', options_list=('--seed', ), type=int, help='Seed overriding the scenario seed.')
            ac.argument('jobs', options_list=('--jobs', '-j'), type=int, help='Number of parallel evaluation workers.')
            ac.argument(
                'config_file',
                options_list=('--config-file', '-c'),
                type=str,
                help='Path to a numerical defaults YAML replacing the bundled one.'
            )
            ac.argument(
                'config_override',
                options_list=('--config-override', '-C'),
                type=str,
                nargs='+',
                help='Extra arguments to override the numerical defaults.'
            )

        with ArgumentsContext(self, 'verify') as ac:
            ac.positional('scenario_file', type=str, help='Path to scenario JSON file.')

        with ArgumentsContext(self, 'sweep') as ac:
            ac.positional('sweep_file', type=str, help='Path to sweep JSON file.')

        with ArgumentsContext(self, 'inequality') as ac:
            ac.argument('name', options_list=('--name', '-n'), type=str, help='Item id or regular expression.')

        super().load_arguments(command)
