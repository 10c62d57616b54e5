# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""DimBench CLI help."""

from knack.help import CLIHelp
from knack.help_files import helps

CLI_NAME = 'dimbench'
WELCOME_MESSAGE = r"""
  ____  _           ____                  _
 |  _ \(_)_ __ ___ | __ )  ___ _ __   ___| |__
 | | | | | '_ ` _ \|  _ \ / _ \ '_ \ / __| '_ \
 | |_| | | | | | | | |_) |  __/ | | | (__| | | |
 |____/|_|_| |_| |_|____/ \___|_| |_|\___|_| |_|

Welcome to the DimBench CLI!
"""

helps['version'] = """
    type: command
    short-summary: Print the current DimBench CLI version.
    examples:
        - name: print version
          text: {cli_name} version
""".format(cli_name=CLI_NAME)

helps['verify'] = """
    type: command
    short-summary: Evaluate every item of a scenario and write report.csv and report.json.
    long-summary: >
        Exit status is 0 when every verdict passes, 1 when a theorem check fails
        and 2 when the scenario does not parse or validate.
    examples:
        - name: verify the bundled Gaussian equality scenario
          text: {cli_name} verify dimbench/config/scenarios/gaussian_equalities.json --out outputs/equalities
        - name: verify a scenario with 4 workers and tolerances doubled
          text: {cli_name} verify scenario.json --jobs 4 --tol-scale 2
        - name: verify a scenario with a finer Sinkhorn floor
          text: {cli_name} verify scenario.json --config-override functionals.sinkhorn.eps_floor=1e-4
""".format(cli_name=CLI_NAME)

helps['sweep'] = """
    type: command
    short-summary: Evaluate a scenario template over one or two swept parameters.
    long-summary: The long format report has one sweep_<parameter> column per swept parameter.
    examples:
        - name: sweep the translation of a Gaussian
          text: {cli_name} sweep dimbench/config/sweeps/translated_gaussians.json --out outputs/translations
        - name: sweep with a fixed seed
          text: {cli_name} sweep sweep.json --seed 7
""".format(cli_name=CLI_NAME)

helps['oracle'] = """
    type: command
    short-summary: Run the built-in closed-form Gaussian self-test suite.
    examples:
        - name: run the self-test suite
          text: {cli_name} oracle --out outputs/oracle
""".format(cli_name=CLI_NAME)

helps['inequality'] = """
    type: group
    short-summary: Commands to inspect the inequality catalogue.
"""

helps['inequality list'] = """
    type: command
    examples:
        - name: list all inequalities and audits
          text: {cli_name} inequality list
        - name: list items whose id contains "lsi"
          text: {cli_name} inequality list --name lsi
""".format(cli_name=CLI_NAME)


class DimBenchCLIHelp(CLIHelp):
    """DimBench CLI help loader."""
    def __init__(self, cli_ctx=None):
        """Init CLI help loader.

        Args:
            cli_ctx (knack.cli.CLI, optional): CLI Context. Defaults to None.
        """
        super().__init__(cli_ctx=cli_ctx, welcome_message=WELCOME_MESSAGE)
