# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""DimBench CLI command and scenario tests."""

import io
import json
import contextlib
import shutil
import tempfile
from functools import wraps
from pathlib import Path

from knack.testsdk import ScenarioTest, StringContainCheck, NoneCheck, JMESPathCheck

import dimbench
from dimbench.cli import DimBenchCLI
from dimbench.common.utils import set_config
from dimbench.inequalities import InequalityRegistry
from tests.helper import decorator

CONFIG_DIR = Path(__file__).parent.resolve() / '../../dimbench/config'


def capture_system_exit(code):
    """Decorator to capture SystemExit in testing.

    Args:
        code (int): expected exit status.

    Returns:
        Callable: Decorator.
    """
    def decorator(func):
        @wraps(func)
        def wrapper(self, *args, **kwargs):
            f = io.StringIO()
            with self.assertRaises(SystemExit) as cm, contextlib.redirect_stderr(f):
                func(self, *args, **kwargs)
            self.assertEqual(cm.exception.code, code)
            self.stderr = f.getvalue()

        return wrapper

    return decorator


class DimBenchCLIScenarioTest(ScenarioTest):
    """A class whose instances are CLI single test cases.

    Args:
        ScenarioTest (knack.testsdk.ScenarioTest): Test class for knack.
    """
    def __init__(self, method_name):
        """Override __init__ method for ScenarioTest.

        Args:
            method_name (str): ScenarioTest method_name.
        """
        dimbench_cli = DimBenchCLI.get_cli()
        super().__init__(dimbench_cli, method_name)

    def setUp(self):
        """Hook method for setting up the test fixture before exercising it."""
        super().setUp()
        self.output_dir = tempfile.mkdtemp(prefix='dimbenchcli')

    def tearDown(self):
        """Hook method for deconstructing the test fixture after testing it."""
        shutil.rmtree(self.output_dir)
        set_config()
        super().tearDown()

    def write_scenario(self, document):
        """Write a scenario document under the output directory."""
        path = Path(self.output_dir) / 'scenario.json'
        path.write_text(json.dumps(document))
        return str(path)

    def test_dimbench_version(self):
        """Test dimbench version."""
        self.cmd('dimbench version', checks=[StringContainCheck(dimbench.__version__)])

    def test_dimbench_verify(self):
        """Test dimbench verify on the bundled equality scenario."""
        self.cmd(
            'dimbench verify {} --out {}/run'.format(
                CONFIG_DIR / 'scenarios/gaussian_equalities.json', self.output_dir
            ),
            checks=[NoneCheck()]
        )
        self.assertTrue((Path(self.output_dir) / 'run/report.csv').is_file())

    def test_dimbench_verify_overrides(self):
        """Test dimbench verify with tolerance scale, jobs and config overrides."""
        self.cmd(
            'dimbench verify {} -o {} --tol-scale 2 -j 2 -C measures.grid_count_1d=2048'.format(
                CONFIG_DIR / 'scenarios/gaussian_equalities.json', self.output_dir
            ),
            checks=[NoneCheck()]
        )

    @capture_system_exit(1)
    def test_dimbench_verify_violation(self):
        """Test dimbench verify exits with 1 when a verdict fails."""
        scenario = self.write_scenario(
            {
                'name': 'broken',
                'measures': {
                    'gamma': {
                        'kind': 'standard_gaussian'
                    },
                    'wide': {
                        'kind': 'gaussian',
                        'mean': [0.0],
                        'variance': 4.0
                    }
                },
                'items': [{
                    'id': 'talagrand_dimensional',
                    'equality': True,
                    'arguments': {
                        'nu': '@wide',
                        'mu': '@gamma'
                    }
                }],
            }
        )
        self.cmd('dimbench verify {} --out {}/run'.format(scenario, self.output_dir))

    def test_dimbench_verify_invalid_scenario(self):
        """Test dimbench verify exits with 2 on an invalid scenario."""
        scenario = self.write_scenario(
            {
                'name': 'invalid',
                'potentials': {
                    'V': {
                        'id': 'no_such_potential'
                    }
                },
                'items': [{
                    'id': 'fundamental_entropy',
                    'arguments': {
                        'n': 1,
                        't': 1.0
                    }
                }],
            }
        )
        result = self.cmd('dimbench verify {} --out {}/run'.format(scenario, self.output_dir), expect_failure=True)
        self.assertEqual(result.exit_code, 2)
        missing = 'dimbench verify ./nonexist.json --out {}/run'.format(self.output_dir)
        result = self.cmd(missing, expect_failure=True)
        self.assertEqual(result.exit_code, 2)

    def test_dimbench_verify_invalid_arguments(self):
        """Test dimbench verify exits with 2 on invalid options."""
        scenario = CONFIG_DIR / 'scenarios/gaussian_equalities.json'
        result = self.cmd('dimbench verify {} --tol-scale 0'.format(scenario), expect_failure=True)
        self.assertEqual(result.exit_code, 2)
        result = self.cmd('dimbench verify {} --config-file ./nonexist.yaml'.format(scenario), expect_failure=True)
        self.assertEqual(result.exit_code, 2)

    @capture_system_exit(2)
    def test_dimbench_verify_no_scenario(self):
        """Test dimbench verify without a scenario file, should fail."""
        self.cmd('dimbench verify')

    def test_dimbench_sweep(self):
        """Test dimbench sweep."""
        self.cmd(
            'dimbench sweep {} --out {}'.format(CONFIG_DIR / 'sweeps/fundamental_entropy.json', self.output_dir),
            checks=[NoneCheck()]
        )
        self.assertTrue((Path(self.output_dir) / 'report.json').is_file())

    @decorator.slow_test
    def test_dimbench_oracle(self):
        """Test dimbench oracle."""
        self.cmd('dimbench oracle --out {}'.format(self.output_dir), checks=[NoneCheck()])

    def test_dimbench_inequality_list(self):
        """Test dimbench inequality list."""
        self.cmd('dimbench inequality list', checks=[JMESPathCheck('length(@)', len(InequalityRegistry.names()))])
        self.cmd('dimbench inequality list -n ^hwi', checks=[JMESPathCheck('length(@)', 2)])

    def test_dimbench_inequality_list_nonexist(self):
        """Test dimbench inequality list, give a non-exist item name, should fail."""
        result = self.cmd('dimbench inequality list -n non-exist-name', expect_failure=True)
        self.assertEqual(result.exit_code, 2)
        result = self.cmd('dimbench inequality list -n [', expect_failure=True)
        self.assertEqual(result.exit_code, 2)
