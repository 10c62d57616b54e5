# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for configuration and file utilities."""

import unittest
from pathlib import Path

import yaml
from omegaconf import OmegaConf

from dimbench.common.errors import ScenarioError
from dimbench.common.utils import create_dimbench_output_dir, get_config, get_dimbench_config, read_json_file, \
    set_config
from tests.helper.testcase import DimBenchTestCase


class FileHandlerUtilsTestCase(DimBenchTestCase, unittest.TestCase):
    """A class for file_handler test cases."""
    def test_get_dimbench_config_default(self):
        """Test the bundled numerical defaults are loaded."""
        with (Path(__file__).parent / '../../dimbench/config/default.yaml').open() as fp:
            self.assertEqual(get_dimbench_config(None), OmegaConf.create(yaml.load(fp, Loader=yaml.SafeLoader)))
        self.assertIsNone(get_dimbench_config('./nonexist.yaml'))

    def test_defaults(self):
        """Test a few documented defaults."""
        config = get_config()
        self.assertEqual(config.measures.tail_epsilon, 1e-9)
        self.assertEqual(config.functionals.sinkhorn.max_support, 2048)
        self.assertEqual(config.inequalities.analytic_tolerance, 1e-8)
        self.assertEqual(config.executor.float_format, '%.17g')

    def test_set_config(self):
        """Test dotlist overrides and the reset to the defaults."""
        set_config(overrides=['inequalities.tolerance_scale=5', 'executor.jobs=3'])
        self.assertEqual(get_config().inequalities.tolerance_scale, 5)
        self.assertEqual(get_config().executor.jobs, 3)
        set_config()
        self.assertEqual(get_config().inequalities.tolerance_scale, 1)

    def test_create_output_dir(self):
        """Test given and generated output directories."""
        target = self.output_dir('created') / 'nested'
        self.assertEqual(create_dimbench_output_dir(str(target)), str(target))
        self.assertTrue(target.is_dir())

    def test_read_json_file(self):
        """Test JSON documents and their diagnostics."""
        self.assertEqual(read_json_file(self.write_json('good.json', '{"name": "x"}')), {'name': 'x'})
        with self.assertRaises(ScenarioError) as context:
            read_json_file(self.write_json('bad.json', '{\n  "name": \n}'))
        self.assertIn('bad.json:3:1', context.exception.diagnostics[0])
        with self.assertRaises(ScenarioError):
            read_json_file('./nonexist.json')
