# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for parameter sweeps."""

import json
import unittest
from pathlib import Path

import pandas as pd

from dimbench.common.errors import ScenarioError
from dimbench.executor import ExitCode, Sweep, parameter_values, run_sweep
from tests.helper import decorator
from tests.helper.testcase import DimBenchTestCase

SWEEP_DIR = Path(__file__).parent / '../../dimbench/config/sweeps'

TEMPLATE = {
    'items': [{
        'id': 'fundamental_entropy',
        'arguments': {
            'n': '${sweep.n}',
            't': '${sweep.t}'
        }
    }]
}


class SweepTestCase(DimBenchTestCase, unittest.TestCase):
    """A class for sweep test cases."""
    def test_parameter_values(self):
        """Test explicit values and inclusive ranges."""
        self.assertEqual(parameter_values('a', {'values': [1, 2]}), [1.0, 2.0])
        values = parameter_values('a', {'start': 0.0, 'stop': 3.0, 'step': 0.1})
        self.assertEqual(len(values), 31)
        self.assertEqual(values[3], 0.3)
        self.assertEqual(values[-1], 3.0)
        self.assertEqual(parameter_values('a', {'start': 1.0, 'stop': 0.0, 'step': 0.1}), [])
        with self.assertRaises(ScenarioError):
            parameter_values('a', {'start': 0.0, 'stop': 1.0, 'step': 0.0})
        with self.assertRaises(ScenarioError):
            parameter_values('a', {'start': 0.0})

    def test_cross_product(self):
        """Test two swept parameters give their cross product."""
        sweep = Sweep({
            'name': 'grid',
            'parameters': {
                'n': {
                    'values': [1, 2]
                },
                't': {
                    'values': [0.5, 1.0, 2.0]
                }
            },
            'template': TEMPLATE
        })
        self.assertEqual(sweep.size, 6)
        self.assertEqual(sweep.points()[1], {'n': 1.0, 't': 1.0})
        scenario = sweep.scenario(sweep.points()[1])
        self.assertEqual(scenario.name, 'grid')
        self.assertEqual(scenario.items[0].arguments, {'n': 1.0, 't': 1.0})

    def test_malformed(self):
        """Test missing keys and too many parameters."""
        with self.assertRaises(ScenarioError):
            Sweep({'name': 'bad', 'template': TEMPLATE})
        three = {name: {'values': [1.0]} for name in 'abc'}
        with self.assertRaises(ScenarioError):
            Sweep({'name': 'bad', 'parameters': three, 'template': TEMPLATE})

    @decorator.config_override('executor.sweep_cap=5')
    def test_cap(self):
        """Test sweeps above the point cap are refused."""
        with self.assertRaises(ScenarioError):
            Sweep({'name': 'big', 'parameters': {'n': {'values': [1, 2]}, 't': {'values': [1, 2, 3]}},
                   'template': TEMPLATE})

    def test_translated_gaussians(self):
        """Test the bundled translation sweep writes one passing row per point."""
        output = self.output_dir('translated')
        self.assertEqual(run_sweep(Sweep.from_file(SWEEP_DIR / 'translated_gaussians.json'), output), ExitCode.SUCCESS)
        table = pd.read_csv(output / 'report.csv')
        self.assertEqual(len(table), 31)
        self.assertEqual(list(table.columns[:2]), ['sweep_a', 'scenario'])
        self.assertEqual(table['sweep_a'].tolist()[:3], [0.0, 0.1, 0.2])
        self.assertTrue((table['verdict'] == 'pass').all())
        document = json.loads((output / 'report.json').read_text())
        self.assertEqual(document['rows'][5]['parameters'], {'a': 0.5})

    def test_empty_sweep(self):
        """Test an empty range succeeds with an empty report."""
        sweep = Sweep({
            'name': 'empty',
            'parameters': {
                't': {
                    'start': 1.0,
                    'stop': 0.0,
                    'step': 0.1
                }
            },
            'template': {
                'items': [{
                    'id': 'fundamental_entropy',
                    'arguments': {
                        'n': 1,
                        't': '${sweep.t}'
                    }
                }]
            }
        })
        output = self.output_dir('empty')
        self.assertEqual(run_sweep(sweep, output), ExitCode.SUCCESS)
        self.assertEqual(len(pd.read_csv(output / 'report.csv')), 0)
        self.assertEqual(json.loads((output / 'report.json').read_text())['summary']['rows'], 0)
