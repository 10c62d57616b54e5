# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for scenario loading and validation."""

import unittest
from pathlib import Path

from dimbench.common.errors import ScenarioError
from dimbench.executor import Scenario

SCENARIO_DIR = Path(__file__).parent / '../../dimbench/config/scenarios'


def minimal(**extra):
    """Smallest valid scenario document with extra top level keys."""
    document = {
        'name': 'minimal',
        'measures': {
            'gamma': {
                'kind': 'standard_gaussian',
                'dimension': 1
            }
        },
        'items': [{
            'id': 'talagrand_dimensional',
            'arguments': {
                'nu': '@gamma',
                'mu': '@gamma'
            }
        }],
    }
    document.update(extra)
    return document


class ScenarioTestCase(unittest.TestCase):
    """A class for scenario test cases."""
    def test_bundled_scenarios(self):
        """Test every bundled scenario validates."""
        for path in sorted(SCENARIO_DIR.glob('*.json')):
            scenario = Scenario.from_file(path)
            self.assertEqual(scenario.name, path.stem)
            self.assertTrue(scenario.items)

    def test_items(self):
        """Test item fields and the seed override."""
        scenario = Scenario.from_file(SCENARIO_DIR / 'gaussian_equalities.json', seed=11)
        self.assertEqual(scenario.seed, 11)
        items = scenario.items
        self.assertEqual(len(items), 33)
        self.assertEqual(items[0].id, 'lsi_dimensional')
        self.assertEqual(items[0].variant, 'gaussian_bl')
        self.assertTrue(items[0].equality)
        self.assertEqual(items[0].label, 'n=1 a=0.5')
        self.assertEqual(items[0].arguments, {'nu': '@shifted_1_0', 'mu': '@gamma_1'})

    def test_interpolation(self):
        """Test sweep interpolation is resolved on load."""
        document = minimal(sweep={'a': 1.5})
        document['measures']['shifted'] = {'kind': 'gaussian', 'mean': ['${sweep.a}']}
        scenario = Scenario(document)
        self.assertEqual(scenario.document['measures']['shifted']['mean'], [1.5])

    def test_diagnostics(self):
        """Test each problem is reported with its location."""
        document = minimal(
            potentials={'bad': {
                'id': 'no_such_potential'
            }},
            functions={'f': {}},
            trajectories={'flow': {
                'potential': '@bad',
                'solver': {
                    'scheme': 'rk4'
                }
            }},
        )
        document['measures']['drawn'] = {'kind': 'sample', 'measure': '@gamma', 'count': 10}
        document['measures']['odd'] = {'kind': 'cube'}
        document['items'].append({'id': 'hwi', 'arguments': {'f_measure': '@missing', 'mu': '@gamma'}, 'tolerance': -1})
        document['items'].append({'arguments': {}})
        with self.assertRaises(ScenarioError) as context:
            Scenario(document, source='broken.json')
        diagnostics = '\n'.join(context.exception.diagnostics)
        for expected in [
            'potentials.bad: unknown potential id no_such_potential',
            'functions.f: missing function id',
            'trajectories.flow: trajectory needs init',
            'trajectories.flow: unknown solver scheme rk4',
            'measures.drawn: sampled measure needs a seed',
            'measures.odd: unknown measure kind cube',
            'items[1]: unknown reference @missing',
            'items[1]: tolerance must be a number >= 0',
            'items[2]: missing item id',
        ]:
            self.assertIn(expected, diagnostics)
        self.assertTrue(all(line.startswith('broken.json') for line in context.exception.diagnostics))

    def test_duplicate_names(self):
        """Test names are unique across sections."""
        document = minimal(functions={'gamma': {'id': 'linear'}})
        with self.assertRaises(ScenarioError) as context:
            Scenario(document)
        self.assertIn('name already declared in measures', context.exception.diagnostics[0])

    def test_not_an_object(self):
        """Test top level documents that are not objects or miss items."""
        with self.assertRaises(ScenarioError):
            Scenario(['items'])
        with self.assertRaises(ScenarioError):
            Scenario({'name': 'empty', 'items': []})
