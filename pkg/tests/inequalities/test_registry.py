# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for the inequality registry and the tolerance policy."""

import math
import unittest

from dimbench.common.errors import DomainError
from dimbench.inequalities import Evidence, InequalityId, InequalityRegistry, ItemCategory, TolerancePolicy
from dimbench.measures import Measure, ParticleCloud, discretize, standard_gaussian
from tests.helper import decorator


class InequalityRegistryTestCase(unittest.TestCase):
    """A class for inequality registry test cases."""
    def test_catalogue(self):
        """Test every catalogue id is registered."""
        self.assertEqual(InequalityRegistry.names(), sorted(InequalityId.get_values()))
        entries = {entry['name']: entry for entry in InequalityRegistry.list_items()}
        self.assertEqual(entries['trace_bound']['category'], ItemCategory.STRUCTURAL.value)
        self.assertEqual(entries['contraction']['category'], ItemCategory.AUDIT.value)
        self.assertEqual(entries['hwi']['category'], ItemCategory.INEQUALITY.value)
        self.assertIn('gaussian_bl', entries['lsi_dimensional']['variants'])
        self.assertEqual(entries['hwi']['variants'], [])
        self.assertTrue(entries['hwi']['description'])

    def test_list_pattern(self):
        """Test catalogue listing filtered by a regular expression."""
        names = [entry['name'] for entry in InequalityRegistry.list_items('^hwi')]
        self.assertEqual(names, ['hwi', 'hwi_gaussian_comparison'])
        self.assertEqual(InequalityRegistry.list_items('no_such_item'), [])

    def test_check_arguments(self):
        """Test argument diagnostics of scenario items."""
        self.assertEqual(InequalityRegistry.check_arguments('hwi', {'f_measure': '@nu', 'mu': '@mu'}), [])
        self.assertEqual(len(InequalityRegistry.check_arguments('hwi', {'f_measure': '@nu'})), 1)
        self.assertEqual(len(InequalityRegistry.check_arguments('hwi', {'f_measure': 1, 'mu': 1, 'x': 1})), 1)
        self.assertEqual(len(InequalityRegistry.check_arguments('hwi', {'f_measure': 1, 'mu': 1}, 'classical')), 1)
        self.assertEqual(len(InequalityRegistry.check_arguments('brascamp_lieb', {'f': 1, 'mu': 1})), 1)
        self.assertEqual(len(InequalityRegistry.check_arguments('brascamp_lieb', {'f': 1, 'mu': 1}, 'harge')), 0)
        self.assertIn('unknown item id', InequalityRegistry.check_arguments('lsi', {})[0])

    def test_evaluate(self):
        """Test evaluation through the registry."""
        gamma = standard_gaussian(1)
        evaluations = InequalityRegistry.evaluate('talagrand_dimensional', nu=gamma, mu=gamma)
        self.assertEqual(len(evaluations), 1)
        self.assertTrue(evaluations[0].passed)
        with self.assertRaises(DomainError):
            InequalityRegistry.evaluate('no_such_item')


class TolerancePolicyTestCase(unittest.TestCase):
    """A class for tolerance policy test cases."""
    def test_analytic(self):
        """Test analytic evidence gets the analytic tolerance."""
        policy = TolerancePolicy().observe(standard_gaussian(2))
        self.assertEqual(policy.evidence, Evidence.ANALYTIC)
        self.assertEqual(policy.tolerance(10.0, 20.0), 1e-8)

    def test_grid(self):
        """Test grid evidence scales with h^2 and the magnitude."""
        grid = discretize(standard_gaussian(1))
        h = grid.representation.grid.max_spacing
        policy = TolerancePolicy().observe(grid)
        self.assertEqual(policy.evidence, Evidence.GRID)
        self.assertAlmostEqual(policy.tolerance(1.0, 1.0), max(1e-6, 10.0 * h * h * 3.0))
        self.assertAlmostEqual(TolerancePolicy().observe_spacing(1e-5).tolerance(0.0, 0.0), 1e-6)

    def test_particles(self):
        """Test particle evidence uses the standard error."""
        cloud = Measure(ParticleCloud([[0.0], [1.0]]))
        policy = TolerancePolicy().observe(cloud).observe_standard_error(0.01)
        self.assertEqual(policy.evidence, Evidence.PARTICLES)
        self.assertAlmostEqual(policy.tolerance(0.0, 0.0), 0.03)

    def test_override(self):
        """Test per item overrides and NaN sides."""
        self.assertEqual(TolerancePolicy(0.0).tolerance(1.0, 1.0), 0.0)
        self.assertEqual(TolerancePolicy(0.5).tolerance(math.nan, 1.0), 0.5)
        self.assertTrue(math.isnan(TolerancePolicy().tolerance(math.nan, 1.0)))
        with self.assertRaises(DomainError):
            TolerancePolicy(-1.0)

    @decorator.config_override('inequalities.tolerance_scale=10')
    def test_scale(self):
        """Test the configured tolerance scale multiplies every tolerance."""
        self.assertAlmostEqual(TolerancePolicy().tolerance(0.0, 0.0), 1e-7)
        self.assertAlmostEqual(TolerancePolicy(0.5).tolerance(0.0, 0.0), 5.0)
