# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for the dimensional Talagrand and HWI inequalities."""

import math
import unittest

import numpy as np

from dimbench.common.errors import DomainError, PreconditionError
from dimbench.inequalities import InequalityRegistry
from dimbench.inequalities.talagrand import compare_hwi_gaussian, evaluate_hwi, evaluate_talagrand_dimensional, \
    linearization_check, richardson_limit, tensorization_lower_bound
from dimbench.measures import FunctionRegistry, build_gaussian, discretize, perturb_density, standard_gaussian


class TalagrandTestCase(unittest.TestCase):
    """A class for dimensional Talagrand test cases."""
    def test_translations(self):
        """Test translations of gamma are equality cases."""
        for n in [1, 2, 5]:
            for a in [0.5, 1.0, 2.0]:
                nu = build_gaussian([a] + [0.0] * (n - 1), np.eye(n))
                evaluation = evaluate_talagrand_dimensional(nu, standard_gaussian(n))
                self.assertAlmostEqual(evaluation.lhs, 0.5 * a * a, places=10)
                self.assertAlmostEqual(evaluation.slack, 0.0, places=10)
                self.assertAlmostEqual(evaluation.intermediates['D'], 0.5 * a * a, places=10)
                self.assertTrue(evaluation.passed)

    def test_scaled_gaussian(self):
        """Test the dimensional form sharpens the classical one for N(0, 2)."""
        evaluation = evaluate_talagrand_dimensional(build_gaussian([0.0], [[2.0]]), standard_gaussian(1))
        self.assertAlmostEqual(evaluation.lhs, 0.5 * (math.sqrt(2.0) - 1.0)**2, places=10)
        self.assertLess(evaluation.rhs, evaluation.intermediates['classical_rhs'])
        self.assertTrue(evaluation.passed)
        self.assertIn('deficit_entropy_bound', evaluation.intermediates)

    def test_grid_measure(self):
        """Test a perturbed grid density against its reference."""
        mu = discretize(standard_gaussian(1))
        nu = perturb_density(mu, FunctionRegistry.create('hermite', k=1), 0.1)
        evaluation = InequalityRegistry.evaluate('talagrand_dimensional', nu=nu, mu=mu, R=1.0)[0]
        self.assertTrue(evaluation.passed)
        self.assertIn('evidence_grid', evaluation.flags)

    def test_curvature(self):
        """Test R must be positive."""
        with self.assertRaises(DomainError):
            evaluate_talagrand_dimensional(standard_gaussian(1), standard_gaussian(1), R=0.0)


class HwiTestCase(unittest.TestCase):
    """A class for HWI test cases."""
    def test_translations(self):
        """Test translations of gamma are equality cases of HWI."""
        for n in [1, 2]:
            nu = build_gaussian([1.5] + [0.0] * (n - 1), np.eye(n))
            evaluation = evaluate_hwi(nu, standard_gaussian(n))
            self.assertAlmostEqual(evaluation.lhs, 0.0, places=10)
            self.assertAlmostEqual(evaluation.rhs, 0.0, places=10)
            self.assertTrue(evaluation.passed)

    def test_two_measures(self):
        """Test HWI between f mu and g mu with a negative R."""
        gamma = standard_gaussian(1)
        evaluation = evaluate_hwi(build_gaussian([1.0], [[2.0]]), gamma, g_measure=build_gaussian([0.5], [[0.5]]))
        self.assertTrue(evaluation.passed)
        self.assertNotIn('combined_lsi_bound', evaluation.intermediates)
        relaxed = evaluate_hwi(build_gaussian([1.0], [[2.0]]), gamma, R=-1.0)
        self.assertTrue(relaxed.passed)
        self.assertEqual(relaxed.intermediates['R'], -1.0)

    def test_gaussian_comparison(self):
        """Test the Gaussian HWI against its earlier form for a measure with second moment 1."""
        evaluation = compare_hwi_gaussian(build_gaussian([0.5], [[0.75]]))
        self.assertTrue(evaluation.passed)
        self.assertIn('earlier_tighter', evaluation.flags)
        self.assertAlmostEqual(evaluation.intermediates['second_moment'], 1.0, places=10)
        with self.assertRaises(PreconditionError):
            compare_hwi_gaussian(build_gaussian([0.0], [[2.0]]))


class ProductTestCase(unittest.TestCase):
    """A class for tensorization and linearization test cases."""
    def test_tensorization(self):
        """Test the product lower bound for N = 2, 5, 10."""
        nu = build_gaussian([0.0], [[2.0]])
        gamma = standard_gaussian(1)
        for N in [2, 5, 10]:
            evaluation = tensorization_lower_bound(nu, gamma, N)
            self.assertTrue(evaluation.passed)
            self.assertAlmostEqual(evaluation.intermediates['scaling_error'], 0.0, places=10)
            self.assertEqual(evaluation.intermediates['N'], N)
        with self.assertRaises(DomainError):
            tensorization_lower_bound(nu, gamma, 0)

    def test_linearization(self):
        """Test the perturbative audit around gamma."""
        report = linearization_check(standard_gaussian(1), FunctionRegistry.create('hermite', k=2))
        self.assertTrue(report.passed)
        self.assertEqual(len(report.table), 2)
        self.assertIn('deficit_quotient_limit', report.intermediates)
        self.assertAlmostEqual(report.intermediates['centering_shift'], 0.0, places=4)
        with self.assertRaises(DomainError):
            linearization_check(standard_gaussian(1), FunctionRegistry.create('hermite', k=1), eps_values=[0.1])

    def test_richardson_limit(self):
        """Test extrapolation removes the linear term of the quotient."""
        for e1, e2 in [(1e-2, 1e-3), (0.2, 0.05)]:
            quotient = lambda eps: 2.0 + 3.0 * eps    # noqa: E731
            self.assertAlmostEqual(richardson_limit(quotient(e1), quotient(e2), e1, e2), 2.0, places=10)
        curved = lambda eps: 1.0 - eps + eps * eps    # noqa: E731
        limit = richardson_limit(curved(0.1), curved(0.01), 0.1, 0.01)
        self.assertLess(abs(limit - 1.0), abs(curved(0.01) - 1.0))
        report = linearization_check(standard_gaussian(1), FunctionRegistry.create('hermite', k=2))
        table = report.table
        self.assertAlmostEqual(
            report.intermediates['bound_quotient_limit'],
            richardson_limit(table['bound_quotient'].iloc[0], table['bound_quotient'].iloc[1], 1e-2, 1e-3),
            places=12
        )
