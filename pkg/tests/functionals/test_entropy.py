# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for entropy and Fisher information functionals."""

import math
import unittest
from unittest import mock

import numpy as np

from dimbench.common.errors import RepresentationError
from dimbench.functionals import entropy_dx, fisher_information, relative_entropy
from dimbench.measures import Measure, ParticleCloud, build_gaussian, discretize, standard_gaussian, tensor_power


class EntropyTestCase(unittest.TestCase):
    """A class for relative entropy test cases."""
    def test_gaussian_closed_forms(self):
        """Test the closed form relative entropy of Gaussian pairs."""
        nu = build_gaussian([1.0, 1.0], np.eye(2))
        self.assertAlmostEqual(relative_entropy(nu, standard_gaussian(2)), 1.0, places=12)
        wide = build_gaussian([0.0], [[2.0]])
        self.assertAlmostEqual(relative_entropy(wide, standard_gaussian(1)), 0.5 * (1.0 - math.log(2.0)), places=12)
        self.assertAlmostEqual(relative_entropy(standard_gaussian(3), standard_gaussian(3)), 0.0, places=12)

    def test_grid_entropy(self):
        """Test the quadrature relative entropy on a grid against the closed form."""
        wide = discretize(build_gaussian([0.0], [[2.0]]))
        self.assertAlmostEqual(relative_entropy(wide, standard_gaussian(1)), 0.15343, places=4)

    def test_products(self):
        """Test the relative entropy of factored products scales with N."""
        nu = build_gaussian([0.5], [[1.0]])
        gamma = standard_gaussian(1)
        single = relative_entropy(nu, gamma)
        self.assertAlmostEqual(relative_entropy(tensor_power(nu, 5), tensor_power(gamma, 5)), 5 * single, places=12)

    def test_negative_quadrature_warns(self):
        """Test a negative quadrature value is clamped to 0 with a warning."""
        grid = discretize(standard_gaussian(1))
        weights = (None, np.array([0.5, 0.5]), np.array([0.6, 0.6]))
        with mock.patch('dimbench.functionals.entropy.grid_pair', return_value=weights):
            with self.assertLogs('dimbench', level='WARNING') as captured:
                self.assertEqual(relative_entropy(grid, grid), 0.0)
        self.assertIn('reported as 0', captured.output[0])
        with mock.patch('dimbench.functionals.entropy.logger') as entropy_logger:
            self.assertAlmostEqual(relative_entropy(grid, grid), 0.0, places=12)
        entropy_logger.warning.assert_not_called()

    def test_entropy_dx(self):
        """Test the entropy with respect to Lebesgue measure."""
        expected = -0.5 * math.log(2.0 * math.pi * math.e)
        self.assertAlmostEqual(entropy_dx(standard_gaussian(1)), expected, places=12)
        self.assertAlmostEqual(entropy_dx(discretize(standard_gaussian(1))), expected, places=4)
        self.assertAlmostEqual(entropy_dx(tensor_power(standard_gaussian(1), 3)), 3 * expected, places=12)
        self.assertAlmostEqual(entropy_dx(build_gaussian([0.0], [[4.0]])), expected - math.log(2.0), places=12)
        with self.assertRaises(RepresentationError):
            entropy_dx(Measure(ParticleCloud(np.zeros((4, 1)))))


class FisherInformationTestCase(unittest.TestCase):
    """A class for relative Fisher information test cases."""
    def test_translated_gaussian(self):
        """Test I(N(a, I) | gamma) = |a|^2."""
        nu = build_gaussian([1.0, -2.0], np.eye(2))
        self.assertAlmostEqual(fisher_information(nu, standard_gaussian(2)), 5.0, places=12)

    def test_scaled_gaussian(self):
        """Test I(N(0, 2) | N(0, 1)) = 1/2 with every method."""
        wide = build_gaussian([0.0], [[2.0]])
        gamma = standard_gaussian(1)
        self.assertAlmostEqual(fisher_information(wide, gamma), 0.5, places=12)
        grid = discretize(wide)
        self.assertAlmostEqual(fisher_information(grid, gamma), 0.5, places=4)
        self.assertAlmostEqual(fisher_information(grid, gamma, method='analytic'), 0.5, places=4)
        self.assertAlmostEqual(fisher_information(grid, gamma, method='finite_difference'), 0.5, places=3)

    def test_analytic_needs_potentials(self):
        """Test the analytic score is refused without potentials."""
        gamma = discretize(standard_gaussian(1))
        bare = Measure(gamma.representation)
        with self.assertRaises(RepresentationError):
            fisher_information(bare, standard_gaussian(1), method='analytic')
        self.assertAlmostEqual(fisher_information(bare, standard_gaussian(1)), 0.0, places=6)
