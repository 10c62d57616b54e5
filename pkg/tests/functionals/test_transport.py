# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for Wasserstein distances and Brenier maps."""

import math
import unittest

import numpy as np

from dimbench.common.errors import DomainError, RepresentationError
from dimbench.functionals import TransportKind, WassersteinBackend, brenier_transport, wasserstein2, \
    wasserstein2_estimate
from dimbench.measures import Measure, ParticleCloud, build_gaussian, discretize, standard_gaussian, tensor_power


class WassersteinTestCase(unittest.TestCase):
    """A class for W2 test cases."""
    def test_translations(self):
        """Test W2(N(a, I), gamma) = |a| in several dimensions."""
        for n in [1, 2, 5]:
            for a in [0.5, 1.0, 2.0]:
                nu = build_gaussian([a] + [0.0] * (n - 1), np.eye(n))
                self.assertAlmostEqual(wasserstein2(nu, standard_gaussian(n)), a, places=10)

    def test_gaussian_backends(self):
        """Test the Gaussian and quantile closed forms agree."""
        nu = build_gaussian([1.0], [[4.0]])
        gamma = standard_gaussian(1)
        estimate = wasserstein2_estimate(nu, gamma)
        self.assertEqual(estimate.backend, WassersteinBackend.GAUSSIAN)
        self.assertAlmostEqual(estimate.squared, 2.0, places=10)
        self.assertAlmostEqual(wasserstein2_estimate(nu, gamma, backend='quantile1d').squared, 2.0, places=12)
        self.assertAlmostEqual(estimate.value, math.sqrt(2.0), places=10)

    def test_quantile_grids(self):
        """Test the quantile backend on grid densities."""
        nu = discretize(build_gaussian([1.0], [[1.0]]))
        mu = discretize(standard_gaussian(1))
        estimate = wasserstein2_estimate(nu, mu)
        self.assertEqual(estimate.backend, WassersteinBackend.QUANTILE1D)
        self.assertAlmostEqual(estimate.squared, 1.0, places=3)

    def test_entropic_particles(self):
        """Test the debiased entropic estimate on a translated cloud."""
        nu = Measure(ParticleCloud(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])))
        mu = Measure(ParticleCloud(np.array([[1.0, 0.0], [2.0, 0.0], [3.0, 0.0]])))
        estimate = wasserstein2_estimate(nu, mu)
        self.assertEqual(estimate.backend, WassersteinBackend.ENTROPIC)
        self.assertAlmostEqual(estimate.squared, 1.0, places=3)
        self.assertIsNotNone(estimate.epsilon)

    def test_products(self):
        """Test W2^2 of factored products scales with N."""
        nu = build_gaussian([1.0], [[1.0]])
        gamma = standard_gaussian(1)
        self.assertAlmostEqual(
            wasserstein2_estimate(tensor_power(nu, 10), tensor_power(gamma, 10)).squared, 10.0, places=10
        )

    def test_invalid_pairs(self):
        """Test dimension mismatches and unsupported backends."""
        with self.assertRaises(DomainError):
            wasserstein2(standard_gaussian(1), standard_gaussian(2))
        with self.assertRaises(RepresentationError):
            wasserstein2(standard_gaussian(2), standard_gaussian(2), backend='quantile1d')
        with self.assertRaises(RepresentationError):
            wasserstein2(discretize(standard_gaussian(1)), standard_gaussian(1), backend='gaussian')


class BrenierTestCase(unittest.TestCase):
    """A class for Brenier transport test cases."""
    def test_affine_map(self):
        """Test the affine map between Gaussians."""
        plan = brenier_transport(standard_gaussian(1), build_gaussian([1.0], [[4.0]]))
        self.assertEqual(plan.kind, TransportKind.AFFINE)
        np.testing.assert_allclose(plan.push([[0.0], [1.0]]), [[1.0], [3.0]])
        self.assertAlmostEqual(plan.laplacian_expectation(), 2.0, places=12)
        self.assertAlmostEqual(plan.cost, 2.0, places=10)

    def test_monotone_map(self):
        """Test the monotone rearrangement of 1D densities."""
        plan = brenier_transport(discretize(standard_gaussian(1)), discretize(build_gaussian([1.0], [[1.0]])))
        self.assertEqual(plan.kind, TransportKind.MONOTONE1D)
        np.testing.assert_allclose(plan.push([[0.0], [1.0]]), [[1.0], [2.0]], atol=1e-2)
        self.assertAlmostEqual(plan.laplacian_expectation(), 1.0, places=2)

    def test_discrete_coupling(self):
        """Test particle clouds give a coupling without a map."""
        nu = Measure(ParticleCloud(np.array([[0.0], [1.0]])))
        mu = Measure(ParticleCloud(np.array([[2.0], [3.0]])))
        plan = brenier_transport(nu, mu)
        self.assertEqual(plan.kind, TransportKind.DISCRETE_COUPLING)
        self.assertAlmostEqual(plan.cost, 4.0, places=10)
        with self.assertRaises(RepresentationError):
            plan.push([[0.0]])
        with self.assertRaises(RepresentationError):
            plan.distortion()
