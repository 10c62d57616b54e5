# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for entropy profiles along displacement geodesics."""

import math
import unittest

import numpy as np

from dimbench.common.errors import DomainError
from dimbench.functionals import entropy_dx, geodesic_profile
from dimbench.functionals.geodesic import second_difference
from dimbench.measures import build_gaussian, discretize, standard_gaussian


class GeodesicTestCase(unittest.TestCase):
    """A class for geodesic profile test cases."""
    def test_dilation(self):
        """Test psi(s) = psi(0) - log(1 + s) along gamma -> N(0, 4)."""
        gamma = standard_gaussian(1)
        profile = geodesic_profile(gamma, build_gaussian([0.0], [[4.0]]))
        s = profile.s_grid
        self.assertEqual(s.size, 33)
        self.assertAlmostEqual(profile.step, 1.0 / 32.0, places=12)
        np.testing.assert_allclose(profile.psi, entropy_dx(gamma) - np.log1p(s), atol=1e-12)
        np.testing.assert_allclose(profile.psi_prime, -1.0 / (1.0 + s), atol=1e-12)
        np.testing.assert_allclose(profile.psi_second, 1.0 / (1.0 + s)**2, atol=1e-12)
        np.testing.assert_allclose(profile.psi_prime_fd, profile.psi_prime, atol=1e-3)
        self.assertLess(profile.endpoint_error, 1e-12)

    def test_translation_is_flat(self):
        """Test translations leave the entropy constant."""
        profile = geodesic_profile(standard_gaussian(2), build_gaussian([1.0, 1.0], np.eye(2)), s_count=33)
        np.testing.assert_allclose(profile.psi, -math.log(2.0 * math.pi * math.e), atol=1e-12)
        np.testing.assert_allclose(profile.psi_second, 0.0, atol=1e-12)

    def test_grid_profile(self):
        """Test the monotone map profile of 1D grid densities."""
        profile = geodesic_profile(discretize(standard_gaussian(1)), discretize(build_gaussian([0.0], [[4.0]])))
        np.testing.assert_allclose(profile.psi[-1] - profile.psi[0], -math.log(2.0), atol=1e-2)
        self.assertLess(profile.endpoint_error, 1e-2)

    def test_too_few_nodes(self):
        """Test profiles need at least 33 nodes."""
        for count in [2, 32]:
            with self.assertRaises(DomainError):
                geodesic_profile(standard_gaussian(1), standard_gaussian(1), s_count=count)

    def test_second_difference(self):
        """Test the three point rule is exact on quadratics and second order on smooth profiles."""
        s = np.linspace(0.0, 1.0, 33)
        np.testing.assert_allclose(second_difference(3.0 * s**2 - s, s[1]), 6.0, atol=1e-8)
        profile = geodesic_profile(standard_gaussian(1), build_gaussian([0.0], [[4.0]]), s_count=65)
        coarse = geodesic_profile(standard_gaussian(1), build_gaussian([0.0], [[4.0]]))
        fine_error = np.max(np.abs(profile.psi_second_fd - profile.psi_second)[1:-1])
        coarse_error = np.max(np.abs(coarse.psi_second_fd - coarse.psi_second)[1:-1])
        self.assertAlmostEqual(coarse_error / fine_error, 4.0, delta=0.5)
