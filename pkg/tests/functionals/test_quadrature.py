# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for quadrature based expectations."""

import numpy as np
import pytest

from dimbench.common.errors import DomainError, GridError
from dimbench.functionals import expectation, potential_expectation, second_moment, variance
from dimbench.functionals.quadrature import gauss_hermite_rule, mean_vector
from dimbench.measures import Measure, ParticleCloud, build_gaussian, discretize, standard_gaussian, tensor_power


def test_gauss_hermite_rule():
    """Test node budget and exactness of the Gauss-Hermite rule."""
    gamma = standard_gaussian(3)
    points, weights = gauss_hermite_rule(gamma.representation, max_points=1000)
    assert points.shape == (1000, 3)
    assert weights.sum() == pytest.approx(1.0)
    assert np.dot(weights, points[:, 0]**4) == pytest.approx(3.0)
    with pytest.raises(GridError):
        gauss_hermite_rule(gamma.representation, max_points=8)


@pytest.mark.parametrize('dimension', [1, 2, 3])
def test_potential_variance(dimension):
    """Test Var_gamma(V) = n/2 for the standard Gaussian potential."""
    gamma = standard_gaussian(dimension)
    var, mean = variance(gamma.potential.values, gamma)
    assert var == pytest.approx(dimension / 2.0, rel=1e-10)
    assert mean == pytest.approx(gamma.potential.beta + dimension / 2.0, rel=1e-10)


def test_moments():
    """Test expectations, second moments and means."""
    nu = build_gaussian([1.0, 2.0], np.eye(2))
    assert second_moment(nu) == pytest.approx(7.0)
    np.testing.assert_allclose(mean_vector(nu), [1.0, 2.0])
    assert expectation(lambda x: x[:, 0] * x[:, 1], nu) == pytest.approx(2.0)
    grid = discretize(build_gaussian([0.5], [[1.0]]))
    assert second_moment(grid) == pytest.approx(1.25, abs=1e-4)
    np.testing.assert_allclose(mean_vector(grid), [0.5], atol=1e-6)
    assert second_moment(tensor_power(standard_gaussian(1), 4)) == pytest.approx(4.0)


def test_potential_expectation_of_products():
    """Test the potential expectation sums over factors."""
    gamma = standard_gaussian(1)
    single = potential_expectation(gamma, gamma.potential)
    assert potential_expectation(tensor_power(gamma, 3), gamma.potential) == pytest.approx(3 * single)


def test_non_finite_integrands():
    """Test non finite integrands are refused on quadrature nodes and dropped on particles."""
    def integrand(x):
        return np.where(x[:, 0] > 0, 0.0, np.inf)

    with pytest.raises(DomainError):
        expectation(integrand, standard_gaussian(1))
    points = np.linspace(-1.0, 1.0, 10000)
    particles = Measure(ParticleCloud(points))
    assert expectation(lambda x: np.where(x[:, 0] > -1.0, 1.0, np.inf), particles) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        expectation(integrand, particles)
