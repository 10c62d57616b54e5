# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for the deficit functions delta_n and Lambda_n."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dimbench.common.errors import DomainError
from dimbench.inequalities import core_deficits, deficit_delta, deficit_lambda
from dimbench.measures import build_gaussian, standard_gaussian

dimensions = st.integers(min_value=1, max_value=50)


def test_known_values():
    """Test closed form values of both deficits."""
    assert deficit_delta(1, math.log(2.0)) == pytest.approx(math.log(2.0) - 0.5)
    assert deficit_delta(3, 0.0) == 0.0
    assert deficit_lambda(1, 1.0) == pytest.approx(1.0 - math.log(2.0))
    assert deficit_lambda(2, 0.0) == 0.0
    np.testing.assert_allclose(deficit_delta(2, np.array([0.0, 2.0])), [0.0, 2.0 * math.exp(-1.0)])


def test_series_matches_direct_form():
    """Test both sides of the series cutoff agree."""
    for n in [1, 5]:
        for u in [9.9e-4, 1.01e-3]:
            x = u * n
            assert deficit_delta(n, x) == pytest.approx(n * (math.exp(-u) - 1.0 + u), rel=1e-9)
            assert deficit_lambda(n, x) == pytest.approx(n * (u - math.log1p(u)), rel=1e-9)


def test_lambda_domain():
    """Test Lambda_n refuses x <= -n and non integer dimensions."""
    with pytest.raises(DomainError):
        deficit_lambda(2, -2.0)
    with pytest.raises(DomainError):
        deficit_lambda(1, [0.0, -3.0])
    with pytest.raises(DomainError):
        deficit_delta(1.5, 0.0)
    assert deficit_delta(1, -1000.0) == math.inf


@given(dimensions, st.floats(min_value=-50.0, max_value=50.0))
def test_delta_nonnegative(n, x):
    """Test delta_n is nonnegative and below x^2/2 for x >= 0."""
    value = deficit_delta(n, x)
    assert value >= 0.0
    if x >= 0:
        assert value <= 0.5 * x * x / n + 1e-12


@given(dimensions, st.floats(min_value=-0.99, max_value=50.0))
def test_lambda_nonnegative(n, u):
    """Test Lambda_n is nonnegative on its domain."""
    assert deficit_lambda(n, u * n) >= 0.0


@given(dimensions, st.floats(min_value=-5.0, max_value=5.0), st.floats(min_value=-5.0, max_value=5.0))
def test_delta_midpoint_convexity(n, x, y):
    """Test delta_n is midpoint convex."""
    midpoint = deficit_delta(n, 0.5 * (x + y))
    assert midpoint <= 0.5 * (deficit_delta(n, x) + deficit_delta(n, y)) + 1e-9


@pytest.mark.parametrize('n', range(1, 11))
def test_delta_lower_bound(n):
    """Test delta_n(x) >= min(|x|, x^2/n) / e, tight at x = n."""
    rng = np.random.default_rng(n)
    x = np.concatenate([rng.uniform(-50.0, 50.0, 10000), [-50.0, -n, 0.0, n, 50.0]])
    bound = np.minimum(np.abs(x), x * x / n) / math.e
    values = deficit_delta(n, x)
    assert np.all(values >= bound * (1.0 - 1e-12))
    assert deficit_delta(n, float(n)) == pytest.approx(n / math.e, rel=1e-12)


def test_core_deficits():
    """Test the LSI and Talagrand deficits of N(0, 2) relative to gamma."""
    deficits = core_deficits(build_gaussian([0.0], [[2.0]]), standard_gaussian(1), 1.0)
    assert deficits.entropy == pytest.approx(0.5 * (1.0 - math.log(2.0)))
    assert deficits.fisher == pytest.approx(0.5)
    assert deficits.delta_lsi == pytest.approx(0.09657, abs=1e-5)
    assert deficits.delta_tal == pytest.approx(deficits.entropy - 0.5 * (math.sqrt(2.0) - 1.0)**2)
