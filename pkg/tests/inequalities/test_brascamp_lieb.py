# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for Brascamp-Lieb and Poincaré variants."""

import math

import numpy as np
import pytest

from dimbench.common.errors import PreconditionError
from dimbench.inequalities.brascamp_lieb import COMPARISON_COLUMNS, compare_brascamp_lieb, evaluate_brascamp_lieb
from dimbench.measures import FunctionRegistry, GridSpec, PotentialRegistry, build_from_potential, build_gaussian, \
    discretize, standard_gaussian


@pytest.mark.parametrize('n', [1, 2, 3])
@pytest.mark.parametrize('variant', ['classical', 'transport_I', 'gaussian_spectral'])
def test_linear_equality(n, variant):
    """Test linear functions are equality cases under gamma."""
    f = FunctionRegistry.create('linear', dimension=n)
    evaluation = evaluate_brascamp_lieb(f, standard_gaussian(n), variant)
    assert evaluation.lhs == pytest.approx(1.0)
    assert evaluation.slack == pytest.approx(0.0, abs=1e-10)
    assert evaluation.passed


@pytest.mark.parametrize('n', [1, 2, 3])
@pytest.mark.parametrize('variant', ['gaussian_dim', 'bbl_II', 'harge'])
def test_square_equality(n, variant):
    """Test |x|^2 is an equality case of the dimensional corrections under gamma."""
    f = FunctionRegistry.create('square', dimension=n)
    evaluation = evaluate_brascamp_lieb(f, standard_gaussian(n), variant)
    assert evaluation.lhs == pytest.approx(2.0 * n)
    assert evaluation.slack == pytest.approx(0.0, abs=1e-8)
    assert evaluation.intermediates['correction'] == pytest.approx(2.0 * n)
    assert evaluation.passed


def test_transport_i_correction():
    """Test the transport_I correction is recorded with Var V below n."""
    f = FunctionRegistry.create('square', dimension=2)
    evaluation = evaluate_brascamp_lieb(f, standard_gaussian(2), 'transport_I')
    assert evaluation.intermediates['var_V'] == pytest.approx(1.0)
    assert evaluation.intermediates['correction'] == pytest.approx(4.0)
    assert evaluation.rhs == pytest.approx(4.0)
    assert 'potential_variance_not_below_n' not in evaluation.flags


def test_bobkov_ledoux():
    """Test the weighted Poincaré form holds for a linear function."""
    evaluation = evaluate_brascamp_lieb(FunctionRegistry.create('linear'), standard_gaussian(1), 'bobkov_ledoux')
    assert evaluation.passed
    assert evaluation.rhs > 3.0


def test_log_concave_grid():
    """Test the classical bound and its corrections on a non Gaussian grid density."""
    mu = build_from_potential(PotentialRegistry.create('gaussian_plus_power', p=4.0), GridSpec.symmetric(6.0, 4096))
    f = FunctionRegistry.create('linear')
    classical = evaluate_brascamp_lieb(f, mu, 'classical')
    corrected = evaluate_brascamp_lieb(f, mu, 'transport_I')
    assert classical.passed
    assert corrected.passed
    assert corrected.rhs <= classical.rhs
    assert 'evidence_grid' in classical.flags
    second = evaluate_brascamp_lieb(FunctionRegistry.create('square'), mu, 'bbl_II')
    assert second.passed


def test_gaussian_variants_need_standard_gaussian():
    """Test the gaussian variants refuse other references."""
    f = FunctionRegistry.create('linear')
    with pytest.raises(PreconditionError):
        evaluate_brascamp_lieb(f, build_gaussian([1.0], [[1.0]]), 'gaussian_dim')


def test_comparison_table():
    """Test the side by side comparison of every variant."""
    table = compare_brascamp_lieb(FunctionRegistry.create('square', dimension=2), standard_gaussian(2))
    assert list(table.columns) == COMPARISON_COLUMNS
    assert len(table) == 7
    assert table['applicable'].all()
    assert (table['verdict'] == 'pass').all()
    np.testing.assert_allclose(table['lhs'], 4.0)


@pytest.fixture(scope='module')
def fine_gaussian_grid():
    """Standard Gaussian cell masses on 2^14 cells of [-12, 12]."""
    return discretize(standard_gaussian(1), GridSpec.symmetric(12.0, 2**14))


@pytest.mark.parametrize('k', range(1, 8))
def test_hermite_bbl_below_spectral(fine_gaussian_grid, k):
    """Test the bbl_II bound is below the Gaussian spectral bound for He_1, ..., He_7."""
    f = FunctionRegistry.create('hermite', k=k)
    bbl = evaluate_brascamp_lieb(f, fine_gaussian_grid, 'bbl_II')
    spectral = evaluate_brascamp_lieb(f, fine_gaussian_grid, 'gaussian_spectral')
    assert bbl.passed
    assert bbl.lhs == pytest.approx(math.factorial(k), rel=1e-4)
    assert bbl.rhs <= spectral.rhs + 1e-6


def test_hermite_bbl_value(fine_gaussian_grid):
    """Test the bbl_II bound of He_3 against its closed form 18 - 4 (3 - E[1 / (1 + x^2)])."""
    mills = math.sqrt(0.5 * math.pi) * math.exp(0.5) * math.erfc(1.0 / math.sqrt(2.0))
    evaluation = evaluate_brascamp_lieb(FunctionRegistry.create('hermite', k=3), fine_gaussian_grid, 'bbl_II')
    assert evaluation.rhs == pytest.approx(18.0 - 4.0 * (3.0 - mills), abs=1e-4)
