# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Quadrature rules shared by the functionals: expectations, variances and grid pairs."""

import math

import numpy as np
from numpy.polynomial.hermite_e import hermegauss

from dimbench.common.errors import AbsoluteContinuityError, DomainError, GridError, RepresentationError
from dimbench.common.utils import get_config, logger
from dimbench.measures import MeasureKind, discretize, materialize_product


def gauss_hermite_rule(gauss, max_points=None):
    """Tensor Gauss-Hermite rule for a Gaussian, exact for polynomials of degree < 2k per axis.

    Args:
        gauss (GaussianAnalytic): the Gaussian.
        max_points (int, optional): node budget, the configured one if None.

    Return:
        tuple: (points (m, n), weights (m,)).
    """
    cfg = get_config().functionals
    max_points = max_points or int(cfg.hermite_max_points)
    n = gauss.dimension
    k = min(int(cfg.hermite_nodes), int(math.floor(max_points**(1.0 / n) + 1e-9)))
    if k < 3:
        logger.log_and_raise(
            GridError, 'Gauss-Hermite budget {} too small for dimension {}, use a particle cloud.'.format(max_points, n)
        )
    nodes, weights = hermegauss(k)
    weights = weights / math.sqrt(2.0 * math.pi)
    mesh = np.meshgrid(*([nodes] * n), indexing='ij')
    z = np.stack([m.ravel() for m in mesh], axis=1)
    w = np.ones(z.shape[0])
    for wm in np.meshgrid(*([weights] * n), indexing='ij'):
        w = w * wm.ravel()
    points = gauss.mean + z @ gauss.cholesky.T
    return points, w / w.sum()


def quadrature_rule(mu):
    """Points and weights integrating against a measure.

    Factored Gaussian products are materialized, factored grids refused.

    Return:
        tuple: (points (m, n), weights (m,)).
    """
    if mu.factors > 1:
        mu = materialize_product(mu)
    rep = mu.representation
    if mu.kind == MeasureKind.GAUSSIAN:
        return gauss_hermite_rule(rep)
    if mu.kind == MeasureKind.GRID:
        return rep.grid.points, rep.flat_weights
    return rep.points, rep.weights


def _weighted_mean(values, weights, what, particles):
    values = np.asarray(values, dtype=float)
    finite = np.isfinite(values)
    if finite.all():
        return float(np.tensordot(weights, values, axes=(0, 0)))
    if not particles:
        logger.log_and_raise(DomainError, 'Integrand {} is not finite on the quadrature nodes.'.format(what))
    fraction = float(weights[finite].sum())
    required = float(get_config().functionals.finite_fraction)
    if fraction < required:
        logger.log_and_raise(
            DomainError, 'Integrand {} finite on {:.4%} of the particle mass, {:.1%} required.'.format(
                what, fraction, required
            )
        )
    logger.warning('Integrand %s dropped on %.3e of the particle mass.', what, 1.0 - fraction)
    return float(np.dot(weights[finite], values[finite]) / fraction)


def expectation(f, mu, what='f'):
    """Integral of f against mu.

    Args:
        f (Callable): vectorized function of (m, n) points.
        mu (Measure): the measure.
        what (str): integrand name for diagnostics.

    Return:
        float: the expectation.

    Raises:
        DomainError: if the integrand is not finite on the nodes, or on too much particle mass.
    """
    points, weights = quadrature_rule(mu)
    return _weighted_mean(f(points), weights, what, mu.kind == MeasureKind.PARTICLES)


def variance(f, mu):
    """Variance and expectation of f under mu.

    Return:
        tuple: (Var_mu(f), mu(f)).
    """
    points, weights = quadrature_rule(mu)
    values = np.asarray(f(points), dtype=float)
    particles = mu.kind == MeasureKind.PARTICLES
    mean = _weighted_mean(values, weights, 'f', particles)
    var = _weighted_mean((values - mean)**2, weights, '(f - mu(f))^2', particles)
    return max(var, 0.0), mean


def potential_expectation(mu, potential):
    """Integral of the one factor potential against mu, summed over the factors of a product."""
    base = mu.base()
    return mu.factors * expectation(potential.values, base, 'V')


def second_moment(mu):
    """Integral of |x|^2 against mu."""
    base = mu.base()
    if base.kind == MeasureKind.GAUSSIAN:
        rep = base.representation
        value = float(rep.mean @ rep.mean + np.trace(rep.covariance))
    else:
        value = expectation(lambda x: np.sum(x * x, axis=1), base, '|x|^2')
    return mu.factors * value


def mean_vector(mu):
    """Mean of one factor of mu."""
    base = mu.base()
    if base.kind == MeasureKind.GAUSSIAN:
        return np.array(base.representation.mean)
    points, weights = quadrature_rule(base)
    return weights @ points


def align_factors(nu, mu):
    """Bring a pair of measures to a common factor count.

    Return:
        tuple: (nu one factor, mu one factor, N) when both share N factors,
        otherwise the materialized pair and N = 1.
    """
    if nu.factors == mu.factors:
        return nu.base(), mu.base(), nu.factors
    if nu.dimension != mu.dimension:
        logger.log_and_raise(DomainError, 'Measures of dimension {} and {} cannot be compared.'.format(
            nu.dimension, mu.dimension
        ))
    return materialize_product(nu), materialize_product(mu), 1


def grid_pair(nu, mu):
    """Weights of nu and mu on a common grid.

    Gaussians are discretized on the grid of the other measure. A grid measure on
    another grid is evaluated through its normalized potential.

    Return:
        tuple: (grid, nu weights, mu weights) with weight arrays of the grid shape.

    Raises:
        RepresentationError: for particle clouds or incompatible grids.
        AbsoluteContinuityError: if nu charges cells where mu has no mass.
    """
    if MeasureKind.PARTICLES in (nu.kind, mu.kind):
        logger.log_and_raise(RepresentationError, 'Densities are needed, particle clouds have none.')
    if nu.dimension != mu.dimension:
        logger.log_and_raise(DomainError, 'Measures of dimension {} and {} cannot be compared.'.format(
            nu.dimension, mu.dimension
        ))
    if nu.kind == MeasureKind.GAUSSIAN and mu.kind == MeasureKind.GAUSSIAN:
        nu = discretize(nu)
    if nu.kind == MeasureKind.GAUSSIAN:
        nu = discretize(nu, mu.representation.grid)
    grid = nu.representation.grid
    nu_weights = nu.representation.weights
    if mu.kind == MeasureKind.GAUSSIAN:
        mu_weights = discretize(mu, grid).representation.weights
    elif mu.representation.grid == grid:
        mu_weights = mu.representation.weights
    elif mu.potential is not None and mu.potential.normalization is not None:
        log_mu = -mu.potential.values(grid.points).reshape(grid.shape) + math.log(grid.cell_volume)
        mu_weights = np.exp(log_mu)
        mu_weights = mu_weights / mu_weights.sum()
    else:
        logger.log_and_raise(RepresentationError, 'Grid densities on different grids without a normalized potential.')
    cutoff = float(get_config().measures.fisher_cutoff)
    charged = nu_weights > cutoff * nu_weights.max()
    if np.any(charged & (mu_weights <= 0)):
        logger.log_and_raise(
            AbsoluteContinuityError, 'First measure charges {} cells where the reference measure vanishes.'.format(
                int(np.sum(charged & (mu_weights <= 0)))
            )
        )
    return grid, nu_weights, mu_weights


def floored_log(weights):
    """Logarithm with the configured density floor."""
    return np.log(np.maximum(weights, float(get_config().measures.density_floor)))


def log_ratio_gradient(grid, w_nu, w_mu=None):
    """Central differences of log(w_nu / w_mu) on a grid, one-sided at the box edges.

    Return:
        np.ndarray: (size, n) gradients in C order, log(w_nu) alone when w_mu is None.
    """
    log_ratio = floored_log(w_nu)
    if w_mu is not None:
        log_ratio = log_ratio - floored_log(w_mu)
    if grid.dimension == 1:
        return np.gradient(log_ratio, grid.spacing[0], edge_order=2).reshape(-1, 1)
    grads = np.gradient(log_ratio, *grid.spacing, edge_order=2)
    return np.stack([g.ravel() for g in grads], axis=1)


def _significant(weights):
    cutoff = float(get_config().measures.fisher_cutoff)
    return np.where(weights > cutoff * weights.max(), weights, 0.0).ravel()


def relative_score(nu, mu, method='auto'):
    """Score grad log(dnu/dmu) at the quadrature nodes of nu.

    Args:
        nu (Measure): one factor measure.
        mu (Measure): one factor reference measure.
        method (str): 'analytic' uses grad V_mu - grad V_nu from both potentials,
            'finite_difference' differentiates the grid log ratio, 'auto' takes the
            potentials when both are declared.

    Return:
        tuple: (points (m, n), weights (m,), score (m, n)); weights vanish on the cells
        below the Fisher cutoff.
    """
    if method not in ('auto', 'analytic', 'finite_difference'):
        logger.log_and_raise(DomainError, 'Unknown score method {}.'.format(method))
    potentials = nu.potential is not None and mu.potential is not None
    if method == 'analytic' or (method == 'auto' and potentials):
        if not potentials:
            logger.log_and_raise(RepresentationError, 'An analytic score needs both potentials.')
        points, weights = quadrature_rule(nu)
        return points, weights, mu.potential.gradients(points) - nu.potential.gradients(points)
    grid, w_nu, w_mu = grid_pair(nu, mu)
    return grid.points, _significant(w_nu), log_ratio_gradient(grid, w_nu, w_mu)


def log_density_gradient(m):
    """Gradient of the log density, -grad V, at the quadrature nodes of a one factor measure.

    Return:
        tuple: (points (m, n), weights (m,), gradient (m, n)).

    Raises:
        RepresentationError: for particle clouds without a potential.
    """
    if m.potential is not None:
        points, weights = quadrature_rule(m)
        return points, weights, -m.potential.gradients(points)
    if m.kind == MeasureKind.GAUSSIAN:
        rep = m.representation
        points, weights = quadrature_rule(m)
        return points, weights, -(points - rep.mean) @ rep.precision
    if m.kind != MeasureKind.GRID:
        logger.log_and_raise(RepresentationError, 'A particle cloud has no log density gradient.')
    rep = m.representation
    return rep.grid.points, _significant(rep.weights), log_ratio_gradient(rep.grid, rep.weights)
