# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Quadratic Wasserstein distance and Brenier transport plans."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import ot
from scipy import linalg

from dimbench.common.enum import Enum
from dimbench.common.errors import ConvergenceError, DomainError, RepresentationError
from dimbench.common.utils import get_config, logger
from dimbench.functionals.quadrature import align_factors
from dimbench.measures import MeasureKind, discretize, materialize_product
from dimbench.measures.builders import default_grid

_LEVEL_GUARD = 1.0e-12


class WassersteinBackend(Enum):
    """The W2 backends."""
    AUTO = 'auto'
    GAUSSIAN = 'gaussian'
    QUANTILE1D = 'quantile1d'
    ENTROPIC = 'entropic'


class TransportKind(Enum):
    """The kinds of transport plans."""
    AFFINE = 'affine'
    MONOTONE1D = 'monotone1d'
    DISCRETE_COUPLING = 'discrete_coupling'


@dataclass(frozen=True)
class WassersteinEstimate:
    """A W2 value with the backend that produced it and its solver diagnostics."""
    squared: float
    backend: WassersteinBackend
    epsilon: Optional[float] = None
    marginal_error: Optional[float] = None

    @property
    def value(self):
        """W2 itself."""
        return math.sqrt(max(self.squared, 0.0))


def _sqrtm_spd(matrix):
    root = linalg.sqrtm(matrix)
    root = np.real(root)
    return 0.5 * (root + root.T)


def gaussian_w2_squared(g1, g2):
    """|m1 - m2|^2 + tr(S1 + S2 - 2 (S2^1/2 S1 S2^1/2)^1/2)."""
    root2 = _sqrtm_spd(g2.covariance)
    cross = _sqrtm_spd(root2 @ g1.covariance @ root2)
    diff = g1.mean - g2.mean
    value = float(diff @ diff + np.trace(g1.covariance + g2.covariance - 2.0 * cross))
    return max(value, 0.0)


def _quantile_cells(m):
    """Quantile function of a 1D measure as pieces (u0, u1, x0, x1), linear on each piece.

    Grid cells carry their mass uniformly, so their pieces are linear; particles give
    constant pieces.
    """
    rep = m.representation
    if m.kind == MeasureKind.GRID:
        weights = rep.weights
        edges = rep.grid.edges(0)
        x0, x1 = edges[:-1], edges[1:]
    else:
        order = np.argsort(rep.points[:, 0], kind='stable')
        weights = rep.weights[order]
        x0 = x1 = rep.points[order, 0]
    keep = weights > 0
    u1 = np.cumsum(weights)
    u0 = u1 - weights
    u1[-1] = 1.0
    return u0[keep], u1[keep], x0[keep], x1[keep]


def _quantile_at(cells, u, index):
    u0, u1, x0, x1 = cells
    width = u1[index] - u0[index]
    frac = np.clip((u - u0[index]) / width, 0.0, 1.0)
    return x0[index] + frac * (x1[index] - x0[index])


def _as_1d_densities(nu, mu):
    """Put a 1D pair in grid or particle form, Gaussians discretized on their own default box."""
    return tuple(discretize(m) if m.kind == MeasureKind.GAUSSIAN else m for m in (nu, mu))


def quantile_w2_squared(nu, mu):
    """W2^2 of a 1D pair as the L2 distance of the quantile functions.

    Gaussian pairs use the closed form (m1 - m2)^2 + (s1 - s2)^2; other pairs integrate the
    squared difference of the piecewise linear quantiles exactly.
    """
    if nu.dimension != 1 or mu.dimension != 1:
        logger.log_and_raise(RepresentationError, 'The quantile backend needs 1D measures.')
    if nu.kind == MeasureKind.GAUSSIAN and mu.kind == MeasureKind.GAUSSIAN:
        a, b = nu.representation, mu.representation
        return float((a.mean[0] - b.mean[0])**2 + (math.sqrt(a.covariance[0, 0]) - math.sqrt(b.covariance[0, 0]))**2)
    nu, mu = _as_1d_densities(nu, mu)
    cells_a, cells_b = _quantile_cells(nu), _quantile_cells(mu)
    knots = np.unique(np.concatenate([[0.0], cells_a[1], cells_b[1]]))
    knots = knots[knots <= 1.0]
    left, right = knots[:-1], knots[1:]
    mid = 0.5 * (left + right)
    ia = np.clip(np.searchsorted(cells_a[1], mid), 0, cells_a[1].size - 1)
    ib = np.clip(np.searchsorted(cells_b[1], mid), 0, cells_b[1].size - 1)
    e0 = _quantile_at(cells_a, left, ia) - _quantile_at(cells_b, left, ib)
    e1 = _quantile_at(cells_a, right, ia) - _quantile_at(cells_b, right, ib)
    return float(np.sum((right - left) * (e0 * e0 + e0 * e1 + e1 * e1) / 3.0))


def _coarsen(weights, points, factor):
    """Merge blocks of consecutive cells along each axis into their barycenters."""
    shape = weights.shape
    padded = tuple(int(math.ceil(s / factor)) * factor for s in shape)
    w = np.zeros(padded)
    w[tuple(slice(0, s) for s in shape)] = weights
    p = np.zeros(padded + (points.shape[-1], ))
    p[tuple(slice(0, s) for s in shape)] = points.reshape(shape + (-1, ))
    for axis in range(len(shape)):
        new_shape = w.shape[:axis] + (w.shape[axis] // factor, factor) + w.shape[axis + 1:]
        wp = (p * w[..., None]).reshape(new_shape + (p.shape[-1], )).sum(axis=axis + 1)
        w = w.reshape(new_shape).sum(axis=axis + 1)
        with np.errstate(invalid='ignore', divide='ignore'):
            p = np.where(w[..., None] > 0, wp / w[..., None], 0.0)
    return w.ravel(), p.reshape(-1, points.shape[-1])


def discrete_support(m, max_support=None):
    """Points and weights of a measure with at most about max_support atoms.

    Return:
        tuple: (points (k, n), weights (k,)) with positive weights.
    """
    max_support = max_support or int(get_config().functionals.sinkhorn.max_support)
    if m.kind == MeasureKind.PARTICLES:
        points, weights = m.representation.points, m.representation.weights
    else:
        if m.kind == MeasureKind.GAUSSIAN:
            if m.dimension > 2:
                logger.log_and_raise(RepresentationError, 'Discrete support of a Gaussian needs n <= 2.')
            per_axis = int(max_support**(1.0 / m.dimension))
            m = discretize(m, default_grid(m, per_axis))
        rep = m.representation
        points, weights = rep.grid.points, rep.flat_weights
        if rep.grid.size > max_support:
            factor = int(math.ceil((rep.grid.size / max_support)**(1.0 / rep.dimension)))
            weights, points = _coarsen(rep.weights, points, factor)
    keep = weights > 0
    return points[keep], weights[keep] / weights[keep].sum()


def _annealed_sinkhorn(a, b, cost):
    """Transport cost <pi, M> of the entropic plan at the end of a geometric epsilon schedule."""
    cfg = get_config().functionals.sinkhorn
    scale = float(cost.mean()) or 1.0
    schedule = np.geomspace(float(cfg.eps_start), float(cfg.eps_floor), int(cfg.eps_steps)) * scale
    warmstart = None
    plan = None
    for reg in schedule:
        plan, log = ot.sinkhorn(
            a,
            b,
            cost,
            reg,
            method='sinkhorn_stabilized',
            numItermax=int(cfg.max_iterations),
            stopThr=float(cfg.marginal_tolerance),
            warmstart=warmstart,
            log=True,
            warn=False,
        )
        warmstart = log['warmstart']
    error = float(np.abs(plan.sum(axis=1) - a).sum() + np.abs(plan.sum(axis=0) - b).sum())
    if not np.isfinite(error) or error > float(cfg.failure_tolerance):
        logger.log_and_raise(
            ConvergenceError, 'Sinkhorn did not converge at epsilon {:.3e}, final marginal error {:.3e}.'.format(
                schedule[-1], error
            )
        )
    if error > float(cfg.marginal_tolerance):
        logger.warning('Sinkhorn marginal error %.3e above %.1e at epsilon %.3e.', error, cfg.marginal_tolerance,
                       schedule[-1])
    return float(np.sum(plan * cost)), float(schedule[-1]), error


def entropic_w2_squared(nu, mu):
    """Debiased entropic estimate of W2^2 with epsilon annealing.

    Return:
        tuple: (W2^2 estimate, final epsilon, marginal error).
    """
    xa, a = discrete_support(nu)
    xb, b = discrete_support(mu)
    cross, epsilon, error = _annealed_sinkhorn(a, b, ot.dist(xa, xb))
    self_a, _, _ = _annealed_sinkhorn(a, a, ot.dist(xa, xa))
    self_b, _, _ = _annealed_sinkhorn(b, b, ot.dist(xb, xb))
    return max(cross - 0.5 * (self_a + self_b), 0.0), epsilon, error


def _resolve_backend(nu, mu, backend):
    backend = WassersteinBackend(str(backend))
    if backend != WassersteinBackend.AUTO:
        return backend
    if nu.kind == MeasureKind.GAUSSIAN and mu.kind == MeasureKind.GAUSSIAN:
        return WassersteinBackend.GAUSSIAN
    if nu.dimension == 1:
        return WassersteinBackend.QUANTILE1D
    return WassersteinBackend.ENTROPIC


def wasserstein2_estimate(nu, mu, backend='auto'):
    """W2 between two measures with its backend diagnostics.

    Products with N factors on both sides use N times the one factor W2^2.

    Raises:
        RepresentationError: if the backend does not fit the representations.
        ConvergenceError: if Sinkhorn fails.
    """
    nu, mu, factors = align_factors(nu, mu)
    if nu.dimension != mu.dimension:
        logger.log_and_raise(DomainError, 'W2 between dimensions {} and {}.'.format(nu.dimension, mu.dimension))
    backend = _resolve_backend(nu, mu, backend)
    epsilon = error = None
    if backend == WassersteinBackend.GAUSSIAN:
        if nu.kind != MeasureKind.GAUSSIAN or mu.kind != MeasureKind.GAUSSIAN:
            logger.log_and_raise(RepresentationError, 'The gaussian backend needs two analytic Gaussians.')
        squared = gaussian_w2_squared(nu.representation, mu.representation)
    elif backend == WassersteinBackend.QUANTILE1D:
        squared = quantile_w2_squared(nu, mu)
    else:
        squared, epsilon, error = entropic_w2_squared(nu, mu)
    return WassersteinEstimate(factors * squared, backend, epsilon, error)


def wasserstein2(nu, mu, backend='auto'):
    """Quadratic Wasserstein distance W2(nu, mu).

    Args:
        nu (Measure): first measure.
        mu (Measure): second measure.
        backend (str): one of auto, gaussian, quantile1d, entropic.

    Return:
        float: W2 >= 0.
    """
    return wasserstein2_estimate(nu, mu, backend).value


@dataclass(frozen=True, eq=False)
class TransportPlan:
    """Brenier plan grad phi from source to target.

    Affine plans carry (matrix, shift); monotone 1D plans carry the map and its derivative
    on the source nodes; discrete couplings carry the coupling matrix between atoms.
    """
    source: object
    target: object
    kind: TransportKind
    cost: float
    matrix: Optional[np.ndarray] = None
    shift: Optional[np.ndarray] = None
    nodes: Optional[np.ndarray] = None
    weights: Optional[np.ndarray] = None
    map_values: Optional[np.ndarray] = None
    map_derivative: Optional[np.ndarray] = None
    coupling: Optional[np.ndarray] = None
    target_nodes: Optional[np.ndarray] = None

    def push(self, x):
        """Image of (m, n) points under the map."""
        x = np.asarray(x, dtype=float)
        if self.kind == TransportKind.AFFINE:
            return x @ self.matrix.T + self.shift
        if self.kind == TransportKind.MONOTONE1D:
            return np.interp(x[:, 0], self.nodes[:, 0], self.map_values[:, 0])[:, None]
        logger.log_and_raise(RepresentationError, 'A discrete coupling has no map.')

    def distortion(self):
        """Eigenvalues of Hess phi - Id at the quadrature nodes of the source.

        Return:
            tuple: (theta (m, n), weights (m,)).
        """
        if self.kind == TransportKind.AFFINE:
            return (np.linalg.eigvalsh(self.matrix) - 1.0)[None, :], np.ones(1)
        if self.kind == TransportKind.MONOTONE1D:
            return (self.map_derivative - 1.0)[:, None], self.weights
        logger.log_and_raise(RepresentationError, 'A discrete coupling has no Hessian.')

    def laplacian_expectation(self):
        """Integral of Delta phi against the source."""
        theta, weights = self.distortion()
        return float(np.dot(weights, np.sum(theta + 1.0, axis=1)))


def _affine_plan(source, target):
    g1, g2 = source.representation, target.representation
    root1 = _sqrtm_spd(g1.covariance)
    inv_root1 = np.linalg.inv(root1)
    matrix = inv_root1 @ _sqrtm_spd(root1 @ g2.covariance @ root1) @ inv_root1
    matrix = 0.5 * (matrix + matrix.T)
    shift = g2.mean - matrix @ g1.mean
    return TransportPlan(source, target, TransportKind.AFFINE, gaussian_w2_squared(g1, g2), matrix=matrix, shift=shift)


def _monotone_plan(source, target):
    src, tgt = _as_1d_densities(source, target)
    if src.kind != MeasureKind.GRID or tgt.kind != MeasureKind.GRID:
        logger.log_and_raise(RepresentationError, 'Monotone maps need densities, not particle clouds.')
    grid, weights = src.representation.grid, src.representation.weights
    centers = grid.axes[0]
    levels = np.cumsum(weights) - 0.5 * weights
    cells = _quantile_cells(tgt)
    index = np.clip(np.searchsorted(cells[1], levels), 0, cells[1].size - 1)
    values = np.maximum.accumulate(_quantile_at(cells, levels, index))
    tgt_grid = tgt.representation.grid
    tgt_density = np.interp(values, tgt_grid.axes[0], tgt.representation.density)
    src_density = src.representation.density
    with np.errstate(divide='ignore', invalid='ignore'):
        derivative = np.where(tgt_density > 0, src_density / tgt_density, np.inf)
    # cumulative sums lose the extreme tails to rounding
    significant = (weights > float(get_config().measures.fisher_cutoff) * weights.max()) \
        & (levels > _LEVEL_GUARD) & (levels < 1.0 - _LEVEL_GUARD)
    derivative = np.where(significant, derivative, 1.0)
    cost = quantile_w2_squared(source, target)
    return TransportPlan(
        source,
        target,
        TransportKind.MONOTONE1D,
        cost,
        nodes=centers[:, None],
        weights=np.where(significant, weights, 0.0) / weights[significant].sum(),
        map_values=values[:, None],
        map_derivative=derivative,
    )


def _discrete_plan(source, target):
    xa, a = discrete_support(source)
    xb, b = discrete_support(target)
    if xa.shape[0] * xb.shape[0] > int(get_config().functionals.emd_max_pairs):
        logger.log_and_raise(
            RepresentationError, 'Discrete coupling of {} x {} atoms is too large.'.format(xa.shape[0], xb.shape[0])
        )
    cost = ot.dist(xa, xb)
    coupling = ot.emd(a, b, cost)
    return TransportPlan(
        source,
        target,
        TransportKind.DISCRETE_COUPLING,
        float(np.sum(coupling * cost)),
        nodes=xa,
        weights=a,
        coupling=coupling,
        target_nodes=xb,
    )


def brenier_transport(source, target):
    """Optimal transport plan for the quadratic cost.

    Gaussian pairs give the affine map, 1D densities the monotone rearrangement,
    particle clouds a discrete coupling.

    Raises:
        RepresentationError: for unsupported pairs.
    """
    if source.factors > 1 or target.factors > 1:
        source, target = materialize_product(source), materialize_product(target)
    if source.dimension != target.dimension:
        logger.log_and_raise(DomainError, 'Transport between dimensions {} and {}.'.format(
            source.dimension, target.dimension
        ))
    kinds = (source.kind, target.kind)
    if kinds == (MeasureKind.GAUSSIAN, MeasureKind.GAUSSIAN):
        return _affine_plan(source, target)
    if MeasureKind.PARTICLES in kinds:
        return _discrete_plan(source, target)
    if source.dimension == 1:
        return _monotone_plan(source, target)
    logger.log_and_raise(RepresentationError, 'No Brenier map for 2D grid densities, use particle clouds.')

