# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Builders and transformations of measures."""

import dataclasses
import math

import numpy as np
from scipy import linalg, special, stats

from dimbench.common.errors import DomainError, GridError, RepresentationError
from dimbench.common.utils import get_config, logger
from dimbench.measures.measure import GaussianAnalytic, GridDensity, GridSpec, Measure, MeasureKind, \
    ParticleCloud, default_tail_epsilon
from dimbench.measures.potential import PotentialRegistry, as_points


def build_gaussian(mean, covariance, label=''):
    """Build the analytic Gaussian N(mean, covariance) with its potential.

    Args:
        mean (array_like): mean vector.
        covariance (array_like): symmetric positive definite matrix.
        label (str): optional label.

    Return:
        Measure: GaussianAnalytic measure.

    Raises:
        DomainError: if the covariance is not symmetric positive definite.
    """
    representation = GaussianAnalytic(mean, covariance)
    potential = PotentialRegistry.create('gaussian', mean=representation.mean, covariance=representation.covariance)
    return Measure(representation, potential=potential, label=label)


def standard_gaussian(dimension=1):
    """Standard Gaussian measure in R^n."""
    return build_gaussian(np.zeros(dimension), np.eye(dimension), label='gamma_{}'.format(dimension))


def _log_tail_1d(potential, grid, log_mass):
    """Log of the relative tail mass beyond both ends, from the tangent line bound e^{-V(b)}/|V'(b)|."""
    ends = np.array([[grid.lower[0]], [grid.upper[0]]])
    values = potential.values(ends)
    slopes = potential.gradients(ends)[:, 0] * np.array([-1.0, 1.0])
    if np.any(slopes <= 0):
        return math.inf
    logs = -values - np.log(slopes)
    return float(special.logsumexp(logs) - log_mass)


def _log_tail_2d(potential, grid, log_mass):
    """Log of the relative tail mass beyond the four faces of the box, face by face."""
    logs = []
    for axis in range(2):
        other = 1 - axis
        centers = grid.axes[other]
        for sign, bound in ((-1.0, grid.lower[axis]), (1.0, grid.upper[axis])):
            face = np.empty((centers.size, 2))
            face[:, axis] = bound
            face[:, other] = centers
            slopes = sign * potential.gradients(face)[:, axis]
            if np.any(slopes <= 0):
                return math.inf
            logs.append(-potential.values(face) - np.log(slopes) + math.log(grid.spacing[other]))
    return float(special.logsumexp(np.concatenate(logs)) - log_mass)


def build_from_potential(potential, grid, tail_epsilon=None, label=''):
    """Discretize the density e^{-V} on a grid.

    Weights are e^{-V(x_i)} h^n at the cell centers, renormalized; the mass lost outside
    the box is estimated from the potential at the box boundary.

    Args:
        potential (Potential): the potential V, of dimension 1 or 2.
        grid (GridSpec): the grid.
        tail_epsilon (float, optional): largest accepted tail mass, the configured value if None.
        label (str): optional label.

    Return:
        Measure: GridDensity measure carrying the potential.

    Raises:
        GridError: if the tail estimate exceeds tail_epsilon or the weights vanish.
        DomainError: if V is not finite on the grid.
    """
    tail_epsilon = default_tail_epsilon() if tail_epsilon is None else tail_epsilon
    if grid.dimension != potential.dimension:
        logger.log_and_raise(
            GridError,
            'Grid of dimension {} for a potential of dimension {}.'.format(grid.dimension, potential.dimension)
        )
    values = potential.values(grid.points)
    if not np.all(np.isfinite(values)):
        logger.log_and_raise(DomainError, 'Potential {} is not finite on the grid box.'.format(potential.name))
    log_weights = -values + math.log(grid.cell_volume)
    shift = float(np.max(log_weights))
    weights = np.exp(log_weights - shift)
    total = float(weights.sum())
    if not total > 0:
        logger.log_and_raise(GridError, 'All grid weights vanish for potential {}.'.format(potential.name))
    log_mass = shift + math.log(total)
    log_tail = _log_tail_1d(potential, grid, log_mass) if grid.dimension == 1 else _log_tail_2d(
        potential, grid, log_mass
    )
    tail = math.exp(min(log_tail, 700.0))
    if tail > tail_epsilon:
        logger.log_and_raise(
            GridError, 'Grid box {}..{} too small for potential {}: tail mass estimate {:.3e} > {:.1e}.'.format(
                grid.lower, grid.upper, potential.name, tail, tail_epsilon
            )
        )
    logger.debug('Built grid density for %s on %s cells, tail mass %.3e.', potential.name, grid.size, tail)
    return Measure(GridDensity(grid, weights.reshape(grid.shape), tail_mass=tail), potential=potential, label=label)


def default_grid(m, count=None):
    """Box of mean ± k sigma per axis around a Gaussian, k from the configuration."""
    cfg = get_config().measures
    gauss = m.representation
    n = gauss.dimension
    if n not in (1, 2):
        logger.log_and_raise(GridError, 'Cannot grid a Gaussian of dimension {}.'.format(n))
    count = count or (cfg.grid_count_1d if n == 1 else cfg.grid_count_2d)
    sigma = np.sqrt(np.diag(gauss.covariance))
    half = float(cfg.gaussian_box_sigmas) * sigma
    return GridSpec(gauss.mean - half, gauss.mean + half, (count, ) * n)


def discretize(m, grid=None):
    """Represent a measure by cell masses on a grid.

    Args:
        m (Measure): GaussianAnalytic or GridDensity measure.
        grid (GridSpec, optional): target grid, a box of mean ± 12 sigma for Gaussians if None.

    Return:
        Measure: GridDensity measure with the same potential and factor count.

    Raises:
        RepresentationError: for particle clouds, or a grid measure on another grid.
    """
    if m.kind == MeasureKind.GRID:
        if grid is None or grid == m.representation.grid:
            return m
        logger.log_and_raise(RepresentationError, 'Regridding a grid density is not supported.')
    if m.kind != MeasureKind.GAUSSIAN:
        logger.log_and_raise(RepresentationError, 'Cannot discretize a {} measure.'.format(m.kind))
    gauss = m.representation
    grid = grid or default_grid(m)
    if grid.dimension != gauss.dimension:
        logger.log_and_raise(GridError, 'Grid dimension {} differs from measure dimension {}.'.format(
            grid.dimension, gauss.dimension
        ))
    if grid.dimension == 1:
        scale = math.sqrt(float(gauss.covariance[0, 0]))
        edges = grid.edges(0)
        loc = float(gauss.mean[0])
        cdf = stats.norm.cdf(edges, loc=loc, scale=scale)
        sf = stats.norm.sf(edges, loc=loc, scale=scale)
        # survival differences keep relative precision in the right tail
        weights = np.where(edges[:-1] < loc, np.diff(cdf), -np.diff(sf))
        tail = float(cdf[0] + sf[-1])
    else:
        weights = gauss.pdf(grid.points) * grid.cell_volume
        sigma = np.sqrt(np.diag(gauss.covariance))
        tail = 0.0
        for axis in range(2):
            lo, hi = stats.norm.cdf([grid.lower[axis], grid.upper[axis]], loc=gauss.mean[axis], scale=sigma[axis])
            tail += float(lo + (1.0 - hi))
    return Measure(GridDensity(grid, weights, tail_mass=max(tail, 0.0)), potential=m.potential, factors=m.factors,
                   label=m.label)


def tensor_power(m, count, materialize=False):
    """N-fold product of a measure, kept factored unless materialized.

    Args:
        m (Measure): GaussianAnalytic, or GridDensity of dimension 1.
        count (int): number of factors N.
        materialize (bool): build the explicit product representation.

    Return:
        Measure: the product measure.

    Raises:
        RepresentationError: for particle clouds or 2D grids.
        GridError: if materializing a grid of dimension above 2 is requested.
    """
    if int(count) != count or count < 1:
        logger.log_and_raise(DomainError, 'Factor count must be a positive integer, got {}.'.format(count))
    if count == 1:
        return m
    if m.kind == MeasureKind.PARTICLES or (m.kind == MeasureKind.GRID and m.base_dimension != 1):
        logger.log_and_raise(
            RepresentationError, 'Tensor powers need a Gaussian or a 1D grid density, got {} in dimension {}.'.format(
                m.kind, m.base_dimension
            )
        )
    product = dataclasses.replace(m, factors=m.factors * int(count))
    return materialize_product(product) if materialize else product


def materialize_product(m):
    """Explicit representation of a factored product measure.

    Raises:
        GridError: if the product grid would have dimension above 2.
    """
    if m.factors == 1:
        return m
    if m.kind == MeasureKind.GAUSSIAN:
        gauss = m.representation
        mean = np.tile(gauss.mean, m.factors)
        covariance = linalg.block_diag(*([gauss.covariance] * m.factors))
        return build_gaussian(mean, covariance, label=m.label)
    if m.kind == MeasureKind.GRID and m.dimension <= 2:
        grid = m.representation.grid
        product_grid = GridSpec(grid.lower * 2, grid.upper * 2, grid.counts * 2)
        weights = np.outer(m.representation.weights, m.representation.weights)
        tail = 1.0 - (1.0 - m.representation.tail_mass)**2
        return Measure(GridDensity(product_grid, weights, tail_mass=tail), label=m.label)
    logger.log_and_raise(
        GridError, 'Refusing to materialize a {}-dimensional product grid, products stay factored.'.format(m.dimension)
    )


def perturb_density(m, h, eps):
    """Reweight a measure by (1 + eps h).

    Args:
        m (Measure): Gaussian (discretized first), grid or particle measure.
        h (Callable): vectorized function with zero mean under m.
        eps (float): perturbation size.

    Return:
        Measure: the renormalized perturbed measure, m itself when eps is 0.

    Raises:
        DomainError: if h does not have zero mean.
        GridError: if 1 + eps h is negative where m carries mass.
    """
    if eps == 0:
        return m
    if m.factors != 1:
        logger.log_and_raise(RepresentationError, 'Perturb a product measure factor by factor.')
    cfg = get_config().measures
    base = discretize(m) if m.kind == MeasureKind.GAUSSIAN else m
    if base.kind == MeasureKind.GRID:
        points, weights = base.representation.grid.points, base.representation.flat_weights
    else:
        points, weights = base.representation.points, base.representation.weights
    values = np.asarray(h(points), dtype=float).reshape(-1)
    mean = float(np.dot(weights, values))
    if abs(mean) > float(cfg.mean_zero_tolerance) * (1.0 + float(np.dot(weights, np.abs(values)))):
        logger.log_and_raise(DomainError, 'Perturbation must have zero mean, got {:.3e}.'.format(mean))
    factor = 1.0 + eps * values
    significant = weights > float(cfg.fisher_cutoff) * weights.max()
    negative = (factor < 0) & significant
    if np.any(negative):
        region = points[negative]
        logger.log_and_raise(
            GridError, '1 + eps h is negative on the region {}..{}.'.format(
                region.min(axis=0).tolist(), region.max(axis=0).tolist()
            )
        )
    new_weights = weights * np.clip(factor, 0.0, None)
    if base.kind == MeasureKind.GRID:
        grid_density = base.representation
        representation = GridDensity(grid_density.grid, new_weights, tail_mass=grid_density.tail_mass)
    else:
        representation = ParticleCloud(points, new_weights)
    return Measure(representation, label=m.label)


def sample(m, count, rng):
    """Draw points from a measure.

    Args:
        m (Measure): a measure of any representation, products materialized if Gaussian.
        count (int): number of points.
        rng (np.random.Generator): random generator.

    Return:
        ParticleCloud: uniformly weighted samples.
    """
    if m.factors != 1:
        if m.kind != MeasureKind.GAUSSIAN:
            logger.log_and_raise(RepresentationError, 'Sampling factored grid products is not supported.')
        m = materialize_product(m)
    rep = m.representation
    if m.kind == MeasureKind.GAUSSIAN:
        z = rng.standard_normal((count, rep.dimension))
        points = rep.mean + z @ rep.cholesky.T
    elif m.kind == MeasureKind.GRID:
        index = rng.choice(rep.grid.size, size=count, p=rep.flat_weights)
        jitter = rng.uniform(-0.5, 0.5, size=(count, rep.dimension)) * np.asarray(rep.grid.spacing)
        points = rep.grid.points[index] + jitter
    else:
        index = rng.choice(rep.count, size=count, p=rep.weights)
        points = rep.points[index]
    return ParticleCloud(as_points(points, rep.dimension))
