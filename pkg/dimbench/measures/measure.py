# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Probability measure representations: analytic Gaussian, grid density and particle cloud."""

import dataclasses
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy import stats

from dimbench.common.enum import Enum
from dimbench.common.errors import DomainError, GridError
from dimbench.common.utils import get_config, logger
from dimbench.measures.potential import Potential


class MeasureKind(Enum):
    """The representation kinds of a measure."""
    GAUSSIAN = 'gaussian'
    GRID = 'grid'
    PARTICLES = 'particles'


def _frozen(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class GridSpec:
    """Uniform tensor grid of cell centers lower + (i + 1/2) h on the box [lower, upper]."""
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    counts: Tuple[int, ...]

    def __post_init__(self):
        """Normalize to tuples and validate the box."""
        object.__setattr__(self, 'lower', tuple(float(v) for v in np.atleast_1d(self.lower)))
        object.__setattr__(self, 'upper', tuple(float(v) for v in np.atleast_1d(self.upper)))
        object.__setattr__(self, 'counts', tuple(int(v) for v in np.atleast_1d(self.counts)))
        if not len(self.lower) == len(self.upper) == len(self.counts):
            logger.log_and_raise(GridError, 'Grid bounds and counts disagree in dimension: {}.'.format(self))
        if len(self.counts) not in (1, 2):
            logger.log_and_raise(
                GridError, 'Grids are supported in dimension 1 and 2, got {}.'.format(len(self.counts))
            )
        if any(c < 2 for c in self.counts) or any(u <= lo for lo, u in zip(self.lower, self.upper)):
            logger.log_and_raise(GridError, 'Degenerate grid: {}.'.format(self))

    @classmethod
    def symmetric(cls, half_width, count, dimension=1):
        """Box [-half_width, half_width]^n with count cells per axis."""
        return cls((-half_width, ) * dimension, (half_width, ) * dimension, (count, ) * dimension)

    @property
    def dimension(self):
        """Space dimension."""
        return len(self.counts)

    @property
    def shape(self):
        """Array shape of weights on this grid."""
        return self.counts

    @property
    def size(self):
        """Total number of cells."""
        return int(np.prod(self.counts))

    @property
    def spacing(self):
        """Cell width per axis."""
        return tuple((u - lo) / c for lo, u, c in zip(self.lower, self.upper, self.counts))

    @property
    def max_spacing(self):
        """Largest cell width."""
        return max(self.spacing)

    @property
    def cell_volume(self):
        """Volume of one cell."""
        return float(np.prod(self.spacing))

    @property
    def axes(self):
        """Cell centers along each axis."""
        return [lo + (np.arange(c) + 0.5) * h for lo, c, h in zip(self.lower, self.counts, self.spacing)]

    def edges(self, axis=0):
        """Cell edges along an axis."""
        return np.linspace(self.lower[axis], self.upper[axis], self.counts[axis] + 1)

    @property
    def points(self):
        """(size, n) array of cell centers in C order."""
        mesh = np.meshgrid(*self.axes, indexing='ij')
        return np.stack([m.ravel() for m in mesh], axis=1)

    def refined(self, factor=2):
        """Same box with factor times more cells per axis."""
        return GridSpec(self.lower, self.upper, tuple(c * factor for c in self.counts))


@dataclass(frozen=True, eq=False)
class GaussianAnalytic:
    """Gaussian N(mean, covariance) with symmetric positive definite covariance."""
    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        """Validate and freeze the parameters."""
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        cov = np.atleast_2d(np.asarray(self.covariance, dtype=float))
        if cov.shape != (mean.size, mean.size):
            logger.log_and_raise(
                DomainError, 'Covariance shape {} does not match mean size {}.'.format(cov.shape, mean.size)
            )
        if not np.allclose(cov, cov.T, rtol=1e-12, atol=1e-14):
            logger.log_and_raise(DomainError, 'Covariance is not symmetric.')
        smallest = float(np.linalg.eigvalsh(cov)[0])
        if smallest <= 0:
            logger.log_and_raise(
                DomainError, 'Covariance is not positive definite, smallest eigenvalue {}.'.format(smallest)
            )
        object.__setattr__(self, 'mean', _frozen(mean))
        object.__setattr__(self, 'covariance', _frozen(0.5 * (cov + cov.T)))

    @property
    def dimension(self):
        """Space dimension."""
        return self.mean.size

    @property
    def precision(self):
        """Inverse covariance."""
        return np.linalg.inv(self.covariance)

    @property
    def log_det(self):
        """log det covariance."""
        return float(np.linalg.slogdet(self.covariance)[1])

    @property
    def cholesky(self):
        """Lower Cholesky factor of the covariance."""
        return np.linalg.cholesky(self.covariance)

    def logpdf(self, x):
        """Log density at (m, n) points."""
        return np.atleast_1d(stats.multivariate_normal(self.mean, self.covariance).logpdf(x))

    def pdf(self, x):
        """Density at (m, n) points."""
        return np.exp(self.logpdf(x))


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Cell masses of a measure on a grid, summing to 1.

    ``tail_mass`` is the estimated mass lost outside the box before renormalization.
    """
    grid: GridSpec
    weights: np.ndarray
    tail_mass: float = 0.0

    def __post_init__(self):
        """Check shape and sign, then renormalize."""
        weights = np.asarray(self.weights, dtype=float).reshape(self.grid.shape)
        if not np.all(np.isfinite(weights)):
            logger.log_and_raise(GridError, 'Grid weights contain non finite values.')
        if np.any(weights < 0):
            logger.log_and_raise(GridError, 'Grid weights contain negative mass {}.'.format(float(weights.min())))
        total = float(weights.sum())
        if total <= 0:
            logger.log_and_raise(GridError, 'Grid weights carry no mass.')
        object.__setattr__(self, 'weights', _frozen(weights / total))

    @property
    def dimension(self):
        """Space dimension."""
        return self.grid.dimension

    @property
    def flat_weights(self):
        """Weights in C order matching ``grid.points``."""
        return self.weights.ravel()

    @property
    def density(self):
        """Density values at the cell centers."""
        return self.weights / self.grid.cell_volume


@dataclass(frozen=True, eq=False)
class ParticleCloud:
    """Weighted empirical measure on (m, n) points."""
    points: np.ndarray
    weights: Optional[np.ndarray] = None

    def __post_init__(self):
        """Validate and normalize the weights, uniform when omitted."""
        points = np.asarray(self.points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or points.shape[0] == 0:
            logger.log_and_raise(
                DomainError, 'Particle cloud needs an (m, n) array, got shape {}.'.format(points.shape)
            )
        if not np.all(np.isfinite(points)):
            logger.log_and_raise(DomainError, 'Particle positions are not finite.')
        weights = np.full(points.shape[0], 1.0 / points.shape[0]) if self.weights is None \
            else np.asarray(self.weights, dtype=float).ravel()
        if weights.shape[0] != points.shape[0] or np.any(weights < 0) or weights.sum() <= 0:
            logger.log_and_raise(DomainError, 'Particle weights must be nonnegative, one per particle, with mass.')
        object.__setattr__(self, 'points', _frozen(points))
        object.__setattr__(self, 'weights', _frozen(weights / weights.sum()))

    @property
    def dimension(self):
        """Space dimension."""
        return self.points.shape[1]

    @property
    def count(self):
        """Number of particles."""
        return self.points.shape[0]


Representation = Union[GaussianAnalytic, GridDensity, ParticleCloud]


@dataclass(frozen=True, eq=False)
class Measure:
    """A probability measure on R^n.

    A measure with ``factors`` N > 1 is the N-fold product of its representation,
    which stays the one factor measure, and ``potential`` is the one factor potential.
    """
    representation: Representation
    potential: Optional[Potential] = None
    factors: int = 1
    label: str = ''

    def __post_init__(self):
        """Check the factor count and the potential dimension."""
        if int(self.factors) < 1:
            logger.log_and_raise(DomainError, 'Product factor count must be >= 1, got {}.'.format(self.factors))
        if self.potential is not None and self.potential.dimension != self.representation.dimension:
            logger.log_and_raise(
                DomainError, 'Potential of dimension {} attached to a measure of dimension {}.'.format(
                    self.potential.dimension, self.representation.dimension
                )
            )

    @property
    def kind(self):
        """The MeasureKind of the representation."""
        if isinstance(self.representation, GaussianAnalytic):
            return MeasureKind.GAUSSIAN
        if isinstance(self.representation, GridDensity):
            return MeasureKind.GRID
        return MeasureKind.PARTICLES

    @property
    def base_dimension(self):
        """Dimension of one factor."""
        return self.representation.dimension

    @property
    def dimension(self):
        """Dimension of the full product space."""
        return self.base_dimension * self.factors

    @property
    def tail_mass(self):
        """Estimated truncated mass of one factor."""
        return getattr(self.representation, 'tail_mass', 0.0)

    def base(self):
        """The one factor measure."""
        return self if self.factors == 1 else dataclasses.replace(self, factors=1)

    def with_label(self, label):
        """Copy with another label."""
        return dataclasses.replace(self, label=label)


def default_tail_epsilon():
    """Configured truncation tolerance."""
    return float(get_config().measures.tail_epsilon)
