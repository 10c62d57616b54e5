# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Solver configuration and trajectories of Fokker-Planck solutions."""

import hashlib
import json
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import pandas as pd

from dimbench.common.enum import Enum
from dimbench.common.errors import DomainError
from dimbench.common.utils import get_config, logger
from dimbench.functionals import entropy_dx, expectation, fisher_information, relative_entropy, second_moment, \
    wasserstein2
from dimbench.measures import GridSpec, Measure, MeasureKind, Potential, build_gaussian

CSV_COLUMNS = ['t', 'H', 'I', 'W2', 'second_moment', 'Ent_dx']


class SolverScheme(Enum):
    """The Enum class representing the time evolution schemes."""
    MEHLER = 'mehler'
    GRID_FV = 'grid_fv'
    LANGEVIN_EM = 'langevin_em'


def stable_time_step(grid, potential):
    """Largest explicit finite volume step cfl·h^2/(2 + h max|V'|) on a 1D grid."""
    h = grid.max_spacing
    slope = float(np.max(np.abs(potential.gradients(grid.points))))
    return float(get_config().dynamics.cfl_factor) * h * h / (2.0 + h * slope)


@dataclass(frozen=True)
class SolverConfig:
    """Settings of one time evolution.

    ``theta`` selects explicit (0) or backward Euler (1) finite volume stepping.
    """
    scheme: SolverScheme
    dt: Optional[float] = None
    grid: Optional[GridSpec] = None
    particle_count: Optional[int] = None
    theta: int = 0

    def __post_init__(self):
        """Validate the fields needed by the scheme."""
        object.__setattr__(self, 'scheme', SolverScheme(str(self.scheme)))
        if self.dt is not None and not self.dt > 0:
            logger.log_and_raise(DomainError, 'Time step must be > 0, got {}.'.format(self.dt))
        if self.theta not in (0, 1):
            logger.log_and_raise(DomainError, 'theta must be 0 (explicit) or 1 (implicit), got {}.'.format(self.theta))
        if self.scheme == SolverScheme.GRID_FV:
            if self.grid is None or self.grid.dimension != 1:
                logger.log_and_raise(DomainError, 'The grid_fv scheme needs a 1D grid.')
            if self.dt is None:
                logger.log_and_raise(DomainError, 'The grid_fv scheme needs a time step.')
        if self.scheme == SolverScheme.LANGEVIN_EM:
            minimum = int(get_config().dynamics.min_particles)
            if self.dt is None or self.particle_count is None or self.particle_count < minimum:
                logger.log_and_raise(
                    DomainError, 'The langevin_em scheme needs a time step and at least {} particles, got {}.'.format(
                        minimum, self.particle_count
                    )
                )

    @classmethod
    def stable(cls, grid, potential, safety=1.0, theta=0):
        """Finite volume configuration with the stable explicit step scaled by safety."""
        return cls(SolverScheme.GRID_FV, dt=safety * stable_time_step(grid, potential), grid=grid, theta=theta)

    @property
    def tag(self):
        """Scheme name with the short configuration hash."""
        return '{}-{}'.format(self.scheme, self.config_hash)

    @property
    def config_hash(self):
        """Short stable hash of the configuration."""
        payload = {
            'scheme': str(self.scheme),
            'dt': self.dt,
            'grid': None if self.grid is None else [self.grid.lower, self.grid.upper, self.grid.counts],
            'particle_count': self.particle_count,
            'theta': self.theta,
        }
        return hashlib.sha1(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:12]


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States of a solution at increasing times with the functionals recorded against e^{-V}.

    ``records`` holds the columns t, H, I, W2, second_moment and Ent_dx, plus the moments
    grad_V_moment and laplacian_V_moment used by the audits. Functionals that a
    representation cannot provide are NaN.
    """
    potential: Potential
    times: np.ndarray
    states: List[Measure]
    records: pd.DataFrame
    solver: str
    seed: Optional[int] = None
    target: Optional[Measure] = field(default=None)

    def __post_init__(self):
        """Check the time grid."""
        times = np.asarray(self.times, dtype=float)
        if times.ndim != 1 or times.size == 0 or np.any(np.diff(times) <= 0):
            logger.log_and_raise(DomainError, 'Trajectory times must be strictly increasing.')
        if len(self.states) != times.size or len(self.records) != times.size:
            logger.log_and_raise(DomainError, 'Trajectory has {} times, {} states and {} records.'.format(
                times.size, len(self.states), len(self.records)
            ))
        object.__setattr__(self, 'times', times)

    @property
    def dimension(self):
        """Space dimension."""
        return self.potential.dimension

    def column(self, name):
        """One record column as an array.

        Raises:
            DomainError: if the column is missing.
        """
        if name not in self.records.columns:
            logger.log_and_raise(DomainError, 'Trajectory {} has no record {}.'.format(self.solver, name))
        return self.records[name].to_numpy(dtype=float)

    def to_csv(self, path):
        """Write the records with 17 significant digits.

        Args:
            path (str or Path): output file.
        """
        self.records[CSV_COLUMNS].to_csv(path, index=False, float_format=get_config().executor.float_format)


def _gaussian_fit(state):
    """Moment matched Gaussian of a particle cloud."""
    rep = state.representation
    mean = rep.weights @ rep.points
    centered = rep.points - mean
    covariance = (centered * rep.weights[:, None]).T @ centered
    return build_gaussian(mean, np.atleast_2d(covariance))


def state_record(t, state, target, potential):
    """Functionals of one state against the target measure e^{-V}.

    Particle clouds get H, I and Ent_dx as NaN; their W2 uses the moment matched Gaussian
    against a Gaussian target and the quantile coupling in 1D.

    Return:
        dict: one records row.
    """
    row = {'t': float(t)}
    particles = state.kind == MeasureKind.PARTICLES
    if particles:
        row.update({'H': np.nan, 'I': np.nan, 'Ent_dx': np.nan})
        if target.kind == MeasureKind.GAUSSIAN and state.dimension > 1:
            row['W2'] = wasserstein2(_gaussian_fit(state), target)
        else:
            row['W2'] = wasserstein2(state, target)
    else:
        row['H'] = relative_entropy(state, target)
        row['I'] = fisher_information(state, target)
        row['W2'] = wasserstein2(state, target)
        row['Ent_dx'] = entropy_dx(state)
    row['second_moment'] = second_moment(state)
    row['grad_V_moment'] = expectation(lambda x: np.sum(potential.gradients(x)**2, axis=1), state, '|grad V|^2')
    row['laplacian_V_moment'] = expectation(potential.laplacians, state, 'Delta V')
    return row
