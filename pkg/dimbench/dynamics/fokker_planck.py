# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Finite volume solver of the Fokker-Planck equation du/dt = Delta u + div(u grad V) in 1D."""

import math

import numpy as np
import pandas as pd
from scipy import linalg

from dimbench.common.errors import DomainError, RepresentationError, SolverFault, StabilityError
from dimbench.common.utils import get_config, logger
from dimbench.dynamics.mehler import mehler_trajectory
from dimbench.dynamics.trajectory import SolverScheme, Trajectory, stable_time_step, state_record
from dimbench.measures import GridDensity, Measure, MeasureKind, build_from_potential, discretize


def bernoulli(x):
    """B(x) = x / (e^x - 1) with B(0) = 1."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-10
    with np.errstate(over='ignore', invalid='ignore'):
        value = x / np.expm1(np.where(small, 1.0, x))
    return np.where(small, 1.0 - 0.5 * x, value)


def generator_bands(potential, grid):
    """Exponentially fitted finite volume generator in banded form.

    The flux from cell k to cell k+1 is (B(dV) w_k - B(-dV) w_{k+1}) / h^2 with
    dV = V_{k+1} - V_k and no flux through the box walls, so the columns sum to zero
    and the cell masses of e^{-V} are the discrete equilibrium.

    Return:
        np.ndarray: (3, m) bands (upper, diagonal, lower) as used by scipy.linalg.solve_banded.
    """
    h = grid.max_spacing
    jump = np.diff(potential.values(grid.points))
    # rightward rate B(dV), leftward rate B(-dV); B(-x) = e^x B(x) balances e^{-V}
    rightward, leftward = bernoulli(jump) / (h * h), bernoulli(-jump) / (h * h)
    bands = np.zeros((3, grid.size))
    bands[0, 1:] = leftward
    bands[2, :-1] = rightward
    bands[1, :-1] -= rightward
    bands[1, 1:] -= leftward
    return bands


def _apply(bands, w):
    """Product of the banded generator with the weights."""
    out = bands[1] * w
    out[:-1] += bands[0, 1:] * w[1:]
    out[1:] += bands[2, :-1] * w[:-1]
    return out


def _initial_weights(init, grid):
    if init.factors != 1 or init.dimension != 1:
        logger.log_and_raise(RepresentationError, 'fp_solve evolves one dimensional measures.')
    if init.kind == MeasureKind.PARTICLES:
        logger.log_and_raise(RepresentationError, 'fp_solve needs a grid or Gaussian initial law, got particles.')
    return np.array(discretize(init, grid).representation.flat_weights)


def fp_solve(potential, init, t_grid, config):
    """Evolve a 1D density under the Fokker-Planck equation with potential V.

    The mehler scheme returns the exact trajectory of a Gaussian init for the standard
    Gaussian potential in any dimension. Explicit stepping (theta 0) refuses time steps
    above the stable one; backward Euler (theta 1) solves a tridiagonal
    system per step. Each interval of t_grid is split into ceil(dt_interval / dt) equal steps.

    Args:
        potential (Potential): one dimensional potential V.
        init (Measure): grid density on config.grid, or a Gaussian discretized on it.
        t_grid (array_like): increasing record times, the first one carrying init.
        config (SolverConfig): grid_fv configuration.

    Return:
        Trajectory: the states with their records against the discretized e^{-V} and a mass column.

    Raises:
        StabilityError: if an explicit step exceeds the stable step, reported in the message.
        SolverFault: if a weight falls below the negative weight tolerance.
    """
    if config.scheme == SolverScheme.MEHLER:
        if not potential.is_standard_gaussian():
            logger.log_and_raise(DomainError, 'The mehler scheme evolves the standard Gaussian potential only.')
        return mehler_trajectory(init, t_grid)
    if config.scheme != SolverScheme.GRID_FV:
        logger.log_and_raise(DomainError, 'fp_solve needs a grid_fv configuration, got {}.'.format(config.scheme))
    if potential.dimension != 1:
        logger.log_and_raise(DomainError, 'fp_solve evolves one dimensional potentials.')
    grid = config.grid
    times = np.asarray(t_grid, dtype=float)
    if times.ndim != 1 or times.size == 0 or times[0] < 0 or np.any(np.diff(times) <= 0):
        logger.log_and_raise(DomainError, 'Record times must be nonnegative and strictly increasing.')
    if config.theta == 0:
        required = stable_time_step(grid, potential)
        if config.dt > required:
            logger.log_and_raise(
                StabilityError, 'Explicit time step {:.6g} above the stable step, required dt <= {:.6g}.'.format(
                    config.dt, required
                )
            )
    negative_tolerance = float(get_config().dynamics.negative_weight_tolerance)
    target = build_from_potential(potential, grid)
    bands = generator_bands(potential, grid)
    w = _initial_weights(init, grid)

    def record(t):
        state = Measure(GridDensity(grid, np.clip(w, 0.0, None)), label=init.label)
        row = state_record(t, state, target, potential)
        row['mass'] = float(w.sum())
        return state, row

    states, rows = list(), list()
    for index, t in enumerate(times):
        if index > 0:
            span = t - times[index - 1]
            steps = max(1, math.ceil(span / config.dt - 1e-12))
            dt = span / steps
            system = -dt * bands
            system[1] += 1.0
            for step in range(steps):
                w = w + dt * _apply(bands, w) if config.theta == 0 else linalg.solve_banded((1, 1), system, w)
                smallest = float(w.min())
                if smallest < -negative_tolerance:
                    logger.log_and_raise(
                        SolverFault, 'Negative weight {:.3e} at t = {:.6g}.'.format(
                            smallest, times[index - 1] + (step + 1) * dt
                        )
                    )
                if smallest < 0:
                    w = np.clip(w, 0.0, None)
        state, row = record(t)
        states.append(state)
        rows.append(row)
    logger.info('Fokker-Planck %s: %d records up to t = %g, final mass %.15f.', config.tag, times.size, times[-1],
                rows[-1]['mass'])
    return Trajectory(potential, times, states, pd.DataFrame(rows), config.tag, target=target)
