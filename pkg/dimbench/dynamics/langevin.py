# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Euler-Maruyama particle simulation of the Langevin diffusion dX = sqrt(2) dB - grad V(X) dt."""

import math

import numpy as np
import pandas as pd

from dimbench.common.errors import DomainError, GridError, RepresentationError, SolverFault
from dimbench.common.utils import get_config, logger
from dimbench.dynamics.trajectory import SolverScheme, Trajectory, state_record
from dimbench.measures import GridSpec, Measure, MeasureKind, ParticleCloud, build_from_potential, build_gaussian, \
    sample


def langevin_target(potential, max_half_width=1024.0):
    """Reference measure e^{-V} for the records of a particle trajectory.

    Gaussian potentials give the analytic Gaussian; other 1D potentials a grid whose box
    doubles until the tail estimate is accepted.

    Raises:
        RepresentationError: for a non Gaussian potential in dimension above 1.
    """
    params = potential.gaussian_parameters
    if params is not None:
        return build_gaussian(params[0], params[1], label='target')
    if potential.dimension != 1:
        logger.log_and_raise(
            RepresentationError,
            'Particle trajectories of the non Gaussian potential {} are recorded in dimension 1 only.'.format(
                potential.name
            )
        )
    half_width = 4.0
    count = int(get_config().measures.grid_count_1d)
    while half_width <= max_half_width:
        try:
            return build_from_potential(potential, GridSpec.symmetric(half_width, count), label='target')
        except GridError:
            half_width *= 2.0
    logger.log_and_raise(GridError, 'No box up to half width {} holds the potential {}.'.format(
        max_half_width, potential.name
    ))


def langevin_simulate(potential, init, t_grid, config, seed):
    """Simulate the Langevin diffusion with a fixed seed.

    Particles of init are used as they are; other laws are sampled with
    config.particle_count points. Each interval of t_grid is split into
    ceil(dt_interval / dt) equal steps.

    Args:
        potential (Potential): the potential V.
        init (Measure): initial law.
        t_grid (array_like): increasing record times, the first one carrying init.
        config (SolverConfig): langevin_em configuration.
        seed (int): seed of the random generator.

    Return:
        Trajectory: the particle clouds with their records.

    Raises:
        SolverFault: if a particle leaves the overflow guard, with the time of blow-up.
    """
    if config.scheme != SolverScheme.LANGEVIN_EM:
        logger.log_and_raise(DomainError, 'langevin_simulate needs a langevin_em configuration, got {}.'.format(
            config.scheme
        ))
    if init.dimension != potential.dimension:
        logger.log_and_raise(DomainError, 'Initial law of dimension {} for a potential of dimension {}.'.format(
            init.dimension, potential.dimension
        ))
    times = np.asarray(t_grid, dtype=float)
    if times.ndim != 1 or times.size == 0 or times[0] < 0 or np.any(np.diff(times) <= 0):
        logger.log_and_raise(DomainError, 'Record times must be nonnegative and strictly increasing.')
    rng = np.random.default_rng(seed)
    if init.kind == MeasureKind.PARTICLES and init.factors == 1:
        cloud = init.representation
    else:
        cloud = sample(init, config.particle_count, rng)
    x, weights = np.array(cloud.points), cloud.weights
    guard = float(get_config().dynamics.overflow_guard)
    target = langevin_target(potential)

    states, rows = list(), list()
    for index, t in enumerate(times):
        if index > 0:
            span = t - times[index - 1]
            steps = max(1, math.ceil(span / config.dt - 1e-12))
            dt = span / steps
            noise = math.sqrt(2.0 * dt)
            for step in range(steps):
                with np.errstate(over='ignore', invalid='ignore'):
                    x = x - dt * potential.gradients(x) + noise * rng.standard_normal(x.shape)
                if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > guard:
                    logger.log_and_raise(
                        SolverFault, 'Particles exceeded the overflow guard {:.1e} at t = {:.6g}.'.format(
                            guard, times[index - 1] + (step + 1) * dt
                        )
                    )
        state = Measure(ParticleCloud(x, weights), label=init.label)
        states.append(state)
        rows.append(state_record(t, state, target, potential))
    logger.info('Langevin %s with seed %s: %d particles up to t = %g.', config.tag, seed, x.shape[0], times[-1])
    return Trajectory(potential, times, states, pd.DataFrame(rows), config.tag, seed=seed, target=target)
