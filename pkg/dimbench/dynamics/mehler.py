# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Exact Ornstein-Uhlenbeck evolution of Gaussian measures by the Mehler formula."""

import math
from typing import NamedTuple

import numpy as np
import pandas as pd

from dimbench.common.errors import DomainError, RepresentationError
from dimbench.common.utils import logger
from dimbench.dynamics.trajectory import SolverConfig, SolverScheme, Trajectory, state_record
from dimbench.measures import MeasureKind, PotentialRegistry, build_gaussian, standard_gaussian


class FundamentalEntropy(NamedTuple):
    """Entropy of the fundamental solution with the two bounds it is compared with."""
    value: float
    log_bound: float
    rate_bound: float


def ou_evolve_gaussian(init, t):
    """Law at time t of the Ornstein-Uhlenbeck process started from a Gaussian.

    N(m, S) evolves into N(m e^{-t}, e^{-2t} S + (1 - e^{-2t}) Id).

    Args:
        init (Measure): GaussianAnalytic initial law.
        t (float): time >= 0.

    Return:
        Measure: the Gaussian law at time t.
    """
    if init.kind != MeasureKind.GAUSSIAN or init.factors != 1:
        logger.log_and_raise(RepresentationError, 'The Mehler formula needs a one factor Gaussian initial law.')
    if not t >= 0:
        logger.log_and_raise(DomainError, 'Evolution time must be >= 0, got {}.'.format(t))
    if t == 0:
        return init
    gauss = init.representation
    decay = math.exp(-t)
    covariance = decay * decay * gauss.covariance + (-math.expm1(-2.0 * t)) * np.eye(gauss.dimension)
    return build_gaussian(decay * gauss.mean, covariance, label=init.label)


def fundamental_entropy(n, t):
    """H(u_t | gamma) for the solution started from a Dirac mass at 0.

    Args:
        n (int): dimension.
        t (float): time > 0.

    Return:
        FundamentalEntropy: -(n/2)(e^{-2t} + log(1 - e^{-2t})) with the bounds
        -(n/2) log(1 - e^{-2t}) and n/(2t).
    """
    if not t > 0:
        logger.log_and_raise(DomainError, 'The fundamental solution entropy needs t > 0, got {}.'.format(t))
    log_gap = math.log(-math.expm1(-2.0 * t))
    return FundamentalEntropy(
        value=-0.5 * n * (math.exp(-2.0 * t) + log_gap),
        log_bound=-0.5 * n * log_gap,
        rate_bound=0.5 * n / t,
    )


def mehler_trajectory(init, t_grid):
    """Exact trajectory of the standard Ornstein-Uhlenbeck semigroup from a Gaussian.

    Args:
        init (Measure): GaussianAnalytic initial law.
        t_grid (array_like): increasing times, t >= 0.

    Return:
        Trajectory: states and closed form records against the standard Gaussian.
    """
    times = np.asarray(t_grid, dtype=float)
    n = init.dimension
    target = standard_gaussian(n)
    potential = PotentialRegistry.create('gaussian', dimension=n)
    states = [ou_evolve_gaussian(init, t) for t in times]
    records = pd.DataFrame([state_record(t, state, target, potential) for t, state in zip(times, states)])
    config = SolverConfig(SolverScheme.MEHLER)
    logger.debug('Mehler trajectory from %s on %d times.', init.label or 'gaussian', times.size)
    return Trajectory(potential, times, states, records, config.tag, target=target)
