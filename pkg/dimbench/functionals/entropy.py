# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Relative entropy, Lebesgue entropy and relative Fisher information."""

import math

import numpy as np

from dimbench.common.errors import RepresentationError
from dimbench.common.utils import get_config, logger
from dimbench.functionals.quadrature import align_factors, floored_log, grid_pair, relative_score
from dimbench.measures import MeasureKind


def _gaussian_pair(nu, mu):
    return nu.kind == MeasureKind.GAUSSIAN and mu.kind == MeasureKind.GAUSSIAN


def gaussian_relative_entropy(g1, g2):
    """H(N(m1, S1) | N(m2, S2)) in closed form."""
    n = g1.dimension
    precision = g2.precision
    diff = g1.mean - g2.mean
    _, logdet = np.linalg.slogdet(precision @ g1.covariance)
    return 0.5 * float(np.trace(precision @ g1.covariance) - n + diff @ precision @ diff - logdet)


def gaussian_fisher_information(g1, g2):
    """I(N(m1, S1) | N(m2, S2)) = tr(A S1 A) + |S2^{-1}(m1 - m2)|^2 with A = S2^{-1} - S1^{-1}."""
    a = g2.precision - g1.precision
    shift = g2.precision @ (g1.mean - g2.mean)
    return float(np.trace(a @ g1.covariance @ a) + shift @ shift)


def relative_entropy(nu, mu):
    """Relative entropy H(nu|mu) in nats.

    Gaussian pairs use the closed form, other pairs quadrature of w log(w/w') on a common grid.
    Products with N factors on both sides give N times the one factor value.

    Args:
        nu (Measure): the first measure.
        mu (Measure): the reference measure.

    Return:
        float: H(nu|mu) >= 0.

    Raises:
        AbsoluteContinuityError: if nu charges a region where mu vanishes.
        RepresentationError: for particle clouds.
    """
    nu, mu, factors = align_factors(nu, mu)
    if _gaussian_pair(nu, mu):
        value = gaussian_relative_entropy(nu.representation, mu.representation)
    else:
        _, w_nu, w_mu = grid_pair(nu, mu)
        charged = w_nu > 0
        value = float(np.sum(w_nu[charged] * (np.log(w_nu[charged]) - floored_log(w_mu[charged]))))
        if value < -float(get_config().functionals.negative_entropy_tolerance):
            logger.warning('Relative entropy quadrature gave %.3e < 0, reported as 0.', value)
    return factors * max(value, 0.0)


def entropy_dx(mu):
    """Entropy of the density with respect to Lebesgue measure, the integral of rho log rho.

    Raises:
        RepresentationError: for particle clouds.
    """
    base = mu.base()
    rep = base.representation
    if base.kind == MeasureKind.GAUSSIAN:
        value = -0.5 * rep.dimension * math.log(2.0 * math.pi * math.e) - 0.5 * rep.log_det
    elif base.kind == MeasureKind.GRID:
        weights = rep.weights[rep.weights > 0]
        value = float(np.sum(weights * (np.log(weights) - math.log(rep.grid.cell_volume))))
    else:
        logger.log_and_raise(RepresentationError, 'A particle cloud has no density, Ent_dx is undefined.')
    return mu.factors * value


def fisher_information(nu, mu, method='auto'):
    """Relative Fisher information I(nu|mu), the integral of |grad log f|^2 dnu with f = dnu/dmu.

    Args:
        nu (Measure): the first measure.
        mu (Measure): the reference measure.
        method (str): 'finite_difference' differentiates log f on the grid, 'analytic'
            uses grad V_mu - grad V_nu from both potentials; 'auto' picks the closed
            form for Gaussian pairs, then the potentials when both are declared,
            otherwise finite differences.

    Return:
        float: I(nu|mu) >= 0.
    """
    nu, mu, factors = align_factors(nu, mu)
    if _gaussian_pair(nu, mu) and method != 'finite_difference':
        return factors * gaussian_fisher_information(nu.representation, mu.representation)
    _, weights, score = relative_score(nu, mu, method)
    return factors * float(np.dot(weights, np.sum(score * score, axis=1)))
