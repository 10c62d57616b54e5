# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Deficit functions delta_n and Lambda_n, and the core LSI and Talagrand deficits."""

from typing import NamedTuple

import numpy as np

from dimbench.common.errors import DomainError
from dimbench.common.utils import logger
from dimbench.functionals import fisher_information, relative_entropy, wasserstein2_estimate

# below this |x/n| the Taylor series is more accurate than expm1/log1p differences
_SERIES_CUTOFF = 1e-3


def _check_dimension(n):
    if int(n) != n or n < 1:
        logger.log_and_raise(DomainError, 'Dimension must be a positive integer, got {}.'.format(n))


def _scalar_or_array(values, x):
    return float(values) if np.ndim(x) == 0 else values


def deficit_delta(n, x):
    """delta_n(x) = n [e^{-x/n} - 1 + x/n], nonnegative and convex.

    Args:
        n (int): dimension.
        x (float or array_like): argument.

    Return:
        float or np.ndarray: delta_n(x), +inf when e^{-x/n} overflows.
    """
    _check_dimension(n)
    u = np.asarray(x, dtype=float) / n
    with np.errstate(over='ignore', invalid='ignore'):
        direct = np.expm1(-u) + u
    series = u * u * (1.0 / 2.0 - u * (1.0 / 6.0 - u * (1.0 / 24.0 - u * (1.0 / 120.0 - u / 720.0))))
    values = n * np.where(np.abs(u) < _SERIES_CUTOFF, series, direct)
    return _scalar_or_array(np.maximum(values, 0.0), x)


def deficit_lambda(n, x):
    """Lambda_n(x) = x - n log(1 + x/n) for x > -n.

    Args:
        n (int): dimension.
        x (float or array_like): argument.

    Return:
        float or np.ndarray: Lambda_n(x).

    Raises:
        DomainError: if some x <= -n.
    """
    _check_dimension(n)
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(x_arr)) or np.any(x_arr <= -n):
        logger.log_and_raise(DomainError, 'Lambda_{} is defined for x > {}, got {}.'.format(n, -n, x))
    u = x_arr / n
    direct = u - np.log1p(u)
    series = u * u * (1.0 / 2.0 - u * (1.0 / 3.0 - u * (1.0 / 4.0 - u * (1.0 / 5.0 - u / 6.0))))
    values = n * np.where(np.abs(u) < _SERIES_CUTOFF, series, direct)
    return _scalar_or_array(np.maximum(values, 0.0), x)


class CoreDeficits(NamedTuple):
    """LSI and Talagrand deficits with the functionals they are built from."""
    delta_lsi: float
    delta_tal: float
    entropy: float
    fisher: float
    w2_squared: float


def core_deficits(nu, mu, R):
    """delta_LSI = I/2 - R H and delta_Tal = H - (R/2) W2^2.

    Args:
        nu (Measure): the first measure.
        mu (Measure): the reference measure.
        R (float): curvature constant.

    Return:
        CoreDeficits: both deficits with H, I and W2^2.
    """
    entropy = relative_entropy(nu, mu)
    fisher = fisher_information(nu, mu)
    w2_squared = wasserstein2_estimate(nu, mu).squared
    return CoreDeficits(
        delta_lsi=0.5 * fisher - R * entropy,
        delta_tal=entropy - 0.5 * R * w2_squared,
        entropy=entropy,
        fisher=fisher,
        w2_squared=w2_squared,
    )
