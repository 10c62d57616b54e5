# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Entropy profile along the displacement geodesic between two measures."""

from dataclasses import dataclass

import numpy as np

from dimbench.common.errors import DomainError
from dimbench.common.utils import get_config, logger
from dimbench.functionals.entropy import entropy_dx
from dimbench.functionals.transport import TransportPlan, brenier_transport
from dimbench.measures import materialize_product

MIN_S_COUNT = 33


@dataclass(frozen=True, eq=False)
class GeodesicProfile:
    """psi(s) = Ent_dx(mu^s) on a uniform s-grid of [0, 1].

    ``psi_prime`` and ``psi_second`` are the change of variables derivatives; the
    ``*_fd`` arrays are second order central differences of ``psi`` on the s-grid,
    one-sided of the same order at the two end nodes.
    """
    s_grid: np.ndarray
    psi: np.ndarray
    psi_prime: np.ndarray
    psi_second: np.ndarray
    psi_prime_fd: np.ndarray
    psi_second_fd: np.ndarray
    plan: TransportPlan
    dimension: int
    endpoint_error: float

    @property
    def step(self):
        """Spacing of the s-grid."""
        return float(self.s_grid[1] - self.s_grid[0])


def second_difference(values, step):
    """Three point second differences, with the four point one-sided rule at both ends."""
    values = np.asarray(values, dtype=float)
    out = np.empty_like(values)
    out[1:-1] = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / step**2
    out[0] = (2.0 * values[0] - 5.0 * values[1] + 4.0 * values[2] - values[3]) / step**2
    out[-1] = (2.0 * values[-1] - 5.0 * values[-2] + 4.0 * values[-3] - values[-4]) / step**2
    return out


def geodesic_profile(m0, m1, s_count=None):
    """Entropy along mu^s = ((1 - s) Id + s grad phi) # m0.

    psi(s) = psi(0) - integral of log det(Id + s (Hess phi - Id)) dm0, exact for affine
    and 1D monotone maps.

    Args:
        m0 (Measure): source, a Gaussian or a 1D density.
        m1 (Measure): target.
        s_count (int, optional): number of s nodes, the configured count if None.

    Return:
        GeodesicProfile: the profile.

    Raises:
        DomainError: if s_count is below MIN_S_COUNT or det(Id + s (Hess phi - Id)) <= 0 at some node.
    """
    s_count = int(s_count or get_config().functionals.geodesic.s_count)
    if s_count < MIN_S_COUNT:
        logger.log_and_raise(
            DomainError, 'A geodesic profile needs at least {} nodes, got {}.'.format(MIN_S_COUNT, s_count)
        )
    m0, m1 = materialize_product(m0), materialize_product(m1)
    plan = brenier_transport(m0, m1)
    theta, weights = plan.distortion()
    s = np.linspace(0.0, 1.0, s_count)
    jacobian = 1.0 + s[:, None, None] * theta[None, :, :]
    if np.any(jacobian[:, weights > 0] <= 0) or not np.all(np.isfinite(jacobian[:, weights > 0])):
        logger.log_and_raise(DomainError, 'Transport plan is invalid: det(Id + s (Hess phi - Id)) <= 0.')
    active = weights > 0
    jacobian, theta, weights = jacobian[:, active], theta[active], weights[active]
    psi0 = entropy_dx(m0)
    psi = psi0 - np.sum(weights[None, :] * np.sum(np.log(jacobian), axis=2), axis=1)
    ratio = theta[None, :, :] / jacobian
    psi_prime = -np.sum(weights[None, :] * np.sum(ratio, axis=2), axis=1)
    psi_second = np.sum(weights[None, :] * np.sum(ratio * ratio, axis=2), axis=1)
    step = s[1] - s[0]
    psi_prime_fd = np.gradient(psi, step, edge_order=2)
    psi_second_fd = second_difference(psi, step)
    endpoint_error = abs(float(psi[-1]) - entropy_dx(m1))
    logger.debug('Geodesic profile on %d nodes, endpoint error %.3e.', s_count, endpoint_error)
    return GeodesicProfile(
        s_grid=s,
        psi=psi,
        psi_prime=psi_prime,
        psi_second=psi_second,
        psi_prime_fd=psi_prime_fd,
        psi_second_fd=psi_second_fd,
        plan=plan,
        dimension=m0.dimension,
        endpoint_error=endpoint_error,
    )
