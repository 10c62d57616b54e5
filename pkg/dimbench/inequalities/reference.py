# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Reference measure helpers shared by the evaluators: potential, curvature, potential moments."""

from dimbench.common.errors import DomainError, LegendreBoundaryError, PreconditionError
from dimbench.common.utils import get_config, logger
from dimbench.functionals import conjugate, expectation
from dimbench.functionals.quadrature import align_factors


def reference_potential(mu):
    """Potential V of the reference measure mu = e^{-V}.

    Raises:
        PreconditionError: if mu carries no potential.
    """
    if mu.potential is None:
        logger.log_and_raise(
            PreconditionError, 'Reference measure {} carries no potential.'.format(mu.label or mu.kind)
        )
    return mu.potential


def curvature(mu, R=None):
    """Curvature constant R with Hess V >= R Id, the declared one when R is None.

    Raises:
        DomainError: if R <= 0.
        PreconditionError: if R is not given and not declared.
    """
    if R is None:
        R = reference_potential(mu).convexity_lower
        if R is None:
            logger.log_and_raise(PreconditionError, 'Reference potential declares no convexity bound R.')
    R = float(R)
    if not R > 0:
        logger.log_and_raise(DomainError, 'Curvature constant must be > 0, got {}.'.format(R))
    return R


def is_standard_gaussian(mu):
    """Whether mu is the standard Gaussian measure, in any representation."""
    return mu.potential is not None and mu.potential.is_standard_gaussian()


def require_standard_gaussian(mu, what):
    """Raise PreconditionError unless mu is the standard Gaussian."""
    if not is_standard_gaussian(mu):
        logger.log_and_raise(PreconditionError, '{} needs the standard Gaussian reference measure.'.format(what))


def potential_moments(nu, mu):
    """nu(V) and mu(V) for the potential V of mu, summed over the product factors.

    Return:
        tuple: (nu(V), mu(V)).
    """
    nu_base, mu_base, factors = align_factors(nu, mu)
    potential = reference_potential(mu_base)
    nu_v = expectation(potential.values, nu_base, 'V')
    mu_v = expectation(potential.values, mu_base, 'V')
    return factors * nu_v, factors * mu_v


def conjugate_checked(potential, y, policy=None):
    """Legendre conjugate V*(y) with the box boundary check.

    Discrete transforms add their search spacing to the tolerance policy.

    Raises:
        LegendreBoundaryError: if a supremum is attained on the search box boundary.
    """
    result = conjugate(potential, y)
    if result.on_boundary.any():
        logger.log_and_raise(
            LegendreBoundaryError, 'Legendre supremum of {} on the search box {} for {} queries.'.format(
                potential.name, result.box, int(result.on_boundary.sum())
            )
        )
    if result.method == 'discrete' and policy is not None:
        cfg = get_config().functionals.legendre
        count = int(cfg.count_1d if potential.dimension == 1 else cfg.count_2d)
        policy.observe_spacing((result.box[1] - result.box[0]) / count)
    return result.values
