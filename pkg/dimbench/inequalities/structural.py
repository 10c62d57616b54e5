# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Structural lemmas: Monge-Ampère trace bound, geodesic convexity of the entropy, convexity functional."""

import math

import numpy as np
from scipy import integrate

from dimbench.common.errors import DomainError
from dimbench.common.utils import get_config, logger
from dimbench.functionals import TransportKind, brenier_transport, entropy_dx, geodesic_profile
from dimbench.functionals.geodesic import MIN_S_COUNT, second_difference
from dimbench.inequalities.context import InequalityId, ItemCategory
from dimbench.inequalities.reference import conjugate_checked
from dimbench.inequalities.registry import InequalityRegistry
from dimbench.inequalities.result import AuditReport, InequalityEvaluation
from dimbench.inequalities.tolerance import TolerancePolicy
from dimbench.measures import Potential


@InequalityRegistry.register(InequalityId.TRACE_BOUND.value, category=ItemCategory.STRUCTURAL)
def check_trace_bound(m1, m2, tolerance=None):
    """Trace bound n exp((Ent_dx(m1) - Ent_dx(m2))/n) <= integral of Delta phi dm1.

    grad phi is the Brenier map from m1 to m2: tr A for Gaussians, the derivative of the
    monotone rearrangement in 1D.

    Return:
        InequalityEvaluation: the evaluation.
    """
    n = m1.dimension
    plan = brenier_transport(m1, m2)
    policy = TolerancePolicy(tolerance)
    if plan.kind != TransportKind.AFFINE:
        policy.observe(m1, m2)
    entropy_1, entropy_2 = entropy_dx(m1), entropy_dx(m2)
    lhs = n * math.exp((entropy_1 - entropy_2) / n)
    rhs = plan.laplacian_expectation()
    evaluation = InequalityEvaluation(InequalityId.TRACE_BOUND, lhs, rhs, policy.tolerance(lhs, rhs))
    evaluation.add_intermediate('Ent_dx_source', entropy_1)
    evaluation.add_intermediate('Ent_dx_target', entropy_2)
    evaluation.add_flag('plan_{}'.format(plan.kind))
    evaluation.add_flag('evidence_{}'.format(policy.evidence))
    return evaluation


def check_geodesic_convexity(profile, tolerance=None):
    """Three equivalent forms of the dimensional convexity of psi along a geodesic.

    Checks second_derivative psi'^2/n <= psi'' on interior nodes, with psi'' the three point
    second difference of psi and a tolerance scaled by the squared s-step, tangent
    n e^{(psi(r) - psi(s))/n} <= n - psi'(r)(s - r) on ordered node pairs and sinh
    4n sinh^2((psi(s) - psi(r))/(2n)) <= (psi'(s) - psi'(r))(s - r) on unordered pairs.

    Args:
        profile (GeodesicProfile): the entropy profile.
        tolerance (float, optional): tolerance override.

    Return:
        AuditReport: one row per node or node pair.
    """
    n = profile.dimension
    psi, prime, s = profile.psi, profile.psi_prime, profile.s_grid
    if s.size < MIN_S_COUNT:
        logger.log_and_raise(
            DomainError, 'Geodesic convexity needs at least {} s nodes, got {}.'.format(MIN_S_COUNT, s.size)
        )
    second = second_difference(psi, profile.step)
    policy = TolerancePolicy(tolerance)
    if profile.plan.kind != TransportKind.AFFINE:
        policy.observe(profile.plan.source, profile.plan.target)
    difference_policy = TolerancePolicy(tolerance).observe_spacing(max(profile.step, policy.spacing))
    rows = list()

    def add(check, lhs, rhs, r, s_value, resolved=policy):
        rows.append({
            'check': check,
            'lhs': lhs,
            'rhs': rhs,
            'tolerance': resolved.tolerance(lhs, rhs),
            'r': r,
            's': s_value,
        })

    for i in range(1, s.size - 1):
        add('second_derivative', prime[i]**2 / n, second[i], s[i], s[i], difference_policy)
    for i in range(s.size):
        for j in range(s.size):
            if i == j:
                continue
            add('tangent', n * math.exp((psi[i] - psi[j]) / n), n - prime[i] * (s[j] - s[i]), s[i], s[j])
            if i < j:
                lhs = 4.0 * n * math.sinh((psi[j] - psi[i]) / (2.0 * n))**2
                add('sinh', lhs, (prime[j] - prime[i]) * (s[j] - s[i]), s[i], s[j])
    report = AuditReport(InequalityId.GEODESIC_CONVEXITY, rows)
    report.add_intermediate('endpoint_error', profile.endpoint_error)
    report.add_intermediate('s_count', s.size)
    report.add_intermediate('fd_second_derivative_error', float(np.max(np.abs(second - profile.psi_second)[1:-1])))
    report.add_flag('evidence_{}'.format(policy.evidence))
    return report


@InequalityRegistry.register(InequalityId.GEODESIC_CONVEXITY.value, category=ItemCategory.STRUCTURAL)
def evaluate_geodesic_convexity(m0, m1, s_count=None, tolerance=None):
    """Geodesic convexity checks on the entropy profile from m0 to m1."""
    return check_geodesic_convexity(geodesic_profile(m0, m1, s_count), tolerance)


def exponential_profile(potential, n):
    """W = e^{V/n} as a potential, with grad W = W grad V / n."""
    def value(x):
        with np.errstate(over='ignore'):
            return np.exp(potential.values(x) / n)

    def gradient(x):
        return value(x)[:, None] * potential.gradients(x) / n

    return Potential(dimension=potential.dimension, value=value, gradient=gradient,
                     name='exp_{}'.format(potential.name))


def _magnitude_groups(y):
    """Index groups of queries with |y| in [4^(k-1), 4^k), small queries together."""
    exponent = np.ceil(np.log(np.maximum(np.abs(y), 1.0)) / math.log(4.0)).astype(int)
    return [np.flatnonzero(exponent == k) for k in np.unique(exponent)]


def _normalizer(values, dx, n):
    """c = (integral of values^{-n})^{1/n}, so that c·values has integral of its -n power 1."""
    with np.errstate(over='ignore', divide='ignore'):
        mass = integrate.trapezoid(values**(-float(n)) * dx)
    return mass**(1.0 / n)


def _convexity_functional(g, W, n, policy=None):
    """Quadrature of the integral of W*(grad g)/g^{n+1} dx, nonnegative for admissible g, W.

    g and W are first renormalized so that the integrals of g^{-n} and W^{-n} are 1,
    with the normalized conjugate c_W W*(y/c_W). The real line is mapped by x = sinh(u)
    and nodes where dx/g^{n+1} falls below a cutoff relative to its maximum are dropped.

    Args:
        g (Potential): positive one dimensional function with its gradient.
        W (Potential): positive one dimensional function.
        n (int): exponent, the space dimension 1.
        policy (TolerancePolicy, optional): records the discrete Legendre spacing.

    Return:
        tuple: (value, c_g, c_W).

    Raises:
        DomainError: outside one dimension, or if g or W is not positive.
        LegendreBoundaryError: if a conjugate supremum hits its search box.
    """
    if n != 1 or g.dimension != 1 or W.dimension != 1:
        logger.log_and_raise(DomainError, 'The convexity functional is evaluated in dimension 1, got n={}.'.format(n))
    cfg = get_config().inequalities
    half_range = float(cfg.convexity_half_range)
    u = np.linspace(-half_range, half_range, int(cfg.convexity_count))
    x = np.sinh(u)[:, None]
    dx = np.cosh(u) * (u[1] - u[0])
    g_values, w_values = g.values(x), W.values(x)
    if np.any(g_values <= 0) or np.any(w_values <= 0):
        logger.log_and_raise(DomainError, 'The convexity functional needs positive g and W.')
    c_g, c_w = _normalizer(g_values, dx, n), _normalizer(w_values, dx, n)
    with np.errstate(over='ignore', under='ignore'):
        weights = dx / (c_g * g_values)**(n + 1)
    keep = np.isfinite(weights) & (weights > float(cfg.convexity_cutoff) * np.nanmax(weights))
    y = c_g * g.gradients(x[keep])[:, 0] / c_w
    conjugates = np.empty(y.size)
    for group in _magnitude_groups(y):
        conjugates[group] = c_w * conjugate_checked(W, y[group][:, None], policy)
    value = float(np.sum(weights[keep] * conjugates))
    logger.debug('Convexity functional %s / %s: %.6e on %d nodes, c_g %.6g, c_W %.6g.', g.name, W.name, value,
                 int(keep.sum()), c_g, c_w)
    return value, c_g, c_w


def check_convexity_functional(g, W, n):
    """Value of the integral of W*(grad g)/g^{n+1} dx after normalization, see _convexity_functional.

    Return:
        float: the functional, >= 0 up to quadrature error.
    """
    return _convexity_functional(g, W, n)[0]


@InequalityRegistry.register(InequalityId.CONVEXITY_FUNCTIONAL.value, category=ItemCategory.STRUCTURAL)
def evaluate_convexity_functional(g, W, n=1, exponential=False, tolerance=None):
    """Sign of the convexity functional, 0 <= integral of W*(grad g)/g^{n+1} dx.

    Args:
        g (Potential): positive function, or a potential V used through e^{V/n}.
        W (Potential): positive function, or a potential used through e^{V/n}.
        n (int): exponent, the space dimension 1.
        exponential (bool): use e^{g/n} and e^{W/n}.
        tolerance (float, optional): tolerance override.

    Return:
        InequalityEvaluation: lhs = 0, rhs = the functional.
    """
    if exponential:
        g, W = exponential_profile(g, n), exponential_profile(W, n)
    cfg = get_config().inequalities
    spacing = 2.0 * float(cfg.convexity_half_range) / int(cfg.convexity_count)
    policy = TolerancePolicy(tolerance).observe_spacing(spacing)
    value, c_g, c_w = _convexity_functional(g, W, n, policy)
    evaluation = InequalityEvaluation(InequalityId.CONVEXITY_FUNCTIONAL, 0.0, value, policy.tolerance(0.0, value))
    evaluation.add_intermediate('c_g', c_g)
    evaluation.add_intermediate('c_W', c_w)
    evaluation.add_flag('evidence_{}'.format(policy.evidence))
    return evaluation
