# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Audits of contraction, entropy smoothing and convergence rates along Fokker-Planck trajectories."""

import math

import numpy as np
from scipy import integrate

from dimbench.common.errors import DomainError, PreconditionError
from dimbench.common.utils import logger
from dimbench.dynamics.mehler import fundamental_entropy
from dimbench.functionals import wasserstein2
from dimbench.inequalities.context import InequalityId, ItemCategory
from dimbench.inequalities.logsobolev import optimal_s
from dimbench.inequalities.registry import InequalityRegistry
from dimbench.inequalities.result import AuditReport
from dimbench.inequalities.tolerance import TolerancePolicy

MIN_NODES_PER_UNIT_TIME = 200


def _observe_states(policy, trajectory):
    """Add the representation of the trajectory states to the policy."""
    return policy.observe(trajectory.states[0])


def _elapsed(trajectory):
    return trajectory.times - trajectory.times[0]


def _declared_curvature(trajectory, R):
    if R is None:
        R = trajectory.potential.convexity_lower
    if R is None:
        logger.log_and_raise(PreconditionError, 'Potential {} declares no convexity bound R.'.format(
            trajectory.potential.name
        ))
    return float(R)


@InequalityRegistry.register(InequalityId.CONTRACTION.value, category=ItemCategory.AUDIT)
def audit_contraction(u, v, R=None, n=None, tolerance=None):
    """Classical and dimensional W2 contraction between two solutions of the same equation.

    With s the elapsed time, the checks are classical W2^2(u_t, v_t) <= e^{-2Rt} W2^2(u_0, v_0),
    dimensional W2^2(u_t, v_t) <= e^{-2Rt} W2^2(u_0, v_0) - 8n times the integral of
    e^{-2R(t-s)} sinh^2((Ent_dx(v_s) - Ent_dx(u_s))/(2n)) over [0, t], and domination of
    the classical bound by the dimensional one. The integral is a cumulative trapezoid
    on the record times.

    Args:
        u (Trajectory): first solution.
        v (Trajectory): second solution, same potential and times.
        R (float, optional): curvature constant, the declared one when None.
        n (int, optional): dimension in the bound, the space dimension when None.
        tolerance (float, optional): tolerance override.

    Return:
        AuditReport: three checks per record time.

    Raises:
        DomainError: if the trajectories do not share potential dimension and times.
        PreconditionError: if Ent_dx is not recorded.
    """
    if u.dimension != v.dimension or u.potential.name != v.potential.name:
        logger.log_and_raise(DomainError, 'Contraction needs two solutions of the same equation.')
    if u.times.size != v.times.size or not np.allclose(u.times, v.times, rtol=0.0, atol=1e-12):
        logger.log_and_raise(DomainError, 'Contraction needs trajectories on the same time grid.')
    R = _declared_curvature(u, R)
    n = u.dimension if n is None else int(n)
    entropy_u, entropy_v = u.column('Ent_dx'), v.column('Ent_dx')
    if np.any(np.isnan(entropy_u)) or np.any(np.isnan(entropy_v)):
        logger.log_and_raise(PreconditionError, 'The dimensional contraction needs Ent_dx records, not particles.')
    s = _elapsed(u)
    policy = _observe_states(_observe_states(TolerancePolicy(tolerance), u), v)
    w2_squared = np.array([wasserstein2(a, b)**2 for a, b in zip(u.states, v.states)])
    decay = np.exp(-2.0 * R * s)
    classical = decay * w2_squared[0]
    integrand = np.exp(2.0 * R * s) * np.sinh((entropy_v - entropy_u) / (2.0 * n))**2
    correction = 8.0 * n * decay * integrate.cumulative_trapezoid(integrand, s, initial=0.0)
    dimensional = classical - correction
    spacing = float(np.max(np.diff(s))) if s.size > 1 else 0.0
    if spacing > 0:
        policy.observe_spacing(spacing)
    rows = list()
    for i, t in enumerate(u.times):
        for check, lhs, rhs in (('classical', w2_squared[i], classical[i]),
                                ('dimensional', w2_squared[i], dimensional[i]),
                                ('domination', dimensional[i], classical[i])):
            rows.append({'check': check, 'lhs': lhs, 'rhs': rhs, 'tolerance': policy.tolerance(lhs, rhs), 't': t})
    report = AuditReport(InequalityId.CONTRACTION, rows)
    report.add_intermediate('R', R)
    report.add_intermediate('n', n)
    report.add_intermediate('time_spacing', spacing)
    if spacing > 0 and 1.0 / spacing < MIN_NODES_PER_UNIT_TIME:
        logger.warning('Contraction integral on %.1f nodes per unit time, below %d.', 1.0 / spacing,
                       MIN_NODES_PER_UNIT_TIME)
        report.add_flag('coarse_time_grid')
    report.add_flag('evidence_{}'.format(policy.evidence))
    return report


def _short_time_ratio(times, entropy, n):
    """H / ((n/2) log(1/t)) at the smallest positive record time below 1."""
    positive = np.flatnonzero((times > 0) & (times < 1))
    if positive.size == 0:
        return math.nan
    i = positive[0]
    return float(entropy[i] / (0.5 * n * math.log(1.0 / times[i])))


@InequalityRegistry.register(InequalityId.ENTROPY_SMOOTHING.value, category=ItemCategory.AUDIT)
def audit_entropy_smoothing(u, R=None, M=None, t_min=0.05, gaussian=None, tolerance=None):
    """Short time regularization of the relative entropy along a solution.

    Checks the Gaussian bound H(u_t) <= -(n/2) log(1 - e^{-2t}) for t >= t_min, the
    gradient moment u_t(|grad V|^2) <= M when M is declared and monotone decay of H.
    The constant c_hat = sup t e^{2H/n} over times with H >= 1 is fitted and reported,
    never judged. When R is known the entropy bound of the Gamma2 argument with its
    optimal s is reported in the column proof_bound.

    Args:
        u (Trajectory): solution with H records.
        R (float, optional): curvature constant, the declared one when None.
        M (float, optional): declared bound of the gradient moment.
        t_min (float): first time of the Gaussian bound check.
        gaussian (bool, optional): check the Gaussian bound, automatic for the standard Gaussian potential.
        tolerance (float, optional): tolerance override.

    Return:
        AuditReport: rows gaussian_bound, gradient_moment and entropy_monotone.

    Raises:
        PreconditionError: if H is not recorded, or the Gaussian bound is requested and
            u_0(|x|^2) > n.
    """
    n = u.dimension
    entropy = u.column('H')
    if np.any(np.isnan(entropy)):
        logger.log_and_raise(PreconditionError, 'Entropy smoothing needs H records, not particles.')
    t = _elapsed(u)
    policy = _observe_states(TolerancePolicy(tolerance), u)
    standard = u.potential.is_standard_gaussian()
    requested = gaussian is True
    gaussian = standard if gaussian is None else bool(gaussian)
    flags = list()
    if gaussian:
        second_moment = float(u.column('second_moment')[0])
        if not standard or second_moment > n * (1.0 + 1e-12):
            message = 'The Gaussian entropy bound needs the standard Gaussian potential and u_0(|x|^2) <= n, ' \
                'got {} > {}.'.format(second_moment, n)
            if requested:
                logger.log_and_raise(PreconditionError, message)
            logger.warning(message)
            flags.append('gaussian_bound_precondition_failed')
            gaussian = False

    proof = np.full(t.size, math.nan)
    R_value = R if R is not None else u.potential.convexity_lower
    if R_value is not None and float(R_value) > 0:
        gradient_moment, laplacian_moment = u.column('grad_V_moment'), u.column('laplacian_V_moment')
        fisher = u.column('I')
        for i in range(t.size):
            if np.isfinite(fisher[i]):
                a = gradient_moment[i]
                proof[i] = optimal_s(n, float(R_value), a, a - laplacian_moment[i], fisher[i])[1]

    rows = list()

    def add(check, i, lhs, rhs):
        rows.append({
            'check': check,
            'lhs': lhs,
            'rhs': rhs,
            'tolerance': policy.tolerance(lhs, rhs),
            't': u.times[i],
            'proof_bound': proof[i],
        })

    for i in range(t.size):
        if gaussian and t[i] >= t_min and t[i] > 0:
            add('gaussian_bound', i, entropy[i], -0.5 * n * math.log(-math.expm1(-2.0 * t[i])))
        if M is not None:
            add('gradient_moment', i, u.column('grad_V_moment')[i], float(M))
        if i > 0:
            add('entropy_monotone', i, entropy[i], entropy[i - 1])
    if not rows:
        logger.log_and_raise(PreconditionError, 'Entropy smoothing has nothing to check on {} record times.'.format(
            t.size
        ))
    report = AuditReport(InequalityId.ENTROPY_SMOOTHING, rows)
    window = (entropy >= 1.0) & (t > 0)
    fitted = float(np.max(t[window] * np.exp(2.0 * entropy[window] / n))) if window.any() else math.nan
    report.add_intermediate('fitted_c', fitted)
    report.add_intermediate('short_time_ratio', _short_time_ratio(t, entropy, n))
    for flag in flags:
        report.add_flag(flag)
    report.add_flag('evidence_{}'.format(policy.evidence))
    return report


def improved_rate_bound(x0, t):
    """1 - sqrt(1 - a) with a = (2 x0 - x0^2) e^{-2t}, written as a / (1 + sqrt(1 - a))."""
    a = (2.0 * x0 - x0 * x0) * np.exp(-2.0 * np.asarray(t, dtype=float))
    return a / (1.0 + np.sqrt(1.0 - a))


@InequalityRegistry.register(InequalityId.IMPROVED_RATE.value, category=ItemCategory.AUDIT)
def audit_improved_rate(u, tolerance=None):
    """Improved convergence rate of x(t) = W2^2(u_t, gamma)/(2n) under the Ornstein-Uhlenbeck flow.

    Checks improved x(t) <= 1 - sqrt(1 - (2 x0 - x0^2) e^{-2t}) and domination of that
    bound by the contraction bound e^{-2t} x0, reported in the column contraction_bound.

    Args:
        u (Trajectory): solution for the standard Gaussian potential.
        tolerance (float, optional): tolerance override.

    Return:
        AuditReport: rows improved and domination.

    Raises:
        PreconditionError: if the potential is not the standard Gaussian one,
            u_0(|x|^2) > n or x(0) >= 1.
    """
    if not u.potential.is_standard_gaussian():
        logger.log_and_raise(PreconditionError, 'The improved rate needs the standard Gaussian potential.')
    n = u.dimension
    second_moment = float(u.column('second_moment')[0])
    if second_moment > n * (1.0 + 1e-12):
        logger.log_and_raise(
            PreconditionError, 'The improved rate needs u_0(|x|^2) <= n, got {}.'.format(second_moment)
        )
    x = u.column('W2')**2 / (2.0 * n)
    if not x[0] < 1:
        logger.log_and_raise(PreconditionError, 'The improved rate needs x(0) < 1, got {}.'.format(x[0]))
    t = _elapsed(u)
    improved = improved_rate_bound(x[0], t)
    contraction = np.exp(-2.0 * t) * x[0]
    policy = _observe_states(TolerancePolicy(tolerance), u)
    rows = list()
    for i in range(t.size):
        for check, lhs, rhs in (('improved', x[i], improved[i]), ('domination', improved[i], contraction[i])):
            rows.append(
                {
                    'check': check,
                    'lhs': lhs,
                    'rhs': rhs,
                    'tolerance': policy.tolerance(lhs, rhs),
                    't': u.times[i],
                    'contraction_bound': contraction[i],
                }
            )
    report = AuditReport(InequalityId.IMPROVED_RATE, rows)
    report.add_intermediate('x0', x[0])
    report.add_intermediate('second_moment', second_moment)
    report.add_flag('evidence_{}'.format(policy.evidence))
    return report


@InequalityRegistry.register(InequalityId.FUNDAMENTAL_ENTROPY.value, category=ItemCategory.AUDIT)
def audit_fundamental_entropy(n, t, tolerance=None):
    """Entropy of the fundamental solution against -(n/2) log(1 - e^{-2t}) and n/(2t).

    Args:
        n (int): dimension.
        t (float or list): times > 0.
        tolerance (float, optional): tolerance override.

    Return:
        AuditReport: rows log_bound and rate_bound per time, with the column H.
    """
    policy = TolerancePolicy(tolerance)
    rows = list()
    for time in np.atleast_1d(np.asarray(t, dtype=float)):
        entropy = fundamental_entropy(int(n), float(time))
        for check, rhs in (('log_bound', entropy.log_bound), ('rate_bound', entropy.rate_bound)):
            rows.append(
                {
                    'check': check,
                    'lhs': entropy.value,
                    'rhs': rhs,
                    'tolerance': policy.tolerance(entropy.value, rhs),
                    't': time,
                    'H': entropy.value,
                }
            )
    report = AuditReport(InequalityId.FUNDAMENTAL_ENTROPY, rows)
    report.add_intermediate('n', int(n))
    return report
