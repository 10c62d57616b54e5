# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Dimensional Talagrand and HWI inequalities, their comparisons and product behavior."""

import math

import numpy as np

from dimbench.common.errors import DomainError, PreconditionError
from dimbench.common.utils import get_config, logger
from dimbench.functionals import expectation, fisher_information, relative_entropy, second_moment, \
    wasserstein2_estimate
from dimbench.inequalities.context import InequalityId, ItemCategory
from dimbench.inequalities.deficits import deficit_delta, deficit_lambda
from dimbench.inequalities.reference import curvature, potential_moments, reference_potential
from dimbench.inequalities.registry import InequalityRegistry
from dimbench.inequalities.result import AuditReport, InequalityEvaluation
from dimbench.inequalities.tolerance import TolerancePolicy
from dimbench.measures import MeasureKind, discretize, perturb_density, standard_gaussian, tensor_power


def _record(evaluation, values):
    for name, value in values.items():
        evaluation.add_intermediate(name, value)
    return evaluation


def richardson_limit(q_coarse, q_fine, eps_coarse, eps_fine):
    """Eps -> 0 limit of a quotient q(eps) = L + c eps + O(eps^2) from two samples.

    Args:
        q_coarse (float): quotient at eps_coarse.
        q_fine (float): quotient at eps_fine < eps_coarse.
        eps_coarse (float): larger perturbation size.
        eps_fine (float): smaller perturbation size.

    Return:
        float: the extrapolated limit, exact when q is affine in eps.
    """
    k = eps_coarse / eps_fine
    return (k * q_fine - q_coarse) / (k - 1.0)


@InequalityRegistry.register(InequalityId.TALAGRAND_DIMENSIONAL.value)
def evaluate_talagrand_dimensional(nu, mu, R=None, tolerance=None):
    """Dimensional Talagrand inequality (R/2) W2^2 <= D + n - n exp((D - H)/n), D = nu(V) - mu(V).

    Args:
        nu (Measure): the first measure.
        mu (Measure): reference measure with Hess V >= R.
        R (float, optional): curvature constant, the declared one when None.
        tolerance (float, optional): tolerance override.

    Return:
        InequalityEvaluation: the evaluation with both deficit lower bounds.
    """
    R = curvature(mu, R)
    n = mu.dimension
    policy = TolerancePolicy(tolerance).observe(nu, mu)
    entropy = relative_entropy(nu, mu)
    estimate = wasserstein2_estimate(nu, mu)
    policy.observe_w2(estimate)
    nu_v, mu_v = potential_moments(nu, mu)
    moment_gap = nu_v - mu_v
    lhs = 0.5 * R * estimate.squared
    rhs = moment_gap - n * math.expm1((moment_gap - entropy) / n)
    evaluation = InequalityEvaluation(InequalityId.TALAGRAND_DIMENSIONAL, lhs, rhs, policy.tolerance(lhs, rhs))
    _record(
        evaluation, {
            'H': entropy,
            'W2': estimate.value,
            'nu_V': nu_v,
            'mu_V': mu_v,
            'D': moment_gap,
            'R': R,
            'classical_rhs': entropy,
            'classical_gap': entropy - rhs,
            'delta_tal': entropy - lhs,
            'deficit_entropy_bound': deficit_delta(n, entropy - moment_gap),
        }
    )
    try:
        evaluation.add_intermediate('deficit_transport_bound', deficit_lambda(n, moment_gap - lhs))
    except DomainError:
        evaluation.add_flag('transport_bound_out_of_domain')
    if moment_gap <= 0:
        evaluation.add_intermediate('moment_form_bound', deficit_delta(n, entropy))
        evaluation.add_intermediate('moment_form_floor', min(entropy, entropy * entropy / n) / math.e)
    evaluation.add_flag('evidence_{}'.format(policy.evidence))
    return evaluation


def _hwi_curvature(mu, R):
    if R is not None:
        return float(R)
    declared = reference_potential(mu).convexity_lower
    if declared is None:
        logger.log_and_raise(PreconditionError, 'HWI needs R, none given and none declared.')
    return float(declared)


@InequalityRegistry.register(InequalityId.HWI.value)
def evaluate_hwi(f_measure, mu, g_measure=None, R=None, tolerance=None):
    """Dimensional HWI inequality between f mu and g mu.

    n exp((H_f - H_g + mu(gV) - mu(fV))/n) - n <= mu(gV) - mu(fV) + W2 sqrt(I_f) - (R/2) W2^2,
    where W2 = W2(f mu, g mu). Without g_measure, g = 1 and g mu = mu.

    Args:
        f_measure (Measure): the measure f mu.
        mu (Measure): reference measure with Hess V >= R, R any real.
        g_measure (Measure, optional): the measure g mu.
        R (float, optional): curvature constant, the declared one when None.
        tolerance (float, optional): tolerance override.

    Return:
        InequalityEvaluation: the evaluation.
    """
    R = _hwi_curvature(mu, R)
    n = mu.dimension
    g_measure = mu if g_measure is None else g_measure
    policy = TolerancePolicy(tolerance).observe(f_measure, g_measure, mu)
    entropy_f = relative_entropy(f_measure, mu)
    entropy_g = 0.0 if g_measure is mu else relative_entropy(g_measure, mu)
    fisher = fisher_information(f_measure, mu)
    f_v, mu_v = potential_moments(f_measure, mu)
    g_v = mu_v if g_measure is mu else potential_moments(g_measure, mu)[0]
    estimate = wasserstein2_estimate(f_measure, g_measure)
    policy.observe_w2(estimate)
    distance = estimate.value
    lhs = n * math.expm1((entropy_f - entropy_g + g_v - f_v) / n)
    rhs = g_v - f_v + distance * math.sqrt(fisher) - 0.5 * R * estimate.squared
    evaluation = InequalityEvaluation(InequalityId.HWI, lhs, rhs, policy.tolerance(lhs, rhs))
    _record(evaluation, {
        'H_f': entropy_f,
        'H_g': entropy_g,
        'I_f': fisher,
        'W2': distance,
        'mu_fV': f_v,
        'mu_gV': g_v,
        'R': R,
    })
    if g_measure is mu and distance > 0 and R > 0:
        h = entropy_f + mu_v - f_v
        combined = R * deficit_delta(n, -h) + 0.5 * (deficit_delta(n, h) + deficit_delta(n, -h))**2 / estimate.squared
        evaluation.add_intermediate('combined_lsi_bound', combined)
        evaluation.add_intermediate('delta_lsi', 0.5 * fisher - R * entropy_f)
    evaluation.add_flag('evidence_{}'.format(policy.evidence))
    return evaluation


@InequalityRegistry.register(InequalityId.HWI_GAUSSIAN_COMPARISON.value)
def compare_hwi_gaussian(nu, tolerance=None):
    """Dimensional Gaussian HWI h <= log(1 + x - y/2) against the earlier form 2h <= x - y + log(1 + x).

    With x = W2 sqrt(I)/n, y = W2^2/n and h = H/n relative to the standard Gaussian,
    for a measure with second moment n.

    Args:
        nu (Measure): measure with nu(|x|^2) = n.
        tolerance (float, optional): tolerance override.

    Return:
        InequalityEvaluation: lhs = h, rhs = log(1 + x - y/2), with the earlier form as intermediates.

    Raises:
        PreconditionError: if the second moment differs from n.
    """
    n = nu.dimension
    mu = tensor_power(standard_gaussian(nu.base_dimension), nu.factors)
    policy = TolerancePolicy(tolerance).observe(nu)
    moment = second_moment(nu)
    if abs(moment - n) > max(policy.tolerance(moment, n), float(get_config().measures.mean_zero_tolerance) * n):
        logger.log_and_raise(
            PreconditionError, 'The Gaussian HWI comparison needs nu(|x|^2) = n = {}, got {}.'.format(n, moment)
        )
    entropy = relative_entropy(nu, mu)
    fisher = fisher_information(nu, mu)
    estimate = wasserstein2_estimate(nu, mu)
    policy.observe_w2(estimate)
    x = estimate.value * math.sqrt(fisher) / n
    y = estimate.squared / n
    h = entropy / n
    argument = 1.0 + x - 0.5 * y
    rhs = math.log(argument) if argument > 0 else math.nan
    earlier = 0.5 * (x - y + math.log1p(x))
    evaluation = InequalityEvaluation(InequalityId.HWI_GAUSSIAN_COMPARISON, h, rhs, policy.tolerance(h, rhs))
    _record(evaluation, {
        'x': x,
        'y': y,
        'h': h,
        'second_moment': moment,
        'earlier_rhs': earlier,
        'earlier_slack': earlier - h,
    })
    if argument <= 0:
        evaluation.add_flag('nonpositive_log_argument')
    elif rhs < earlier:
        evaluation.add_flag('dimensional_tighter')
    else:
        evaluation.add_flag('earlier_tighter')
    evaluation.add_flag('evidence_{}'.format(policy.evidence))
    return evaluation


@InequalityRegistry.register(InequalityId.TENSORIZATION.value)
def tensorization_lower_bound(nu, mu, N, R=None, tolerance=None):
    """Product deficit lower bound N delta_n(H + mu(V) - nu(V)) <= delta_Tal(nu^N | mu^N).

    The product functionals are evaluated on the factored powers, so N can be large.

    Args:
        nu (Measure): one factor measure.
        mu (Measure): one factor reference measure.
        N (int): number of factors.
        R (float, optional): curvature constant, the declared one when None.
        tolerance (float, optional): tolerance override.

    Return:
        InequalityEvaluation: lhs = the product lower bound, rhs = the product deficit.
    """
    if int(N) != N or N < 1:
        logger.log_and_raise(DomainError, 'Factor count must be a positive integer, got {}.'.format(N))
    N = int(N)
    R = curvature(mu, R)
    n = mu.dimension
    nu_power, mu_power = tensor_power(nu, N), tensor_power(mu, N)
    policy = TolerancePolicy(tolerance).observe(nu, mu)
    entropy = relative_entropy(nu, mu)
    nu_v, mu_v = potential_moments(nu, mu)
    one_factor = wasserstein2_estimate(nu, mu)
    policy.observe_w2(one_factor)
    argument = entropy + mu_v - nu_v
    lhs = N * deficit_delta(n, argument)
    product_entropy = relative_entropy(nu_power, mu_power)
    product_w2 = wasserstein2_estimate(nu_power, mu_power).squared
    rhs = product_entropy - 0.5 * R * product_w2
    delta_tal = entropy - 0.5 * R * one_factor.squared
    evaluation = InequalityEvaluation(InequalityId.TENSORIZATION, lhs, rhs, policy.tolerance(lhs, rhs))
    _record(
        evaluation, {
            'N': N,
            'argument': argument,
            'product_argument': N * argument,
            'product_dimension_bound': deficit_delta(N * n, N * argument),
            'delta_tal_one_factor': delta_tal,
            'scaling_error': abs(rhs - N * delta_tal),
        }
    )
    evaluation.add_flag('evidence_{}'.format(policy.evidence))
    return evaluation


@InequalityRegistry.register(InequalityId.LINEARIZATION.value, category=ItemCategory.AUDIT)
def linearization_check(mu, h, eps_values=(1e-2, 1e-3), R=None, tolerance=None):
    """Talagrand deficit along nu = (1 + eps h) mu against its dimensional lower bound.

    Gaussian references are discretized first so nu and mu share one grid. Each eps
    gives a row delta_n(H - D) <= delta_Tal; the quotients deficit/eps^2 of the two
    smallest eps are Richardson extrapolated and reported, never asserted.

    Args:
        mu (Measure): one factor reference measure with a potential.
        h (ScalarFunction): perturbation direction, centered under mu with the shift recorded.
        eps_values (list): perturbation sizes, at least two.
        R (float, optional): curvature constant, the declared one when None.
        tolerance (float, optional): tolerance override.

    Return:
        AuditReport: one row per eps under the check deficit_bound.
    """
    eps_values = sorted((float(e) for e in eps_values), reverse=True)
    if len(eps_values) < 2 or eps_values[-1] <= 0:
        logger.log_and_raise(DomainError, 'Linearization needs at least two positive eps, got {}.'.format(eps_values))
    R = curvature(mu, R)
    base = discretize(mu) if mu.kind == MeasureKind.GAUSSIAN else mu
    n = base.dimension
    shift = expectation(h, base, 'h')
    rows = list()
    for eps in eps_values:
        nu = perturb_density(base, lambda x: h(x) - shift, eps)
        policy = TolerancePolicy(tolerance).observe(nu, base)
        entropy = relative_entropy(nu, base)
        estimate = wasserstein2_estimate(nu, base)
        policy.observe_w2(estimate)
        nu_v, mu_v = potential_moments(nu, base)
        deficit = entropy - 0.5 * R * estimate.squared
        bound = deficit_delta(n, entropy - (nu_v - mu_v))
        rows.append(
            {
                'check': 'deficit_bound',
                'lhs': bound,
                'rhs': deficit,
                'tolerance': policy.tolerance(bound, deficit),
                'eps': eps,
                'deficit_quotient': deficit / eps**2,
                'bound_quotient': bound / eps**2,
                'H': entropy,
            }
        )
    report = AuditReport(InequalityId.LINEARIZATION, rows)
    table = report.table
    e1, e2 = eps_values[-2], eps_values[-1]
    for column in ('deficit_quotient', 'bound_quotient'):
        q1, q2 = float(table[column].iloc[-2]), float(table[column].iloc[-1])
        report.add_intermediate('{}_limit'.format(column), richardson_limit(q1, q2, e1, e2))
    report.add_intermediate('centering_shift', shift)
    report.add_intermediate('eps_min', float(np.min(eps_values)))
    return report
