# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Dimensional logarithmic Sobolev inequalities.

The test measure is written nu = e^f mu, so Ent_mu(e^f) = H(nu|mu) and the integrals
against e^f dmu are integrals against nu. With nu = e^{-W} dx, grad(V - f) = grad W.
"""

import math

import numpy as np
from scipy import optimize

from dimbench.common.errors import DomainError, PreconditionError
from dimbench.common.utils import get_config, logger
from dimbench.functionals import entropy_dx, fisher_information, relative_entropy, second_moment, \
    wasserstein2_estimate
from dimbench.functionals.quadrature import align_factors, log_density_gradient, relative_score
from dimbench.inequalities.context import InequalityId, LsiVariant
from dimbench.inequalities.deficits import deficit_delta, deficit_lambda
from dimbench.inequalities.reference import conjugate_checked, curvature, potential_moments, reference_potential, \
    require_standard_gaussian
from dimbench.inequalities.registry import InequalityRegistry
from dimbench.inequalities.result import InequalityEvaluation
from dimbench.inequalities.tolerance import TolerancePolicy


def _score_nodes(nu, mu):
    """Nodes of one factor of nu with grad V and grad W = grad V - grad f there.

    Return:
        tuple: (points, weights, grad V, grad W, factor count), restricted to charged nodes.
    """
    nu_base, mu_base, factors = align_factors(nu, mu)
    potential = reference_potential(mu_base)
    points, weights, score = relative_score(nu_base, mu_base)
    keep = weights > 0
    points, weights, score = points[keep], weights[keep], score[keep]
    grad_v = potential.gradients(points)
    return points, weights, grad_v, grad_v - score, factors


def gamma2_objective(s, n, R, a, b, fisher):
    """n(s - 1 - log s) + (1/2R)((1-s)^2 A + 2s(1-s) B + s^2 I).

    A, B and I are the integrals of |grad V|^2, grad V·grad f and |grad f|^2 against nu.
    """
    return n * (s - 1.0 - math.log(s)) + ((1.0 - s)**2 * a + 2.0 * s * (1.0 - s) * b + s * s * fisher) / (2.0 * R)


def optimal_s(n, R, a, b, fisher):
    """Minimizer of the gamma2 objective over s > 0, searched on log s.

    Return:
        tuple: (s*, objective at s*), never worse than s = 1.
    """
    cfg = get_config().inequalities
    bounds = tuple(float(v) for v in cfg.log_s_bounds)
    result = optimize.minimize_scalar(
        lambda t: gamma2_objective(math.exp(t), n, R, a, b, fisher),
        bounds=bounds,
        method='bounded',
        options={'xatol': float(cfg.log_s_tolerance)},
    )
    s_star = math.exp(float(result.x))
    value = gamma2_objective(s_star, n, R, a, b, fisher)
    classical = gamma2_objective(1.0, n, R, a, b, fisher)
    if classical <= value:
        return 1.0, classical
    return s_star, value


def _gaussian_bl(nu, mu, evaluation, policy):
    require_standard_gaussian(mu, 'The gaussian_bl variant')
    n = mu.dimension
    entropy = relative_entropy(nu, mu)
    fisher = fisher_information(nu, mu)
    moment = second_moment(nu)
    rhs = 0.5 * moment - 0.5 * n + 0.5 * n * math.log1p((fisher + n - moment) / n)
    for name, value in (('H', entropy), ('I', fisher), ('second_moment', moment)):
        evaluation.add_intermediate(name, value)
    return entropy, rhs


def _gamma2_s(nu, mu, evaluation, policy, R, s):
    R = curvature(mu, R)
    n = mu.dimension
    _, weights, grad_v, grad_w, factors = _score_nodes(nu, mu)
    grad_f = grad_v - grad_w
    a = factors * float(np.dot(weights, np.sum(grad_v * grad_v, axis=1)))
    b = factors * float(np.dot(weights, np.sum(grad_v * grad_f, axis=1)))
    fisher = factors * float(np.dot(weights, np.sum(grad_f * grad_f, axis=1)))
    if s is None:
        s_star, rhs = optimal_s(n, R, a, b, fisher)
    else:
        if not s > 0:
            logger.log_and_raise(DomainError, 'The gamma2_s parameter must be > 0, got {}.'.format(s))
        s_star, rhs = float(s), gamma2_objective(float(s), n, R, a, b, fisher)
    entropy = relative_entropy(nu, mu)
    for name, value in (('H', entropy), ('I', fisher), ('A', a), ('B', b), ('R', R), ('s_star', s_star),
                        ('classical_rhs', fisher / (2.0 * R))):
        evaluation.add_intermediate(name, value)
    return entropy, rhs


def _lp_homogeneous(nu, mu, evaluation, policy, almost_c):
    potential = reference_potential(mu)
    if potential.homogeneity_q is None or potential.normalization is None:
        logger.log_and_raise(
            PreconditionError, 'The lp_homogeneous variant needs a declared homogeneity and normalization.'
        )
    if not almost_c >= 1.0:
        logger.log_and_raise(DomainError, 'The almost homogeneity constant must be >= 1, got {}.'.format(almost_c))
    n, p, beta = mu.dimension, potential.dual_exponent, potential.beta
    _, weights, _, grad_w, factors = _score_nodes(nu, mu)
    dual = conjugate_checked(potential, grad_w, policy) + beta
    energy = factors * float(np.dot(weights, dual))
    nu_v, _ = potential_moments(nu, mu)
    homogeneous_moment = nu_v - factors * beta
    argument = (p / n) * almost_c * energy
    rhs = (n / p) * math.log(argument) + n * (1.0 - p) / p + homogeneous_moment if argument > 0 else math.nan
    entropy = relative_entropy(nu, mu)
    for name, value in (('H', entropy), ('conjugate_energy', energy), ('p', p), ('almost_c', almost_c),
                        ('nu_V0', homogeneous_moment)):
        evaluation.add_intermediate(name, value)
    return entropy, rhs


def _transport_deflsi(nu, mu, evaluation, policy, R):
    R = curvature(mu, R)
    n = mu.dimension
    entropy = relative_entropy(nu, mu)
    fisher = fisher_information(nu, mu)
    nu_v, mu_v = potential_moments(nu, mu)
    moment_gap = nu_v - mu_v
    delta_term = deficit_delta(n, moment_gap - entropy)
    lambda_term = deficit_lambda(n, fisher / (2.0 * R) - moment_gap)
    for name, value in (('H', entropy), ('I', fisher), ('nu_V', nu_v), ('mu_V', mu_v), ('D', moment_gap),
                        ('delta_term', delta_term), ('lambda_term', lambda_term), ('R', R),
                        ('entropy_bound', moment_gap + n * math.log1p((fisher / (2.0 * R) - moment_gap) / n))):
        evaluation.add_intermediate(name, value)
    return R * max(delta_term, lambda_term), 0.5 * fisher - R * entropy


def _combined(nu, mu, evaluation, policy, R):
    R = curvature(mu, R)
    n = mu.dimension
    entropy = relative_entropy(nu, mu)
    fisher = fisher_information(nu, mu)
    nu_v, mu_v = potential_moments(nu, mu)
    estimate = wasserstein2_estimate(nu, mu)
    policy.observe_w2(estimate)
    h = entropy + mu_v - nu_v
    lhs = R * deficit_delta(n, -h)
    if estimate.squared > 0:
        lhs += 0.5 * (deficit_delta(n, h) + deficit_delta(n, -h))**2 / estimate.squared
    else:
        evaluation.add_flag('zero_w2')
    sharper = R * deficit_delta(n, -h) + 0.5 * (math.sqrt(fisher) - R * estimate.value)**2
    for name, value in (('H', entropy), ('I', fisher), ('W2', estimate.value), ('h', h), ('R', R),
                        ('hwi_bound', sharper)):
        evaluation.add_intermediate(name, value)
    return lhs, 0.5 * fisher - R * entropy


@InequalityRegistry.register(InequalityId.LSI_DIMENSIONAL.value, variants=LsiVariant)
def evaluate_lsi_dimensional(nu, mu, variant, s=None, almost_c=1.0, R=None, tolerance=None):
    """Dimensional log-Sobolev inequality in one of its variants.

    Entropy forms have lhs = H(nu|mu); the deficit forms transport_defLSI and combined
    have lhs = the dimensional lower bound and rhs = delta_LSI.

    Args:
        nu (Measure): test measure e^f mu.
        mu (Measure): reference measure with a potential.
        variant (LsiVariant or str): the variant.
        s (float, optional): fixed s for gamma2_s, optimized when None.
        almost_c (float): almost homogeneity constant c >= 1 for lp_homogeneous.
        R (float, optional): curvature constant, the declared one when None.
        tolerance (float, optional): tolerance override.

    Return:
        InequalityEvaluation: the evaluation.
    """
    variant = LsiVariant(str(variant))
    evaluation = InequalityEvaluation(InequalityId.LSI_DIMENSIONAL, 0.0, 0.0, 0.0, variant)
    policy = TolerancePolicy(tolerance).observe(nu, mu)
    if variant == LsiVariant.GAUSSIAN_BL:
        lhs, rhs = _gaussian_bl(nu, mu, evaluation, policy)
    elif variant == LsiVariant.GAMMA2_S:
        lhs, rhs = _gamma2_s(nu, mu, evaluation, policy, R, s)
    elif variant == LsiVariant.LP_HOMOGENEOUS:
        lhs, rhs = _lp_homogeneous(nu, mu, evaluation, policy, almost_c)
    elif variant == LsiVariant.TRANSPORT_DEFLSI:
        lhs, rhs = _transport_deflsi(nu, mu, evaluation, policy, R)
    else:
        lhs, rhs = _combined(nu, mu, evaluation, policy, R)
    return _rebuild(evaluation, lhs, rhs, policy)


def _rebuild(evaluation, lhs, rhs, policy):
    """Evaluation with final sides and tolerance, keeping intermediates and flags."""
    result = InequalityEvaluation(evaluation.inequality_id, lhs, rhs, policy.tolerance(lhs, rhs), evaluation.variant)
    for name, value in evaluation.intermediates.items():
        result.add_intermediate(name, value)
    for flag in evaluation.flags:
        result.add_flag(flag)
    result.add_flag('evidence_{}'.format(policy.evidence))
    return result


@InequalityRegistry.register(InequalityId.MODIFIED_LSI.value)
def evaluate_modified_lsi(nu, mu, s=1.0, tolerance=None):
    """Convex-potential log-Sobolev inequality Ent(e^f) <= nu(V*(s grad W) + V) - n(1 + log s).

    Args:
        nu (Measure): test measure.
        mu (Measure): reference measure with a convex potential.
        s (float): parameter s > 0.
        tolerance (float, optional): tolerance override.

    Return:
        InequalityEvaluation: lhs = H(nu|mu).
    """
    if not s > 0:
        logger.log_and_raise(DomainError, 'The modified LSI parameter must be > 0, got {}.'.format(s))
    policy = TolerancePolicy(tolerance).observe(nu, mu)
    potential = reference_potential(mu)
    n = mu.dimension
    points, weights, _, grad_w, factors = _score_nodes(nu, mu)
    integrand = conjugate_checked(potential, s * grad_w, policy) + potential.values(points)
    rhs = factors * float(np.dot(weights, integrand)) - n * (1.0 + math.log(s))
    lhs = relative_entropy(nu, mu)
    evaluation = InequalityEvaluation(InequalityId.MODIFIED_LSI, lhs, rhs, policy.tolerance(lhs, rhs))
    evaluation.add_intermediate('s', s)
    evaluation.add_intermediate('H', lhs)
    evaluation.add_flag('evidence_{}'.format(policy.evidence))
    return evaluation


@InequalityRegistry.register(InequalityId.LP_EUCLIDEAN_LSI.value)
def evaluate_lp_euclidean_lsi(f_measure, C, tolerance=None):
    """Optimal Lp-Euclidean log-Sobolev inequality for a q-homogeneous convex C.

    Ent_dx(e^f) <= (n/p) log((p / (n e^{p-1})) ∫C*(-grad f) e^f dx / (∫e^{-C} dx)^{p/n}).

    Args:
        f_measure (Measure): probability density e^f.
        C (Potential): q-homogeneous potential whose normalization is log ∫e^{-C} dx.
        tolerance (float, optional): tolerance override.

    Return:
        InequalityEvaluation: lhs = Ent_dx(e^f).
    """
    if C.homogeneity_q is None or C.normalization is None:
        logger.log_and_raise(PreconditionError, 'The Lp-Euclidean LSI needs a homogeneous C with its normalization.')
    base, factors = f_measure.base(), f_measure.factors
    if base.dimension != C.dimension:
        logger.log_and_raise(DomainError, 'C of dimension {} for a density of dimension {}.'.format(
            C.dimension, base.dimension
        ))
    policy = TolerancePolicy(tolerance).observe(f_measure)
    n, p, beta = f_measure.dimension, C.dual_exponent, C.beta
    _, weights, grad_log = log_density_gradient(base)
    keep = weights > 0
    dual = conjugate_checked(C, -grad_log[keep], policy) + beta
    energy = factors * float(np.dot(weights[keep], dual))
    rhs = (n / p) * (math.log(p / n) - (p - 1.0) + math.log(energy)) - factors * beta if energy > 0 else math.nan
    lhs = entropy_dx(f_measure)
    evaluation = InequalityEvaluation(InequalityId.LP_EUCLIDEAN_LSI, lhs, rhs, policy.tolerance(lhs, rhs))
    evaluation.add_intermediate('conjugate_energy', energy)
    evaluation.add_intermediate('p', p)
    evaluation.add_flag('evidence_{}'.format(policy.evidence))
    return evaluation
