# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Brascamp-Lieb and Poincaré inequalities with their dimensional corrections.

Every variant compares Var_mu(f) with a right-hand side integrated on the same
quadrature nodes of mu, so equality cases are exact up to the quadrature rule.
"""

import numpy as np
import pandas as pd

from dimbench.common.errors import DimBenchError, DomainError, PreconditionError
from dimbench.common.utils import logger
from dimbench.functionals.quadrature import quadrature_rule
from dimbench.inequalities.context import BrascampLiebVariant, InequalityId
from dimbench.inequalities.reference import reference_potential, require_standard_gaussian
from dimbench.inequalities.registry import InequalityRegistry
from dimbench.inequalities.result import InequalityEvaluation
from dimbench.inequalities.tolerance import TolerancePolicy
from dimbench.measures import MeasureKind, materialize_product

COMPARISON_COLUMNS = ['variant', 'applicable', 'lhs', 'rhs', 'slack', 'correction', 'verdict', 'error']


class _Nodes:
    """Quadrature nodes of mu with f, grad f and, when needed, V and its derivatives."""
    def __init__(self, f, mu, with_potential):
        mu = materialize_product(mu)
        if f.dimension != mu.dimension:
            logger.log_and_raise(
                DomainError, 'Test function of dimension {} for a measure of dimension {}.'.format(
                    f.dimension, mu.dimension
                )
            )
        self.dimension = mu.dimension
        self.points, self.weights = quadrature_rule(mu)
        self.particles = mu.kind == MeasureKind.PARTICLES
        self.values = f(self.points)
        self.gradients = f.gradients(self.points)
        self.mean = self.integrate(self.values)
        if not with_potential:
            return
        potential = reference_potential(mu)
        self.potential = potential
        self.v = potential.values(self.points)
        self.grad_v = potential.gradients(self.points)
        hessians = potential.hessians(self.points)
        charged = self.weights > 0
        smallest = np.linalg.eigvalsh(hessians[charged])[:, 0]
        if np.any(smallest <= 0):
            logger.log_and_raise(
                DomainError, 'Hess V is not positive definite on the support, smallest eigenvalue {}.'.format(
                    float(smallest.min())
                )
            )
        self.inv_grad_f = np.zeros_like(self.gradients)
        self.inv_grad_v = np.zeros_like(self.grad_v)
        self.inv_grad_f[charged] = np.linalg.solve(hessians[charged], self.gradients[charged][..., None])[..., 0]
        self.inv_grad_v[charged] = np.linalg.solve(hessians[charged], self.grad_v[charged][..., None])[..., 0]

    def integrate(self, values):
        """Weighted sum of an integrand over the nodes."""
        return float(np.dot(self.weights, values))

    def standard_error(self, values):
        """Monte Carlo standard error of the integral of values, 0 off particle clouds."""
        if not self.particles:
            return 0.0
        centered = values - self.integrate(values)
        return float(np.sqrt(self.integrate(centered * centered) * np.sum(self.weights**2)))


def _classical(nodes, evaluation):
    integrand = np.sum(nodes.gradients * nodes.inv_grad_f, axis=1)
    return nodes.integrate(integrand), integrand


def _transport_i(nodes, evaluation):
    classical, integrand = _classical(nodes, evaluation)
    n = nodes.dimension
    v_mean = nodes.integrate(nodes.v)
    var_v = nodes.integrate((nodes.v - v_mean)**2)
    covariance = nodes.integrate((nodes.v - v_mean) * (nodes.values - nodes.mean))
    info_v = nodes.integrate(np.sum(nodes.grad_v * nodes.inv_grad_v, axis=1))
    evaluation.add_intermediate('var_V', var_v)
    evaluation.add_intermediate('cov_Vf', covariance)
    evaluation.add_intermediate('I_V', info_v)
    evaluation.add_intermediate('var_V_bound', n * info_v / (n + info_v))
    lower, upper = nodes.potential.convexity_lower, nodes.potential.convexity_upper
    if lower is not None and upper is not None and lower + upper > 0:
        evaluation.add_intermediate('var_V_curvature_bound', n * upper / (lower + upper))
    if var_v >= n:
        logger.warning('Var_mu(V) = %g is not below n = %d, the transport_I correction is dropped.', var_v, n)
        evaluation.add_flag('potential_variance_not_below_n')
        return classical, integrand
    correction = covariance**2 / (n - var_v)
    evaluation.add_intermediate('correction', correction)
    return classical - correction, integrand


def _bbl_ii(nodes, evaluation):
    classical, integrand = _classical(nodes, evaluation)
    n = nodes.dimension
    x = np.sum(nodes.gradients * nodes.inv_grad_v, axis=1)
    y = np.sum(nodes.grad_v * nodes.inv_grad_v, axis=1)
    centered = nodes.values - nodes.mean
    correction = nodes.integrate((centered - x)**2 / (n + y))
    evaluation.add_intermediate('centering_shift', nodes.mean)
    evaluation.add_intermediate('X_mean', nodes.integrate(x))
    evaluation.add_intermediate('Y_mean', nodes.integrate(y))
    evaluation.add_intermediate('correction', correction)
    return classical - correction, integrand


def _harge(nodes, evaluation):
    lower, upper = nodes.potential.convexity_lower, nodes.potential.convexity_upper
    if lower is None or upper is None:
        logger.log_and_raise(PreconditionError, 'The harge variant needs declared bounds R <= Hess V <= S.')
    if not 0 <= lower <= upper or upper <= 0:
        logger.log_and_raise(DomainError, 'The harge variant needs 0 <= R <= S with S > 0, got {}, {}.'.format(
            lower, upper
        ))
    classical, integrand = _classical(nodes, evaluation)
    covariance = nodes.integrate(nodes.v * nodes.values) - nodes.integrate(nodes.v) * nodes.mean
    correction = (1.0 + lower / upper) / nodes.dimension * covariance**2
    evaluation.add_intermediate('cov_Vf', covariance)
    evaluation.add_intermediate('correction', correction)
    return classical - correction, integrand


def _gaussian_dim(nodes, evaluation):
    n = nodes.dimension
    squared = np.sum(nodes.gradients**2, axis=1)
    covariance = nodes.integrate((np.sum(nodes.points**2, axis=1) - n) * (nodes.values - nodes.mean))
    correction = covariance**2 / (2.0 * n)
    evaluation.add_intermediate('correction', correction)
    return nodes.integrate(squared) - correction, squared


def _gaussian_spectral(nodes, evaluation):
    squared = np.sum(nodes.gradients**2, axis=1)
    mean_gradient = nodes.weights @ nodes.gradients
    energy = nodes.integrate(squared)
    evaluation.add_intermediate('correction', 0.5 * energy - 0.5 * float(mean_gradient @ mean_gradient))
    return 0.5 * energy + 0.5 * float(mean_gradient @ mean_gradient), squared


def _bobkov_ledoux(nodes, evaluation):
    n = nodes.dimension
    squared = np.sum(nodes.gradients**2, axis=1)
    radial = np.sum(nodes.gradients * nodes.points, axis=1)**2 / (n + np.sum(nodes.points**2, axis=1))
    integrand = 6.0 * (squared - radial)
    return nodes.integrate(integrand), integrand


_VARIANTS = {
    BrascampLiebVariant.CLASSICAL: (_classical, False),
    BrascampLiebVariant.TRANSPORT_I: (_transport_i, False),
    BrascampLiebVariant.BBL_II: (_bbl_ii, False),
    BrascampLiebVariant.HARGE: (_harge, False),
    BrascampLiebVariant.GAUSSIAN_DIM: (_gaussian_dim, True),
    BrascampLiebVariant.GAUSSIAN_SPECTRAL: (_gaussian_spectral, True),
    BrascampLiebVariant.BOBKOV_LEDOUX: (_bobkov_ledoux, True),
}


@InequalityRegistry.register(InequalityId.BRASCAMP_LIEB.value, variants=BrascampLiebVariant)
def evaluate_brascamp_lieb(f, mu, variant, tolerance=None):
    """Brascamp-Lieb type variance bound Var_mu(f) <= rhs in one of its variants.

    Args:
        f (ScalarFunction): the test function.
        mu (Measure): reference measure; the gaussian variants need the standard Gaussian.
        variant (BrascampLiebVariant or str): the variant.
        tolerance (float, optional): tolerance override.

    Return:
        InequalityEvaluation: lhs = Var_mu(f).
    """
    variant = BrascampLiebVariant(str(variant))
    rule, gaussian = _VARIANTS[variant]
    if gaussian:
        require_standard_gaussian(mu, 'The {} variant'.format(variant))
    nodes = _Nodes(f, mu, with_potential=not gaussian)
    policy = TolerancePolicy(tolerance).observe(mu)
    evaluation = InequalityEvaluation(InequalityId.BRASCAMP_LIEB, 0.0, 0.0, 0.0, variant)
    rhs, rhs_integrand = rule(nodes, evaluation)
    centered = (nodes.values - nodes.mean)**2
    lhs = nodes.integrate(centered)
    if nodes.particles:
        policy.observe_standard_error(np.hypot(nodes.standard_error(centered), nodes.standard_error(rhs_integrand)))
    result = InequalityEvaluation(InequalityId.BRASCAMP_LIEB, lhs, rhs, policy.tolerance(lhs, rhs), variant)
    for name, value in evaluation.intermediates.items():
        result.add_intermediate(name, value)
    for flag in evaluation.flags:
        result.add_flag(flag)
    result.add_intermediate('mean_f', nodes.mean)
    result.add_flag('evidence_{}'.format(policy.evidence))
    return result


def compare_brascamp_lieb(f, mu, tolerance=None):
    """Every applicable Brascamp-Lieb variant for one test function, side by side.

    Variants whose hypotheses fail are listed with their error. The table supports the
    exploratory comparison of bbl_II against transport_I and of the Gaussian forms.

    Args:
        f (ScalarFunction): the test function.
        mu (Measure): the reference measure.
        tolerance (float, optional): tolerance override.

    Return:
        pd.DataFrame: one row per variant with lhs, rhs, slack, correction, verdict and error.
    """
    rows = list()
    for variant in BrascampLiebVariant:
        try:
            evaluation = evaluate_brascamp_lieb(f, mu, variant, tolerance=tolerance)
        except DimBenchError as e:
            rows.append({'variant': variant.value, 'applicable': False, 'error': str(e)})
            continue
        rows.append(
            {
                'variant': variant.value,
                'applicable': True,
                'lhs': evaluation.lhs,
                'rhs': evaluation.rhs,
                'slack': evaluation.slack,
                'correction': evaluation.intermediates.get('correction', 0.0),
                'verdict': evaluation.verdict.value,
                'error': '',
            }
        )
    return pd.DataFrame(rows, columns=COMPARISON_COLUMNS)
