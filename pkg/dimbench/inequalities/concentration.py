# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Dimensional concentration bounds for the enlargements of a set."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import pandas as pd

from dimbench.common.errors import DomainError, RepresentationError
from dimbench.common.utils import logger
from dimbench.inequalities.context import InequalityId
from dimbench.inequalities.reference import curvature, reference_potential
from dimbench.inequalities.registry import InequalityRegistry
from dimbench.inequalities.result import AuditReport
from dimbench.inequalities.tolerance import TolerancePolicy
from dimbench.measures import MeasureKind, discretize

PROFILE_COLUMNS = ['r', 'dimensional_bound', 'classical_bound', 'exact_mass', 'c_A', 'V_r', 'applicable', 'vacuous']


@dataclass(frozen=True)
class BallSet:
    """Closed ball A = {|x - center| <= radius}."""
    center: Tuple[float, ...]
    radius: float

    def distance(self, points):
        """Distance d(x, A) at (m, n) points."""
        return np.maximum(np.linalg.norm(points - np.asarray(self.center), axis=1) - self.radius, 0.0)


@dataclass(frozen=True)
class HalfSpaceSet:
    """Half-line, or half-plane in 2D, A = {direction·x <= threshold} with a unit direction."""
    threshold: float
    direction: Tuple[float, ...]

    def distance(self, points):
        """Distance d(x, A) at (m, n) points."""
        return np.maximum(points @ np.asarray(self.direction) - self.threshold, 0.0)


def as_set(descriptor, dimension):
    """Set object from a descriptor.

    Args:
        descriptor (BallSet, HalfSpaceSet or dict): a set, or a dict with kind 'ball'
            (center, radius) or 'half_line' (threshold, direction).
        dimension (int): space dimension.

    Return:
        BallSet or HalfSpaceSet: the set.
    """
    if isinstance(descriptor, (BallSet, HalfSpaceSet)):
        return descriptor
    descriptor = dict(descriptor)
    kind = descriptor.pop('kind', 'ball')
    if kind == 'ball':
        center = np.atleast_1d(np.asarray(descriptor.get('center', np.zeros(dimension)), dtype=float))
        radius = float(descriptor.get('radius', 1.0))
        if center.size != dimension or radius < 0:
            logger.log_and_raise(DomainError, 'Invalid ball {} in dimension {}.'.format(descriptor, dimension))
        return BallSet(tuple(center.tolist()), radius)
    if kind == 'half_line':
        direction = np.atleast_1d(np.asarray(descriptor.get('direction', np.eye(dimension)[0]), dtype=float))
        norm = float(np.linalg.norm(direction))
        if direction.size != dimension or norm == 0:
            logger.log_and_raise(DomainError, 'Invalid half-line direction {} in dimension {}.'.format(
                direction.tolist(), dimension
            ))
        return HalfSpaceSet(float(descriptor.get('threshold', 0.0)), tuple((direction / norm).tolist()))
    logger.log_and_raise(DomainError, 'Unknown set kind {}, expected ball or half_line.'.format(kind))


def _grid_nodes(mu):
    if mu.factors != 1:
        logger.log_and_raise(RepresentationError, 'Concentration profiles need a one factor measure.')
    base = discretize(mu) if mu.kind == MeasureKind.GAUSSIAN else mu
    if base.kind != MeasureKind.GRID:
        logger.log_and_raise(RepresentationError, 'Concentration profiles need a grid or Gaussian measure.')
    rep = base.representation
    return base, rep.grid.points, rep.flat_weights


def concentration_profile(mu, A, r_values, R=None):
    """Dimensional and classical bounds on mu(A_r), A_r = {d(x, A) > r}, with the exact mass.

    For r > c_A = sqrt(2/R log(1/mu(A))), the dimensional bound is
    e^{c_V - V_r} [1 + (V_r - c_V - (R/2)(r - c_A)^2)/n]^n with c_V = mu(V) and V_r the
    mean of V on A_r. A nonpositive bracket gives the bound 0 with the vacuous flag.

    Args:
        mu (Measure): Gaussian (discretized) or grid measure with a potential.
        A (BallSet, HalfSpaceSet or dict): the set.
        r_values (array_like): enlargement radii.
        R (float, optional): curvature constant, the declared one when None.

    Return:
        pd.DataFrame: one row per r with the columns r, dimensional_bound, classical_bound,
        exact_mass, c_A, V_r, applicable, vacuous and empty.
    """
    R = curvature(mu, R)
    base, points, weights = _grid_nodes(mu)
    n = base.dimension
    A = as_set(A, n)
    potential = reference_potential(base)
    v = potential.values(points)
    distance = A.distance(points)
    mass_a = float(weights[distance <= 0].sum())
    if mass_a <= 0:
        logger.log_and_raise(DomainError, 'The set {} carries no mass of the measure.'.format(A))
    c_a = math.sqrt(2.0 / R * math.log(1.0 / min(mass_a, 1.0)))
    c_v = float(np.dot(weights, v))
    rows = list()
    for r in np.atleast_1d(np.asarray(r_values, dtype=float)):
        outside = distance > r
        exact = float(weights[outside].sum())
        row = {'r': float(r), 'exact_mass': exact, 'c_A': c_a, 'applicable': bool(r > c_a), 'vacuous': False}
        row['empty'] = exact <= 0
        row['V_r'] = float(np.dot(weights[outside], v[outside]) / exact) if exact > 0 else math.nan
        row['classical_bound'] = math.exp(-0.5 * R * (r - c_a)**2) if row['applicable'] else math.nan
        row['dimensional_bound'] = math.nan
        if row['applicable'] and not row['empty']:
            bracket = 1.0 + (row['V_r'] - c_v - 0.5 * R * (r - c_a)**2) / n
            if bracket <= 0:
                logger.warning('Concentration bracket %g <= 0 at r = %g, the bound is vacuous.', bracket, r)
                row['vacuous'] = True
                row['dimensional_bound'] = 0.0
            else:
                row['dimensional_bound'] = math.exp(c_v - row['V_r'] + n * math.log(bracket))
        rows.append(row)
    return pd.DataFrame(rows, columns=PROFILE_COLUMNS + ['empty'])


@InequalityRegistry.register(InequalityId.CONCENTRATION.value)
def evaluate_concentration(mu, A, r_values, R=None, tolerance=None):
    """Dimensional concentration bound and its domination of the classical Gaussian bound.

    Rows with r <= c_A or an empty enlargement are left out of the checks.

    Return:
        AuditReport: checks dimensional (exact mass <= dimensional bound) and domination
        (dimensional bound <= classical bound).
    """
    table = concentration_profile(mu, A, r_values, R)
    valid = table[table['applicable'] & ~table['empty']]
    if valid.empty:
        logger.log_and_raise(DomainError, 'No radius above c_A = {} with a charged enlargement.'.format(
            float(table['c_A'].iloc[0])
        ))
    policy = TolerancePolicy(tolerance).observe(_grid_nodes(mu)[0])
    rows = list()
    for _, row in valid.iterrows():
        for check, lhs, rhs in (('dimensional', row['exact_mass'], row['dimensional_bound']),
                                ('domination', row['dimensional_bound'], row['classical_bound'])):
            rows.append(
                {
                    'check': check,
                    'lhs': lhs,
                    'rhs': rhs,
                    'tolerance': policy.tolerance(lhs, rhs),
                    'r': row['r'],
                    'vacuous': bool(row['vacuous']),
                }
            )
    report = AuditReport(InequalityId.CONCENTRATION, rows)
    report.add_intermediate('c_A', float(table['c_A'].iloc[0]))
    report.add_intermediate('not_applicable_rows', int((~table['applicable']).sum()))
    if table['empty'].any():
        report.add_flag('empty_enlargement')
    return report


def concentration_onset(table, p, eps):
    """Smallest r0 of the profile from which the dimensional bound stays below e^{-(1 - eps) r^p}.

    Args:
        table (pd.DataFrame): output of concentration_profile.
        p (float): growth exponent of the potential.
        eps (float): slack in the exponent, 0 < eps < 1.

    Return:
        float: the onset radius, None when the last valid row is above the target.
    """
    if not 0 < eps < 1:
        logger.log_and_raise(DomainError, 'Onset slack eps must be in (0, 1), got {}.'.format(eps))
    valid = table[table['applicable'] & table['dimensional_bound'].notna()].sort_values('r')
    onset = None
    for r, bound in zip(valid['r'].iloc[::-1], valid['dimensional_bound'].iloc[::-1]):
        if bound > math.exp(-(1.0 - eps) * r**p):
            break
        onset = float(r)
    return onset
