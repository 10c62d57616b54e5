# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Legendre transform W*(y) = sup_x {x·y - W(x)} of potentials, analytic or discrete."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from dimbench.common.errors import DomainError, LegendreBoundaryError
from dimbench.common.utils import get_config, logger
from dimbench.measures.potential import as_points

_MAX_HALF_WIDTH = 1.0e6
_ROW_BLOCK = 16


@dataclass(frozen=True, eq=False)
class ConjugateValues:
    """Values of a conjugate at query points with the search diagnostics.

    ``on_boundary`` marks queries whose supremum was attained on the search box
    boundary, where the value is a lower bound only.
    """
    values: np.ndarray
    on_boundary: np.ndarray
    method: str
    box: Optional[tuple] = None


def lower_hull(x, v):
    """Indices of the lower convex hull of the points (x_i, v_i), x increasing."""
    xs, vs = x.tolist(), v.tolist()
    hull = []
    for i in range(len(xs)):
        while len(hull) >= 2:
            j, k = hull[-2], hull[-1]
            if (vs[k] - vs[j]) * (xs[i] - xs[k]) >= (vs[i] - vs[k]) * (xs[k] - xs[j]):
                hull.pop()
            else:
                break
        hull.append(i)
    return np.asarray(hull)


def discrete_conjugate_1d(x, v, y):
    """Discrete conjugate max_i {x_i y - v_i} in linear time on the hull.

    Return:
        tuple: (values, maximizing indices) for the queries y.
    """
    hull = lower_hull(x, v)
    hx, hv = x[hull], v[hull]
    slopes = np.diff(hv) / np.diff(hx)
    k = np.searchsorted(slopes, y, side='left')
    return y * hx[k] - hv[k], hull[k]


def _separable_pass(x, v, eta):
    """Row-wise discrete conjugate over the last axis by blocks.

    Return:
        tuple: (values (rows, len(eta)), argmax (rows, len(eta))).
    """
    rows = v.shape[0]
    values = np.empty((rows, eta.size))
    argmax = np.empty((rows, eta.size), dtype=int)
    for start in range(0, rows, _ROW_BLOCK):
        block = v[start:start + _ROW_BLOCK]
        scores = eta[None, :, None] * x[None, None, :] - block[:, None, :]
        argmax[start:start + _ROW_BLOCK] = np.argmax(scores, axis=2)
        values[start:start + _ROW_BLOCK] = np.take_along_axis(scores, argmax[start:start + _ROW_BLOCK][..., None],
                                                              axis=2)[..., 0]
    return values, argmax


def _conjugate_1d(p, y, half_width, count):
    x = np.linspace(-half_width, half_width, count)
    values, index = discrete_conjugate_1d(x, p.values(x[:, None]), y[:, 0])
    return values, (index == 0) | (index == count - 1)


def _conjugate_2d(p, y, half_width, count):
    x = np.linspace(-half_width, half_width, count)
    mesh = np.stack(np.meshgrid(x, x, indexing='ij'), axis=-1).reshape(-1, 2)
    v = p.values(mesh).reshape(count, count)
    lo, hi = y.min(axis=0), y.max(axis=0)
    pad = 1e-9 + 0.01 * (hi - lo)
    eta = [np.linspace(lo[k] - pad[k], hi[k] + pad[k], count) for k in range(2)]
    # sup over x2 for every row x1, then sup over x1 for every eta2
    inner, inner_arg = _separable_pass(x, v, eta[1])
    outer, outer_arg = _separable_pass(x, -inner.T, eta[0])
    star = outer.T
    edge = (inner_arg == 0) | (inner_arg == count - 1)
    flagged = (outer_arg == 0) | (outer_arg == count - 1) | np.take_along_axis(edge.T, outer_arg, axis=1)
    flagged = flagged.T.astype(float)
    method = 'cubic' if count >= 4 else 'linear'
    values = RegularGridInterpolator(eta, star, method=method)(y)
    boundary = RegularGridInterpolator(eta, flagged, method='linear')(y) > 0
    return values, boundary


def _search_half_width(p, y):
    """Smallest power of two box whose faces have gradients beyond the queries."""
    half_width = 1.0
    n = p.dimension
    while half_width < _MAX_HALF_WIDTH:
        faces = np.concatenate([half_width * np.eye(n), -half_width * np.eye(n)])
        grads = np.diagonal(p.gradients(faces)[:n]), np.diagonal(p.gradients(faces)[n:])
        if np.all(grads[0] >= y.max(axis=0)) and np.all(grads[1] <= y.min(axis=0)):
            break
        half_width *= 2.0
    return half_width * (1.0 + float(get_config().functionals.legendre.margin))


def conjugate(p, y, half_width=None, count=None, method='auto', expand=3):
    """Conjugate of a potential at query points with boundary diagnostics.

    Args:
        p (Potential): potential of dimension 1 or 2 for the discrete transform.
        y (array_like): (m, n) query points.
        half_width (float, optional): search box [-L, L]^n, chosen from the gradients if None.
        count (int, optional): search nodes per axis, the configured count if None.
        method (str): 'auto' uses the analytic conjugate when declared, 'discrete' forces the grid search.
        expand (int): box doublings allowed when an automatic box is hit on its boundary.

    Return:
        ConjugateValues: values and boundary flags.
    """
    y = as_points(y, p.dimension)
    if method in ('auto', 'analytic') and p.conjugate is not None:
        return ConjugateValues(p.conjugate_values(y), np.zeros(y.shape[0], dtype=bool), 'analytic')
    if method == 'analytic':
        logger.log_and_raise(DomainError, 'Potential {} has no analytic conjugate.'.format(p.name))
    if p.dimension not in (1, 2):
        logger.log_and_raise(DomainError, 'Discrete Legendre transform needs dimension 1 or 2.')
    cfg = get_config().functionals.legendre
    count = count or int(cfg.count_1d if p.dimension == 1 else cfg.count_2d)
    automatic = half_width is None
    half_width = _search_half_width(p, y) if automatic else float(half_width)
    solve = _conjugate_1d if p.dimension == 1 else _conjugate_2d
    values, boundary = solve(p, y, half_width, count)
    while automatic and expand > 0 and boundary.any():
        half_width *= 2.0
        expand -= 1
        values, boundary = solve(p, y, half_width, count)
    if boundary.any():
        logger.warning('Legendre supremum on the box boundary for %d of %d queries, box half width %g.',
                       int(boundary.sum()), boundary.size, half_width)
    return ConjugateValues(values, boundary, 'discrete', (-half_width, half_width))


def legendre_transform(p, y, half_width=None, method='auto'):
    """Legendre transform W*(y) of a potential.

    Args:
        p (Potential): the potential W.
        y (array_like): one point or (m, n) points.
        half_width (float, optional): search box half width.
        method (str): 'auto', 'analytic' or 'discrete'.

    Return:
        float or np.ndarray: W*(y), a float for a single point.

    Raises:
        LegendreBoundaryError: if the supremum is attained on the search box boundary.
    """
    single = np.ndim(y) == 0 or (np.ndim(y) == 1 and np.size(y) == p.dimension)
    result = conjugate(p, y, half_width=half_width, method=method)
    if result.on_boundary.any():
        logger.log_and_raise(
            LegendreBoundaryError, 'Legendre supremum reached the search box {}, values are unreliable.'.format(
                result.box
            )
        )
    return float(result.values[0]) if single else result.values
