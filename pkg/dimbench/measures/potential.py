# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Potentials V of log-concave measures e^{-V} and the potential registry.

All callables are vectorized over points: ``value`` maps an (m, n) array to
(m,), ``gradient`` to (m, n) and ``hessian`` to (m, n, n).
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np
from scipy import integrate, special
from scipy.interpolate import CubicSpline

from dimbench.common.errors import DomainError
from dimbench.common.utils import logger

_EPS = np.finfo(float).eps


def as_points(x, dimension):
    """Reshape input into an (m, n) array of points.

    Args:
        x (array_like): one point, or an array of points.
        dimension (int): space dimension n.

    Return:
        np.ndarray: (m, n) float array.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        x = x.reshape(1, 1)
    elif x.ndim == 1:
        x = x.reshape(-1, dimension)
    if x.shape[-1] != dimension:
        logger.log_and_raise(
            DomainError, 'Points of dimension {} given for dimension {}.'.format(x.shape[-1], dimension)
        )
    return x


def fd_step(x, order=3):
    """Central difference step eps^(1/order)·(1+|x|) per coordinate."""
    return _EPS**(1.0 / order) * (1.0 + np.abs(x))


def central_gradient(func, x):
    """Gradient of a vectorized scalar function by central differences.

    Args:
        func (Callable): maps (m, n) points to (m,) values.
        x (np.ndarray): (m, n) points.

    Return:
        np.ndarray: (m, n) gradient estimate.
    """
    grad = np.empty_like(x)
    for k in range(x.shape[1]):
        h = fd_step(x[:, k])
        forward, backward = x.copy(), x.copy()
        forward[:, k] += h
        backward[:, k] -= h
        grad[:, k] = (func(forward) - func(backward)) / (forward[:, k] - backward[:, k])
    return grad


def central_hessian(func, x, gradient=None):
    """Hessian by central differences of the gradient, or of the value when no gradient is known.

    Args:
        func (Callable): maps (m, n) points to (m,) values.
        x (np.ndarray): (m, n) points.
        gradient (Callable, optional): maps (m, n) points to (m, n) gradients.

    Return:
        np.ndarray: (m, n, n) symmetrized Hessian estimate.
    """
    m, n = x.shape
    hess = np.empty((m, n, n))
    if gradient is not None:
        for k in range(n):
            h = fd_step(x[:, k])
            forward, backward = x.copy(), x.copy()
            forward[:, k] += h
            backward[:, k] -= h
            hess[:, :, k] = (gradient(forward) - gradient(backward)) / (forward[:, k] - backward[:, k])[:, None]
    else:
        center = func(x)
        for i in range(n):
            for j in range(n):
                hi, hj = fd_step(x[:, i], 4), fd_step(x[:, j], 4)
                if i == j:
                    forward, backward = x.copy(), x.copy()
                    forward[:, i] += hi
                    backward[:, i] -= hi
                    hess[:, i, i] = (func(forward) - 2.0 * center + func(backward)) / hi**2
                    continue
                pp, pm, mp, mm = x.copy(), x.copy(), x.copy(), x.copy()
                pp[:, i] += hi
                pp[:, j] += hj
                pm[:, i] += hi
                pm[:, j] -= hj
                mp[:, i] -= hi
                mp[:, j] += hj
                mm[:, i] -= hi
                mm[:, j] -= hj
                hess[:, i, j] = (func(pp) - func(pm) - func(mp) + func(mm)) / (4.0 * hi * hj)
    return 0.5 * (hess + np.swapaxes(hess, 1, 2))


@dataclass(frozen=True, eq=False)
class Potential:
    """Potential V of the measure with density e^{-V}.

    ``normalization`` is the constant beta already included in ``value`` so that
    the integral of e^{-value} is 1; ``value - beta`` is the homogeneous part when
    ``homogeneity_q`` is declared. ``conjugate`` is the analytic Legendre
    transform of ``value`` when known.
    """
    dimension: int
    value: Callable[[np.ndarray], np.ndarray]
    gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None
    hessian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    convexity_lower: Optional[float] = None
    convexity_upper: Optional[float] = None
    homogeneity_q: Optional[float] = None
    normalization: Optional[float] = None
    conjugate: Optional[Callable[[np.ndarray], np.ndarray]] = None
    doubling: bool = False
    name: str = 'custom'
    parameters: Dict = field(default_factory=dict)

    def __post_init__(self):
        """Validate declared constants."""
        if int(self.dimension) < 1:
            logger.log_and_raise(DomainError, 'Potential dimension must be positive, got {}.'.format(self.dimension))
        if self.homogeneity_q is not None and self.homogeneity_q <= 1:
            logger.log_and_raise(DomainError, 'Homogeneity degree must be > 1, got {}.'.format(self.homogeneity_q))
        if self.convexity_upper is not None and self.convexity_lower is not None \
                and self.convexity_upper < self.convexity_lower:
            logger.log_and_raise(
                DomainError,
                'Convexity bounds out of order: R={} > S={}.'.format(self.convexity_lower, self.convexity_upper)
            )

    @property
    def beta(self):
        """Normalization constant, 0 when not declared."""
        return 0.0 if self.normalization is None else float(self.normalization)

    @property
    def dual_exponent(self):
        """Exponent p with 1/p + 1/q = 1, None without homogeneity."""
        if self.homogeneity_q is None:
            return None
        return self.homogeneity_q / (self.homogeneity_q - 1.0)

    @property
    def gaussian_parameters(self):
        """(mean, covariance) when the potential is a Gaussian one, else None."""
        if self.name != 'gaussian':
            return None
        return self.parameters['mean'], self.parameters['covariance']

    def is_standard_gaussian(self):
        """Whether this is the potential of the standard Gaussian measure."""
        params = self.gaussian_parameters
        if params is None:
            return False
        mean, cov = params
        return bool(np.allclose(mean, 0.0, atol=1e-14) and np.allclose(cov, np.eye(self.dimension), atol=1e-14))

    def values(self, x):
        """Evaluate V on (m, n) points."""
        x = as_points(x, self.dimension)
        return np.asarray(self.value(x), dtype=float).reshape(x.shape[0])

    def homogeneous_values(self, x):
        """Evaluate V - beta on (m, n) points."""
        return self.values(x) - self.beta

    def gradients(self, x):
        """Evaluate grad V on (m, n) points, central differences when not analytic."""
        x = as_points(x, self.dimension)
        if self.gradient is not None:
            return np.asarray(self.gradient(x), dtype=float).reshape(x.shape)
        return central_gradient(self.values, x)

    def hessians(self, x):
        """Evaluate Hess V on (m, n) points, central differences when not analytic."""
        x = as_points(x, self.dimension)
        if self.hessian is not None:
            n = self.dimension
            return np.asarray(self.hessian(x), dtype=float).reshape(x.shape[0], n, n)
        return central_hessian(self.values, x, self.gradients if self.gradient is not None else None)

    def laplacians(self, x):
        """Evaluate Delta V on (m, n) points."""
        return np.trace(self.hessians(x), axis1=1, axis2=2)

    def conjugate_values(self, y):
        """Analytic Legendre transform V*(y) on (m, n) points.

        Raises:
            DomainError: if no analytic conjugate is declared.
        """
        if self.conjugate is None:
            logger.log_and_raise(DomainError, 'Potential {} has no analytic conjugate.'.format(self.name))
        y = as_points(y, self.dimension)
        return np.asarray(self.conjugate(y), dtype=float).reshape(y.shape[0])

    def validate(self, points, rtol=1e-6):
        """Check the declared convexity, homogeneity and gradient at sample points.

        Args:
            points (array_like): (m, n) sample points.
            rtol (float): relative tolerance of the checks.

        Return:
            dict: worst deviation per check.

        Raises:
            DomainError: if a declared property does not hold.
        """
        x = as_points(points, self.dimension)
        report = dict()
        if self.convexity_lower is not None:
            smallest = np.linalg.eigvalsh(self.hessians(x))[:, 0]
            report['convexity'] = float(np.min(smallest - self.convexity_lower))
            if report['convexity'] < -rtol * (1.0 + abs(self.convexity_lower)):
                logger.log_and_raise(
                    DomainError, 'Potential {}: Hessian eigenvalue {} below declared R={}.'.format(
                        self.name, float(np.min(smallest)), self.convexity_lower
                    )
                )
        if self.homogeneity_q is not None:
            worst = 0.0
            for scale in (0.5, 2.0, 3.0):
                lhs = self.homogeneous_values(scale * x)
                rhs = scale**self.homogeneity_q * self.homogeneous_values(x)
                worst = max(worst, float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(rhs)))))
            report['homogeneity'] = worst
            if worst > rtol:
                logger.log_and_raise(
                    DomainError, 'Potential {} is not {}-homogeneous, deviation {}.'.format(
                        self.name, self.homogeneity_q, worst
                    )
                )
        if self.gradient is not None:
            analytic = self.gradients(x)
            numeric = central_gradient(self.values, x)
            deviation = float(np.max(np.abs(analytic - numeric) / (1.0 + np.abs(analytic))))
            report['gradient'] = deviation
            if deviation > max(rtol, 1e-5):
                logger.log_and_raise(
                    DomainError, 'Potential {}: gradient disagrees with finite differences by {}.'.format(
                        self.name, deviation
                    )
                )
        return report


def potential_eval(p, x):
    """Evaluate a potential at one point.

    Args:
        p (Potential): the potential.
        x (array_like): a point of dimension n.

    Return:
        tuple: (value, gradient, hessian) as (float, (n,) array, (n, n) array).

    Raises:
        DomainError: if the value is not finite.
    """
    point = as_points(np.atleast_1d(np.asarray(x, dtype=float)), p.dimension)[:1]
    value = float(p.values(point)[0])
    if not math.isfinite(value):
        logger.log_and_raise(DomainError, 'Potential {} is not finite at {}.'.format(p.name, point[0].tolist()))
    return value, p.gradients(point)[0], p.hessians(point)[0]


class PotentialRegistry:
    """Class that maintains the named potential builders usable from scenario files."""
    builders: Dict[str, Callable] = dict()

    @classmethod
    def register(cls, name):
        """Register a potential builder.

        Args:
            name (str): registry id.

        Return:
            decorator (Callable): return the decorator to add the builder.
        """
        def decorator(func):
            cls.builders[name] = func
            return func

        return decorator

    @classmethod
    def names(cls):
        """Return the sorted registry ids."""
        return sorted(cls.builders)

    @classmethod
    def create(cls, name, **parameters):
        """Build a potential by registry id.

        Args:
            name (str): registry id.
            parameters (dict): builder parameters.

        Return:
            Potential: the built potential.

        Raises:
            DomainError: if the id is unknown.
        """
        if name not in cls.builders:
            logger.log_and_raise(
                DomainError, 'Unknown potential {}, registered potentials: {}.'.format(name, cls.names())
            )
        return cls.builders[name](**parameters)


def _sphere_area(n):
    """Surface area of the unit sphere in R^n."""
    return 2.0 * math.pi**(n / 2.0) / special.gamma(n / 2.0)


@PotentialRegistry.register('gaussian')
def gaussian_potential(mean=None, covariance=None, dimension=None):
    """V(x) = (x-m)^T Sigma^{-1} (x-m)/2 + log((2 pi)^n det Sigma)/2."""
    if mean is None and covariance is None:
        dimension = dimension or 1
    if mean is None:
        mean = np.zeros(dimension if dimension else np.asarray(covariance).shape[0])
    mean = np.atleast_1d(np.asarray(mean, dtype=float))
    n = mean.shape[0]
    covariance = np.eye(n) if covariance is None else np.atleast_2d(np.asarray(covariance, dtype=float))
    if covariance.shape != (n, n):
        logger.log_and_raise(
            DomainError, 'Covariance shape {} does not match mean of size {}.'.format(covariance.shape, n)
        )
    eigenvalues = np.linalg.eigvalsh(covariance)
    if not np.allclose(covariance, covariance.T) or eigenvalues[0] <= 0:
        logger.log_and_raise(
            DomainError, 'Covariance is not symmetric positive definite, smallest eigenvalue {}.'.format(eigenvalues[0])
        )
    precision = np.linalg.inv(covariance)
    precision = 0.5 * (precision + precision.T)
    beta = 0.5 * (n * math.log(2.0 * math.pi) + float(np.sum(np.log(eigenvalues))))

    def value(x):
        d = x - mean
        return 0.5 * np.einsum('mi,ij,mj->m', d, precision, d) + beta

    def gradient(x):
        return (x - mean) @ precision

    def hessian(x):
        return np.broadcast_to(precision, (x.shape[0], n, n)).copy()

    def conjugate(y):
        return y @ mean + 0.5 * np.einsum('mi,ij,mj->m', y, covariance, y) - beta

    centered = bool(np.allclose(mean, 0.0))
    return Potential(
        dimension=n,
        value=value,
        gradient=gradient,
        hessian=hessian,
        convexity_lower=float(1.0 / eigenvalues[-1]),
        convexity_upper=float(1.0 / eigenvalues[0]),
        homogeneity_q=2.0 if centered else None,
        normalization=beta,
        conjugate=conjugate,
        name='gaussian',
        parameters={
            'mean': mean,
            'covariance': covariance
        },
    )


@PotentialRegistry.register('power')
def power_potential(q=2.0, dimension=1):
    """V(x) = |x|^q / q + beta, q-homogeneous up to the normalization beta."""
    q, n = float(q), int(dimension)
    if q <= 1:
        logger.log_and_raise(DomainError, 'Power potential needs q > 1, got {}.'.format(q))
    beta = math.log(_sphere_area(n) * q**(n / q - 1.0) * special.gamma(n / q))
    p = q / (q - 1.0)

    def value(x):
        return np.linalg.norm(x, axis=1)**q / q + beta

    def gradient(x):
        r = np.linalg.norm(x, axis=1)
        with np.errstate(divide='ignore', invalid='ignore'):
            scale = np.where(r > 0, r**(q - 2.0), 0.0)
        return scale[:, None] * x

    def hessian(x):
        r = np.linalg.norm(x, axis=1)
        eye = np.eye(n)
        with np.errstate(divide='ignore', invalid='ignore'):
            radial = np.where(r > 0, r**(q - 2.0), 1.0 if q == 2 else (0.0 if q > 2 else np.inf))
            outer = np.where(r > 0, (q - 2.0) * r**(q - 4.0), 0.0)
        return radial[:, None, None] * eye + outer[:, None, None] * np.einsum('mi,mj->mij', x, x)

    def conjugate(y):
        return np.linalg.norm(y, axis=1)**p / p - beta

    return Potential(
        dimension=n,
        value=value,
        gradient=gradient,
        hessian=hessian,
        convexity_lower=1.0 if q == 2 else 0.0,
        convexity_upper=1.0 if q == 2 else None,
        homogeneity_q=q,
        normalization=beta,
        conjugate=conjugate,
        name='power',
        parameters={
            'q': q,
            'dimension': n
        },
    )


@PotentialRegistry.register('quartic')
def quartic_potential():
    """V(x) = x^4 + beta in one dimension."""
    beta = math.log(2.0 * special.gamma(1.25))

    def value(x):
        return x[:, 0]**4 + beta

    def gradient(x):
        return 4.0 * x**3

    def hessian(x):
        return (12.0 * x**2)[:, :, None]

    def conjugate(y):
        return 3.0 * (np.abs(y[:, 0]) / 4.0)**(4.0 / 3.0) - beta

    return Potential(
        dimension=1,
        value=value,
        gradient=gradient,
        hessian=hessian,
        convexity_lower=0.0,
        homogeneity_q=4.0,
        normalization=beta,
        conjugate=conjugate,
        doubling=True,
        name='quartic',
    )


@PotentialRegistry.register('gaussian_plus_power')
def gaussian_plus_power_potential(p=4.0, dimension=1):
    """V(x) = |x|^2/2 + |x|^p + Z_p with Z_p normalizing, Hess V >= Id for p >= 2."""
    p, n = float(p), int(dimension)
    if p < 2:
        logger.log_and_raise(DomainError, 'gaussian_plus_power needs p >= 2, got {}.'.format(p))
    radial_mass, _ = integrate.quad(lambda r: r**(n - 1) * math.exp(-(r * r / 2.0 + r**p)), 0.0, np.inf)
    z_p = math.log(_sphere_area(n) * radial_mass)

    def value(x):
        r = np.linalg.norm(x, axis=1)
        return 0.5 * r**2 + r**p + z_p

    def gradient(x):
        r = np.linalg.norm(x, axis=1)
        return (1.0 + p * r**(p - 2.0))[:, None] * x

    def hessian(x):
        r = np.linalg.norm(x, axis=1)
        eye = np.eye(n)
        with np.errstate(divide='ignore', invalid='ignore'):
            outer = np.where(r > 0, p * (p - 2.0) * r**(p - 4.0), 0.0)
        radial = 1.0 + p * r**(p - 2.0)
        return radial[:, None, None] * eye + outer[:, None, None] * np.einsum('mi,mj->mij', x, x)

    return Potential(
        dimension=n,
        value=value,
        gradient=gradient,
        hessian=hessian,
        convexity_lower=1.0,
        normalization=z_p,
        doubling=True,
        name='gaussian_plus_power',
        parameters={
            'p': p,
            'dimension': n
        },
    )


@PotentialRegistry.register('tabulated')
def tabulated_potential(x, values, normalize=True, convexity_lower=None):
    """One dimensional potential interpolated by a cubic spline through tabulated values.

    Outside the tabulated range the spline is extrapolated, so the table should
    cover the region carrying the mass.
    """
    knots = np.asarray(x, dtype=float)
    table = np.asarray(values, dtype=float)
    if knots.ndim != 1 or knots.shape != table.shape or knots.size < 4:
        logger.log_and_raise(DomainError, 'Tabulated potential needs matching 1D arrays of at least 4 points.')
    spline = CubicSpline(knots, table)
    first, second = spline.derivative(1), spline.derivative(2)
    beta = 0.0
    if normalize:
        mass, _ = integrate.quad(lambda t: math.exp(-float(spline(t))), knots[0], knots[-1], limit=200)
        beta = math.log(mass)
    if convexity_lower is None:
        fine = np.linspace(knots[0], knots[-1], 8 * knots.size)
        convexity_lower = float(np.min(second(fine)))

    return Potential(
        dimension=1,
        value=lambda t: spline(t[:, 0]) + beta,
        gradient=lambda t: first(t[:, 0])[:, None],
        hessian=lambda t: second(t[:, 0])[:, None, None],
        convexity_lower=convexity_lower,
        normalization=beta if normalize else None,
        name='tabulated',
        parameters={'knots': knots.size},
    )
