# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Scalar test functions f used by Poincaré, Brascamp-Lieb and perturbation experiments."""

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np
from numpy.polynomial import HermiteE, Polynomial

from dimbench.common.errors import DomainError
from dimbench.common.utils import logger
from dimbench.measures.potential import as_points, central_gradient


@dataclass(frozen=True, eq=False)
class ScalarFunction:
    """Vectorized function R^n -> R with an optional analytic gradient."""
    dimension: int
    value: Callable[[np.ndarray], np.ndarray]
    gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = 'custom'
    parameters: Dict = field(default_factory=dict)

    def __call__(self, x):
        """Evaluate on (m, n) points."""
        x = as_points(x, self.dimension)
        return np.asarray(self.value(x), dtype=float).reshape(x.shape[0])

    def gradients(self, x):
        """Gradient on (m, n) points, central differences when not analytic."""
        x = as_points(x, self.dimension)
        if self.gradient is None:
            return central_gradient(self, x)
        return np.asarray(self.gradient(x), dtype=float).reshape(x.shape)


class FunctionRegistry:
    """Class that maintains the named test functions usable from scenario files."""
    builders: Dict[str, Callable] = dict()

    @classmethod
    def register(cls, name):
        """Register a test function builder.

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
    def create(cls, name, dimension=1, potential=None, **parameters):
        """Build a test function by registry id.

        Args:
            name (str): registry id.
            dimension (int): space dimension.
            potential (Potential, optional): potential for the ids that need one.
            parameters (dict): builder parameters.

        Return:
            ScalarFunction: the built function.
        """
        if name not in cls.builders:
            logger.log_and_raise(DomainError, 'Unknown test function {}, registered: {}.'.format(name, cls.names()))
        if potential is not None:
            parameters['potential'] = potential
        return cls.builders[name](dimension=int(dimension), **parameters)


@FunctionRegistry.register('linear')
def linear_function(dimension=1, a=None):
    """f(x) = a·x, a = (1, 0, ...) by default."""
    a = np.eye(dimension)[0] if a is None else np.atleast_1d(np.asarray(a, dtype=float))
    if a.size != dimension:
        logger.log_and_raise(DomainError, 'Linear coefficient of size {} in dimension {}.'.format(a.size, dimension))
    return ScalarFunction(
        dimension, lambda x: x @ a, lambda x: np.broadcast_to(a, x.shape).copy(), 'linear', {'a': a.tolist()}
    )


@FunctionRegistry.register('square')
def square_function(dimension=1):
    """f(x) = |x|^2."""
    return ScalarFunction(dimension, lambda x: np.sum(x * x, axis=1), lambda x: 2.0 * x, 'square')


def _univariate(dimension, series, name, parameters):
    if dimension != 1:
        logger.log_and_raise(DomainError, 'Test function {} is one dimensional.'.format(name))
    derivative = series.deriv()
    return ScalarFunction(1, lambda x: series(x[:, 0]), lambda x: derivative(x[:, 0])[:, None], name, parameters)


@FunctionRegistry.register('hermite')
def hermite_function(dimension=1, k=1):
    """Probabilists' Hermite polynomial He_k, centered under the standard Gaussian for k >= 1."""
    if int(k) < 0:
        logger.log_and_raise(DomainError, 'Hermite degree must be >= 0, got {}.'.format(k))
    return _univariate(dimension, HermiteE.basis(int(k)), 'hermite', {'k': int(k)})


@FunctionRegistry.register('polynomial')
def polynomial_function(dimension=1, coefficients=(0.0, 1.0)):
    """Polynomial sum c_k x^k with increasing-degree coefficients."""
    return _univariate(
        dimension, Polynomial(np.asarray(coefficients, dtype=float)), 'polynomial',
        {'coefficients': list(coefficients)}
    )


@FunctionRegistry.register('potential')
def potential_function(dimension=1, potential=None):
    """f = V."""
    if potential is None:
        logger.log_and_raise(DomainError, 'Test function potential needs the measure potential.')
    return ScalarFunction(potential.dimension, potential.values, potential.gradients, 'potential')


@FunctionRegistry.register('potential_gradient')
def potential_gradient_function(dimension=1, potential=None, a=0.0, b=None):
    """f(x) = a + b·grad V(x), the equality family of the Brascamp-Lieb inequality."""
    if potential is None:
        logger.log_and_raise(DomainError, 'Test function potential_gradient needs the measure potential.')
    dimension = potential.dimension
    b = np.eye(dimension)[0] if b is None else np.atleast_1d(np.asarray(b, dtype=float))

    def value(x):
        return a + potential.gradients(x) @ b

    def gradient(x):
        return potential.hessians(x) @ b

    return ScalarFunction(dimension, value, gradient, 'potential_gradient', {'a': float(a), 'b': b.tolist()})
