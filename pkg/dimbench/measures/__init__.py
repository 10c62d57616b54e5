# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Exposes the interface of DimBench measures and potentials."""

from dimbench.measures.potential import Potential, PotentialRegistry, potential_eval
from dimbench.measures.measure import GaussianAnalytic, GridDensity, GridSpec, Measure, MeasureKind, ParticleCloud
from dimbench.measures.builders import build_gaussian, build_from_potential, discretize, materialize_product, \
    perturb_density, sample, standard_gaussian, tensor_power
from dimbench.measures.functions import FunctionRegistry, ScalarFunction

__all__ = [
    'FunctionRegistry',
    'GaussianAnalytic',
    'GridDensity',
    'GridSpec',
    'Measure',
    'MeasureKind',
    'ParticleCloud',
    'Potential',
    'PotentialRegistry',
    'ScalarFunction',
    'build_from_potential',
    'build_gaussian',
    'discretize',
    'materialize_product',
    'perturb_density',
    'potential_eval',
    'sample',
    'standard_gaussian',
    'tensor_power',
]
