# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Exposes the interface of DimBench functionals."""

from dimbench.functionals.quadrature import expectation, variance, second_moment, potential_expectation, \
    relative_score, log_density_gradient
from dimbench.functionals.entropy import relative_entropy, entropy_dx, fisher_information
from dimbench.functionals.transport import WassersteinBackend, TransportKind, TransportPlan, wasserstein2, \
    wasserstein2_estimate, brenier_transport
from dimbench.functionals.legendre import ConjugateValues, conjugate, legendre_transform
from dimbench.functionals.geodesic import GeodesicProfile, geodesic_profile

__all__ = [
    'ConjugateValues',
    'GeodesicProfile',
    'TransportKind',
    'TransportPlan',
    'WassersteinBackend',
    'brenier_transport',
    'conjugate',
    'entropy_dx',
    'expectation',
    'fisher_information',
    'geodesic_profile',
    'legendre_transform',
    'log_density_gradient',
    'potential_expectation',
    'relative_entropy',
    'relative_score',
    'second_moment',
    'variance',
    'wasserstein2',
    'wasserstein2_estimate',
]
