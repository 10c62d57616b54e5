# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Builders turning scenario declarations into potentials, measures, functions and trajectories."""

import numpy as np

from dimbench.common.errors import ScenarioError
from dimbench.common.utils import logger
from dimbench.dynamics import SolverConfig, SolverScheme, fp_solve, langevin_simulate
from dimbench.measures import FunctionRegistry, GridSpec, Measure, ParticleCloud, PotentialRegistry, \
    build_from_potential, build_gaussian, discretize, perturb_density, sample, standard_gaussian, tensor_power

REFERENCE_PREFIX = '@'
SECTIONS = ['potentials', 'measures', 'functions', 'trajectories']
MEASURE_KINDS = [
    'gaussian', 'standard_gaussian', 'from_potential', 'discretize', 'tensor_power', 'perturb', 'sample', 'particles'
]


def is_reference(value):
    """Whether a scenario value names another declared object."""
    return isinstance(value, str) and value.startswith(REFERENCE_PREFIX) and len(value) > 1


def references(value):
    """All reference names found in a nested scenario value."""
    if is_reference(value):
        return [value[1:]]
    if isinstance(value, dict):
        return [name for v in value.values() for name in references(v)]
    if isinstance(value, list):
        return [name for v in value for name in references(v)]
    return []


def build_grid(spec, dimension=1):
    """GridSpec from {half_width, count[, dimension]} or {lower, upper, counts}."""
    if spec is None:
        return None
    if 'half_width' in spec:
        return GridSpec.symmetric(float(spec['half_width']), int(spec['count']), int(spec.get('dimension', dimension)))
    return GridSpec(spec['lower'], spec['upper'], spec['counts'])


def build_t_grid(spec):
    """Record times from a list or from {start, stop, num}."""
    if isinstance(spec, dict):
        return np.linspace(float(spec['start']), float(spec['stop']), int(spec['num']))
    return np.asarray(spec, dtype=float)


class ObjectResolver:
    """Builds the declared objects of a scenario on demand, each one once.

    References are written '@name' and may point to any section; names are unique
    across sections.
    """
    def __init__(self, declarations, seed=None):
        """Constructor.

        Args:
            declarations (dict): plain dict with the potentials, measures, functions and trajectories sections.
            seed (int, optional): seed used by stochastic declarations without their own.
        """
        self.__declarations = dict()
        for section in SECTIONS:
            for name, spec in (declarations.get(section) or {}).items():
                self.__declarations[name] = (section, spec)
        self.__seed = seed
        self.__built = dict()
        self.__building = set()

    @property
    def names(self):
        """Declared object names."""
        return sorted(self.__declarations)

    def get(self, name):
        """Built object of a declared name.

        Raises:
            ScenarioError: for unknown names or circular references.
        """
        if name in self.__built:
            return self.__built[name]
        if name not in self.__declarations:
            raise ScenarioError('Unknown reference @{}.'.format(name), ['unknown reference @{}'.format(name)])
        if name in self.__building:
            raise ScenarioError('Circular reference @{}.'.format(name), ['circular reference @{}'.format(name)])
        self.__building.add(name)
        section, spec = self.__declarations[name]
        kind = 'trajectory' if section == 'trajectories' else section[:-1]
        builder = getattr(self, '_build_{}'.format(kind))
        logger.debug('Building %s %s.', kind, name)
        self.__built[name] = builder(name, spec)
        self.__building.discard(name)
        return self.__built[name]

    def resolve(self, value):
        """Replace every reference in a nested value by its object."""
        if is_reference(value):
            return self.get(value[1:])
        if isinstance(value, dict):
            return {k: self.resolve(v) for k, v in value.items()}
        if isinstance(value, list):
            return [self.resolve(v) for v in value]
        return value

    def _seed(self, spec):
        seed = spec.get('seed', self.__seed)
        if seed is None:
            raise ScenarioError('Stochastic declaration without seed.', ['missing seed in {}'.format(spec)])
        return int(seed)

    def _build_potential(self, name, spec):
        return PotentialRegistry.create(spec['id'], **self.resolve(dict(spec.get('parameters') or {})))

    def _build_function(self, name, spec):
        return FunctionRegistry.create(spec['id'], **self.resolve(dict(spec.get('parameters') or {})))

    def _build_measure(self, name, spec):
        kind = spec.get('kind')
        if kind == 'gaussian':
            mean = np.atleast_1d(np.asarray(spec['mean'], dtype=float))
            if 'variance' in spec:
                covariance = float(spec['variance']) * np.eye(mean.size)
            else:
                covariance = spec.get('covariance', np.eye(mean.size))
            return build_gaussian(mean, covariance, label=name)
        if kind == 'standard_gaussian':
            return standard_gaussian(int(spec.get('dimension', 1))).with_label(name)
        if kind == 'from_potential':
            potential = self.resolve(spec['potential'])
            params = potential.gaussian_parameters
            if 'grid' not in spec and params is not None:
                return build_gaussian(params[0], params[1], label=name)
            return build_from_potential(potential, build_grid(spec['grid'], potential.dimension), label=name)
        if kind == 'discretize':
            base = self.resolve(spec['measure'])
            return discretize(base, build_grid(spec.get('grid'), base.base_dimension)).with_label(name)
        if kind == 'tensor_power':
            base = self.resolve(spec['measure'])
            return tensor_power(base, int(spec['count']), bool(spec.get('materialize', False))).with_label(name)
        if kind == 'perturb':
            base = self.resolve(spec['measure'])
            return perturb_density(base, self.resolve(spec['function']), float(spec['eps'])).with_label(name)
        if kind == 'sample':
            base = self.resolve(spec['measure'])
            cloud = sample(base, int(spec['count']), np.random.default_rng(self._seed(spec)))
            return Measure(cloud, label=name)
        if kind == 'particles':
            return Measure(ParticleCloud(spec['points'], spec.get('weights')), label=name)
        raise ScenarioError('Unknown measure kind {}.'.format(kind), ['measure {}: unknown kind {}'.format(name, kind)])

    def _build_trajectory(self, name, spec):
        potential = self.resolve(spec['potential'])
        init = self.resolve(spec['init'])
        t_grid = build_t_grid(spec['t_grid'])
        solver = dict(spec.get('solver') or {})
        scheme = SolverScheme(str(solver.get('scheme', SolverScheme.GRID_FV.value)))
        grid = build_grid(solver.get('grid'), potential.dimension)
        theta = int(solver.get('theta', 0))
        if scheme == SolverScheme.GRID_FV and 'dt' not in solver:
            config = SolverConfig.stable(grid, potential, float(solver.get('safety', 1.0)), theta)
        else:
            config = SolverConfig(
                scheme,
                dt=solver.get('dt'),
                grid=grid,
                particle_count=solver.get('particle_count'),
                theta=theta,
            )
        if scheme == SolverScheme.LANGEVIN_EM:
            return langevin_simulate(potential, init, t_grid, config, self._seed(spec))
        return fp_solve(potential, init, t_grid, config)
