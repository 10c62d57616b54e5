# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Scenario files: loading, validation and the items they declare."""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from dimbench.common.errors import ScenarioError
from dimbench.common.utils import logger, read_json_file
from dimbench.executor.builders import MEASURE_KINDS, SECTIONS, ObjectResolver, references
from dimbench.inequalities import InequalityRegistry
from dimbench.measures import FunctionRegistry, PotentialRegistry
from dimbench.dynamics import SolverScheme

_MEASURE_SOURCES = {
    'from_potential': ['potential'],
    'discretize': ['measure'],
    'tensor_power': ['measure', 'count'],
    'perturb': ['measure', 'function', 'eps'],
    'sample': ['measure', 'count'],
    'gaussian': ['mean'],
    'particles': ['points'],
}


@dataclass
class ScenarioItem:
    """One catalogue evaluation requested by a scenario."""
    index: int
    id: str
    arguments: dict = field(default_factory=dict)
    variant: Optional[str] = None
    tolerance: Optional[float] = None
    label: str = ''
    equality: bool = False


class Scenario:
    """A validated scenario with its declared objects and items.

    The document is resolved through OmegaConf once, so sweep templates can use
    ${sweep.<parameter>} interpolation.
    """
    def __init__(self, document, source='<memory>', seed=None):
        """Constructor.

        Args:
            document (dict or DictConfig): scenario document.
            source (str): file the document was read from, for diagnostics.
            seed (int, optional): seed overriding the scenario one.

        Raises:
            ScenarioError: if the document does not validate.
        """
        self.__source = str(source)
        try:
            config = OmegaConf.create(document)
            self.__document = OmegaConf.to_container(config, resolve=True)
        except OmegaConfBaseException as e:
            raise ScenarioError('Failed to resolve {}.'.format(source), ['{}: {}'.format(source, e)]) from e
        if not isinstance(self.__document, dict):
            raise ScenarioError(
                'Scenario {} is not an object.'.format(source), ['{}: top level must be an object'.format(source)]
            )
        if seed is not None:
            self.__document['seed'] = int(seed)
        diagnostics = self.diagnose()
        if diagnostics:
            for diagnostic in diagnostics:
                logger.error('%s', diagnostic)
            raise ScenarioError('Scenario {} has {} problems.'.format(source, len(diagnostics)), diagnostics)

    @classmethod
    def from_file(cls, path, seed=None):
        """Read and validate a JSON scenario file."""
        return cls(read_json_file(path), source=Path(path), seed=seed)

    @property
    def name(self):
        """Scenario name."""
        return str(self.__document['name'])

    @property
    def seed(self):
        """Scenario seed, None when absent."""
        return self.__document.get('seed')

    @property
    def document(self):
        """The resolved document."""
        return self.__document

    @property
    def items(self):
        """ScenarioItem list in declaration order."""
        items = list()
        for index, spec in enumerate(self.__document.get('items') or []):
            items.append(
                ScenarioItem(
                    index=index,
                    id=spec['id'],
                    arguments=dict(spec.get('arguments') or {}),
                    variant=spec.get('variant'),
                    tolerance=spec.get('tolerance'),
                    label=str(spec.get('label', '')),
                    equality=bool(spec.get('equality', False)),
                )
            )
        return items

    def resolver(self):
        """ObjectResolver over the declared objects."""
        return ObjectResolver(self.__document, seed=self.seed)

    def diagnose(self):
        """Problems of the document, one message per problem, empty when valid."""
        doc, src = self.__document, self.__source
        problems = list()
        if not isinstance(doc.get('name'), str) or not doc.get('name'):
            problems.append('{}: name: missing scenario name'.format(src))
        declared = dict()
        for section in SECTIONS:
            entries = doc.get(section) or {}
            if not isinstance(entries, dict):
                problems.append('{}: {}: must be an object of named declarations'.format(src, section))
                continue
            for name, spec in entries.items():
                if name in declared:
                    problems.append('{}: {}.{}: name already declared in {}'.format(src, section, name, declared[name]))
                declared[name] = section
                if not isinstance(spec, dict):
                    problems.append('{}: {}.{}: declaration must be an object'.format(src, section, name))
                    continue
                problems.extend('{}: {}.{}: {}'.format(src, section, name, p) for p in self.__check_declaration(
                    section, spec
                ))
        for section in SECTIONS:
            entries = doc.get(section) or {}
            for name, spec in (entries.items() if isinstance(entries, dict) else []):
                for ref in references(spec):
                    if ref not in declared:
                        problems.append('{}: {}.{}: unknown reference @{}'.format(src, section, name, ref))
        items = doc.get('items')
        if not isinstance(items, list) or not items:
            problems.append('{}: items: missing or empty item list'.format(src))
            items = []
        for index, spec in enumerate(items):
            where = '{}: items[{}]'.format(src, index)
            if not isinstance(spec, dict) or 'id' not in spec:
                problems.append('{}: missing item id'.format(where))
                continue
            arguments = spec.get('arguments') or {}
            problems.extend('{}: {}'.format(where, p) for p in InequalityRegistry.check_arguments(
                spec['id'], arguments, spec.get('variant')
            ))
            tolerance = spec.get('tolerance')
            if tolerance is not None and (not isinstance(tolerance, (int, float)) or math.isnan(tolerance)
                                          or tolerance < 0):
                problems.append('{}: tolerance must be a number >= 0, got {}'.format(where, tolerance))
            for ref in references(arguments):
                if ref not in declared:
                    problems.append('{}: unknown reference @{}'.format(where, ref))
        return problems

    def __check_declaration(self, section, spec):
        problems = list()
        doc_seed = self.__document.get('seed') is not None
        if section == 'potentials':
            if 'id' not in spec:
                problems.append('missing potential id')
            elif spec['id'] not in PotentialRegistry.names():
                problems.append('unknown potential id {}, registered: {}'.format(spec['id'], PotentialRegistry.names()))
        elif section == 'functions':
            if 'id' not in spec:
                problems.append('missing function id')
            elif spec['id'] not in FunctionRegistry.names():
                problems.append('unknown function id {}, registered: {}'.format(spec['id'], FunctionRegistry.names()))
        elif section == 'measures':
            kind = spec.get('kind')
            if kind not in MEASURE_KINDS:
                problems.append('unknown measure kind {}, expected one of {}'.format(kind, MEASURE_KINDS))
            for key in _MEASURE_SOURCES.get(kind, []):
                if key not in spec:
                    problems.append('measure kind {} needs {}'.format(kind, key))
            if kind == 'from_potential' and 'potential' in spec and not references(spec['potential']):
                problems.append('potential must be a reference, got {}'.format(spec['potential']))
            if kind == 'sample' and not (doc_seed or 'seed' in spec):
                problems.append('sampled measure needs a seed')
        elif section == 'trajectories':
            for key in ('potential', 'init', 't_grid'):
                if key not in spec:
                    problems.append('trajectory needs {}'.format(key))
            scheme = (spec.get('solver') or {}).get('scheme', SolverScheme.GRID_FV.value)
            if scheme not in SolverScheme.get_values():
                problems.append(
                    'unknown solver scheme {}, expected one of {}'.format(scheme, SolverScheme.get_values())
                )
            if scheme == SolverScheme.LANGEVIN_EM.value and not (doc_seed or 'seed' in spec):
                problems.append('langevin_em trajectory needs a seed')
        return problems
