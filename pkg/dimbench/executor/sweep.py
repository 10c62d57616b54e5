# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Parameter sweeps over a scenario template."""

import copy
import itertools
import math
from pathlib import Path

import numpy as np

from dimbench.common.errors import ScenarioError
from dimbench.common.utils import DimBenchLogger, get_config, logger, read_json_file
from dimbench.executor.executor import evaluate_scenario, exit_code_of, summary_of
from dimbench.executor.report import write_csv, write_json
from dimbench.executor.scenario import Scenario

MAX_SWEPT_PARAMETERS = 2


def parameter_values(name, spec):
    """Values of one swept parameter from {values} or {start, stop, step}.

    A range holds start + i·step up to stop inclusive and is empty when stop < start.

    Raises:
        ScenarioError: for a malformed range.
    """
    if 'values' in spec:
        return [float(v) for v in spec['values']]
    try:
        start, stop, step = float(spec['start']), float(spec['stop']), float(spec['step'])
    except (KeyError, TypeError, ValueError) as e:
        raise ScenarioError('Malformed range of {}.'.format(name),
                            ['parameters.{}: needs values or start, stop and step'.format(name)]) from e
    if not step > 0:
        raise ScenarioError('Step of {} must be > 0.'.format(name), ['parameters.{}: step {} <= 0'.format(name, step)])
    if stop < start:
        return []
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [float(v) for v in np.round(start + step * np.arange(count), 12)]


class Sweep:
    """Cross product of one or two swept parameters over a scenario template.

    The template is a scenario document whose values may use ${sweep.<parameter>}.
    """
    def __init__(self, document, source='<memory>'):
        """Constructor.

        Args:
            document (dict): sweep document with name, parameters and template.
            source (str): file the document was read from, for diagnostics.

        Raises:
            ScenarioError: if the document is malformed or above the configured point cap.
        """
        problems = list()
        for key in ('name', 'parameters', 'template'):
            if key not in document:
                problems.append('{}: {}: missing'.format(source, key))
        if problems:
            raise ScenarioError('Sweep {} has {} problems.'.format(source, len(problems)), problems)
        parameters = document['parameters']
        if not isinstance(parameters, dict) or not 1 <= len(parameters) <= MAX_SWEPT_PARAMETERS:
            raise ScenarioError(
                'Sweep {} needs one or two parameters.'.format(source),
                ['{}: parameters: expected 1 to {} swept parameters'.format(source, MAX_SWEPT_PARAMETERS)]
            )
        self.__name = str(document['name'])
        self.__source = str(source)
        self.__template = document['template']
        self.__values = {name: parameter_values(name, spec) for name, spec in parameters.items()}
        cap = int(get_config().executor.sweep_cap)
        if self.size > cap:
            raise ScenarioError(
                'Sweep {} has {} points, above the cap {}.'.format(self.__name, self.size, cap),
                ['{}: {} points > sweep cap {}'.format(source, self.size, cap)]
            )

    @classmethod
    def from_file(cls, path):
        """Read a JSON sweep file."""
        return cls(read_json_file(path), source=Path(path))

    @property
    def name(self):
        """Sweep name."""
        return self.__name

    @property
    def size(self):
        """Number of points of the cross product."""
        return int(np.prod([len(v) for v in self.__values.values()]))

    def points(self):
        """Swept values per point, in cross product order."""
        names = list(self.__values)
        return [dict(zip(names, combo)) for combo in itertools.product(*(self.__values[n] for n in names))]

    def scenario(self, values, seed=None):
        """Scenario of one point, named after the sweep."""
        document = copy.deepcopy(self.__template)
        document['name'] = self.__name
        document['sweep'] = dict(values)
        return Scenario(document, source='{} {}'.format(self.__source, values), seed=seed)


def run_sweep(sweep, output_dir, jobs=1, seed=None):
    """Evaluate every point of a sweep and write the long format report.

    Args:
        sweep (Sweep): the sweep.
        output_dir (str or Path): directory of report.csv, report.json and dimbench.log.
        jobs (int): worker count per point.
        seed (int, optional): seed overriding the template one.

    Return:
        ExitCode: SUCCESS iff every verdict passes, also for an empty sweep.
    """
    output_path = Path(output_dir).expanduser().resolve()
    output_path.mkdir(parents=True, exist_ok=True)
    with DimBenchLogger.run_log(logger, output_path):
        rows = list()
        for point, values in enumerate(sweep.points()):
            logger.info('Sweep %s point %d/%d: %s.', sweep.name, point + 1, sweep.size, values)
            rows.extend(evaluate_scenario(sweep.scenario(values, seed), jobs, point=point, parameters=values))
        exit_code = exit_code_of(rows)
        write_csv(rows, output_path / 'report.csv')
        write_json(rows, output_path / 'report.json', summary_of(rows, exit_code))
    return exit_code
