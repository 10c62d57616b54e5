# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Built-in closed-form Gaussian self-test suite."""

from dimbench.executor.executor import DimBenchExecutor
from dimbench.executor.scenario import Scenario

ORACLE_NAME = 'oracle'
ORACLE_DIMENSIONS = [1, 2, 5]
ORACLE_SHIFTS = [0.5, 1.0, 2.0]
ORACLE_FACTORS = [2, 5, 10]
ORACLE_TIMES = [0.05, 0.1, 0.25, 0.5, 1.0, 2.0]


def _translated(n, a):
    """Mean a·e1 in dimension n."""
    return [a] + [0.0] * (n - 1)


def oracle_document():
    """Scenario document of the closed-form suite.

    Translations of the standard Gaussian are equality cases of the dimensional
    log-Sobolev, Talagrand and HWI forms; linear and square test functions are the
    equality cases of the two Gaussian Brascamp-Lieb forms. The dynamics part runs
    on Mehler trajectories.

    Return:
        dict: scenario document.
    """
    measures, functions, items = dict(), dict(), list()
    for n in ORACLE_DIMENSIONS:
        mu = 'gamma_{}'.format(n)
        measures[mu] = {'kind': 'standard_gaussian', 'dimension': n}
        for i, a in enumerate(ORACLE_SHIFTS):
            nu = 'shifted_{}_{}'.format(n, i)
            measures[nu] = {'kind': 'gaussian', 'mean': _translated(n, a), 'variance': 1.0}
            label = 'n={} a={}'.format(n, a)
            items.extend(
                [
                    {
                        'id': 'lsi_dimensional',
                        'variant': 'gaussian_bl',
                        'label': label,
                        'equality': True,
                        'arguments': {
                            'nu': '@' + nu,
                            'mu': '@' + mu
                        },
                    },
                    {
                        'id': 'talagrand_dimensional',
                        'label': label,
                        'equality': True,
                        'arguments': {
                            'nu': '@' + nu,
                            'mu': '@' + mu
                        },
                    },
                    {
                        'id': 'hwi',
                        'label': label,
                        'equality': True,
                        'arguments': {
                            'f_measure': '@' + nu,
                            'mu': '@' + mu
                        },
                    },
                ]
            )
        for function, variant in (('linear', 'gaussian_spectral'), ('square', 'gaussian_dim')):
            name = '{}_{}'.format(function, n)
            functions[name] = {'id': function, 'parameters': {'dimension': n}}
            items.append(
                {
                    'id': 'brascamp_lieb',
                    'variant': variant,
                    'label': 'n={} f={}'.format(n, function),
                    'equality': True,
                    'arguments': {
                        'f': '@' + name,
                        'mu': '@' + mu
                    },
                }
            )
    for N in ORACLE_FACTORS:
        items.append(
            {
                'id': 'tensorization',
                'label': 'N={}'.format(N),
                'arguments': {
                    'nu': '@shifted_1_1',
                    'mu': '@gamma_1',
                    'N': N
                },
            }
        )
    measures.update(
        {
            'wide': {
                'kind': 'gaussian',
                'mean': [0.0],
                'variance': 4.0
            },
            'narrow': {
                'kind': 'gaussian',
                'mean': [0.0],
                'variance': 0.25
            },
        }
    )
    mehler = {'scheme': 'mehler'}
    trajectories = {
        'wide_flow': {
            'potential': '@ou',
            'init': '@wide',
            't_grid': {
                'start': 0.0,
                'stop': 2.0,
                'num': 801
            },
            'solver': mehler
        },
        'standard_flow': {
            'potential': '@ou',
            'init': '@gamma_1',
            't_grid': {
                'start': 0.0,
                'stop': 2.0,
                'num': 801
            },
            'solver': mehler
        },
        'narrow_flow': {
            'potential': '@ou',
            'init': '@narrow',
            't_grid': {
                'start': 0.0,
                'stop': 2.0,
                'num': 41
            },
            'solver': mehler
        },
    }
    items.extend(
        [
            {
                'id': 'contraction',
                'label': 'N(0,4) vs N(0,1)',
                'arguments': {
                    'u': '@wide_flow',
                    'v': '@standard_flow'
                },
            },
            {
                'id': 'improved_rate',
                'label': 'N(0,0.25)',
                'arguments': {
                    'u': '@narrow_flow'
                },
            },
        ]
    )
    for n in ORACLE_DIMENSIONS:
        items.append(
            {
                'id': 'fundamental_entropy',
                'label': 'n={}'.format(n),
                'arguments': {
                    'n': n,
                    't': list(ORACLE_TIMES)
                },
            }
        )
    return {
        'name': ORACLE_NAME,
        'seed': 0,
        'potentials': {
            'ou': {
                'id': 'gaussian',
                'parameters': {
                    'dimension': 1
                }
            }
        },
        'measures': measures,
        'functions': functions,
        'trajectories': trajectories,
        'items': items,
    }


def run_oracle(output_dir, jobs=None):
    """Run the closed-form suite and write its reports.

    Args:
        output_dir (str): directory of report.csv, report.json and dimbench.log.
        jobs (int, optional): worker count, the configured one if None.

    Return:
        ExitCode: SUCCESS iff every closed-form check holds.
    """
    return DimBenchExecutor(Scenario(oracle_document(), source=ORACLE_NAME), output_dir, jobs).run()
