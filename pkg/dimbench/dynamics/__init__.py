# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Exposes the Fokker-Planck solvers, trajectories and their audits."""

from dimbench.dynamics.trajectory import CSV_COLUMNS, SolverConfig, SolverScheme, Trajectory, stable_time_step, \
    state_record
from dimbench.dynamics.mehler import FundamentalEntropy, fundamental_entropy, mehler_trajectory, ou_evolve_gaussian
from dimbench.dynamics.fokker_planck import fp_solve
from dimbench.dynamics.langevin import langevin_simulate
from dimbench.dynamics.audits import audit_contraction, audit_entropy_smoothing, audit_fundamental_entropy, \
    audit_improved_rate

__all__ = [
    'CSV_COLUMNS', 'FundamentalEntropy', 'SolverConfig', 'SolverScheme', 'Trajectory', 'audit_contraction',
    'audit_entropy_smoothing', 'audit_fundamental_entropy', 'audit_improved_rate', 'fp_solve', 'fundamental_entropy',
    'langevin_simulate', 'mehler_trajectory', 'ou_evolve_gaussian', 'stable_time_step', 'state_record'
]
