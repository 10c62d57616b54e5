# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for the audits along Fokker-Planck trajectories."""

import math
import unittest

import numpy as np

from dimbench.common.errors import DomainError, PreconditionError
from dimbench.dynamics import SolverConfig, SolverScheme, audit_contraction, audit_entropy_smoothing, \
    audit_fundamental_entropy, audit_improved_rate, langevin_simulate, mehler_trajectory
from dimbench.dynamics.audits import improved_rate_bound
from dimbench.inequalities import InequalityRegistry
from dimbench.measures import PotentialRegistry, build_gaussian


class ContractionTestCase(unittest.TestCase):
    """A class for contraction audit test cases."""
    def setUp(self):
        """Method called to prepare the test fixture."""
        self.times = np.linspace(0.0, 1.0, 201)
        self.u = mehler_trajectory(build_gaussian([1.0], [[1.0]]), self.times)
        self.v = mehler_trajectory(build_gaussian([0.0], [[2.0]]), self.times)

    def test_gaussian_solutions(self):
        """Test both contractions between two exact solutions."""
        report = audit_contraction(self.u, self.v)
        self.assertTrue(report.passed)
        self.assertEqual(report.intermediates['R'], 1.0)
        self.assertEqual(set(report.table['check']), {'classical', 'dimensional', 'domination'})
        self.assertEqual(len(report.table), 3 * self.times.size)
        self.assertIn('evidence_grid', report.flags)

    def test_coarse_grid(self):
        """Test a coarse record grid is flagged."""
        times = np.linspace(0.0, 1.0, 11)
        u = mehler_trajectory(build_gaussian([1.0], [[1.0]]), times)
        v = mehler_trajectory(build_gaussian([0.0], [[2.0]]), times)
        self.assertIn('coarse_time_grid', audit_contraction(u, v).flags)

    def test_mismatched(self):
        """Test trajectories on different grids are refused."""
        other = mehler_trajectory(build_gaussian([0.0], [[2.0]]), [0.0, 1.0])
        with self.assertRaises(DomainError):
            audit_contraction(self.u, other)

    def test_particles(self):
        """Test particle trajectories carry no Ent_dx."""
        config = SolverConfig(SolverScheme.LANGEVIN_EM, dt=0.01, particle_count=1000)
        potential = PotentialRegistry.create('gaussian', dimension=1)
        u = langevin_simulate(potential, build_gaussian([1.0], [[1.0]]), [0.0, 0.5], config, seed=1)
        v = langevin_simulate(potential, build_gaussian([0.0], [[2.0]]), [0.0, 0.5], config, seed=2)
        with self.assertRaises(PreconditionError):
            audit_contraction(u, v)


class EntropySmoothingTestCase(unittest.TestCase):
    """A class for entropy smoothing audit test cases."""
    def setUp(self):
        """Method called to prepare the test fixture."""
        self.times = [0.0, 0.05, 0.1, 0.5, 1.0]

    def test_gaussian_bound(self):
        """Test the Gaussian bound and the gradient moment along an exact solution."""
        u = mehler_trajectory(build_gaussian([0.0], [[0.5]]), self.times)
        report = audit_entropy_smoothing(u, M=1.0)
        self.assertTrue(report.passed)
        self.assertEqual(set(report.table['check']), {'gaussian_bound', 'gradient_moment', 'entropy_monotone'})
        self.assertIn('proof_bound', report.table.columns)
        self.assertTrue(math.isnan(report.intermediates['fitted_c']))

    def test_precondition(self):
        """Test the Gaussian bound needs u_0(|x|^2) <= n."""
        u = mehler_trajectory(build_gaussian([0.0], [[2.0]]), self.times)
        with self.assertRaises(PreconditionError):
            audit_entropy_smoothing(u, gaussian=True)
        report = audit_entropy_smoothing(u)
        self.assertIn('gaussian_bound_precondition_failed', report.flags)
        self.assertNotIn('gaussian_bound', set(report.table['check']))


class ImprovedRateTestCase(unittest.TestCase):
    """A class for improved rate audit test cases."""
    def test_bound(self):
        """Test the closed form at t = 0 and its decay."""
        self.assertAlmostEqual(float(improved_rate_bound(0.3, 0.0)), 0.3, places=12)
        self.assertLess(float(improved_rate_bound(0.3, 1.0)), 0.3 * math.exp(-2.0))

    def test_gaussian_solution(self):
        """Test the improved rate along an exact solution with second moment 1."""
        u = mehler_trajectory(build_gaussian([0.5], [[0.75]]), [0.0, 0.25, 0.5, 1.0, 2.0])
        report = audit_improved_rate(u)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.intermediates['second_moment'], 1.0, places=12)
        self.assertAlmostEqual(report.intermediates['x0'], 0.5 * (0.25 + (math.sqrt(0.75) - 1.0)**2), places=12)
        self.assertIn('contraction_bound', report.table.columns)

    def test_precondition(self):
        """Test the second moment condition."""
        with self.assertRaises(PreconditionError):
            audit_improved_rate(mehler_trajectory(build_gaussian([0.0], [[2.0]]), [0.0, 1.0]))


class FundamentalEntropyTestCase(unittest.TestCase):
    """A class for fundamental solution audit test cases."""
    def test_bounds(self):
        """Test both bounds hold on several times."""
        report = audit_fundamental_entropy(2, [0.1, 0.5, 1.0, 5.0])
        self.assertTrue(report.passed)
        self.assertEqual(len(report.table), 8)

    def test_registry(self):
        """Test the audit through the registry."""
        evaluations = InequalityRegistry.evaluate('fundamental_entropy', n=1, t=[0.5])
        self.assertEqual([e.variant for e in evaluations], ['log_bound', 'rate_bound'])
        self.assertAlmostEqual(evaluations[0].lhs, 0.04540, places=4)
        self.assertTrue(all(e.passed for e in evaluations))
