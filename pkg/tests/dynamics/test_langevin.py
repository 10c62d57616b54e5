# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for the Langevin particle simulation."""

import math
import unittest

import numpy as np

from dimbench.common.errors import DomainError, RepresentationError, SolverFault
from dimbench.dynamics import SolverConfig, SolverScheme, langevin_simulate
from dimbench.dynamics.langevin import langevin_target
from dimbench.measures import MeasureKind, PotentialRegistry, build_gaussian


class LangevinTestCase(unittest.TestCase):
    """A class for Langevin simulation test cases."""
    def setUp(self):
        """Method called to prepare the test fixture."""
        self.potential = PotentialRegistry.create('gaussian', dimension=1)
        self.init = build_gaussian([2.0], [[1.0]])
        self.config = SolverConfig(SolverScheme.LANGEVIN_EM, dt=0.01, particle_count=5000)

    def test_relaxation(self):
        """Test the particles relax towards gamma at the Ornstein-Uhlenbeck rate."""
        trajectory = langevin_simulate(self.potential, self.init, [0.0, 1.0], self.config, seed=7)
        w2 = trajectory.column('W2')
        self.assertAlmostEqual(w2[0], 2.0, delta=0.08)
        self.assertAlmostEqual(w2[1], 2.0 * math.exp(-1.0), delta=0.08)
        self.assertTrue(np.isnan(trajectory.column('H')).all())
        self.assertEqual(trajectory.states[-1].kind, MeasureKind.PARTICLES)
        self.assertEqual(trajectory.seed, 7)

    def test_seed(self):
        """Test a fixed seed reproduces the records."""
        first = langevin_simulate(self.potential, self.init, [0.0, 0.5], self.config, seed=3)
        second = langevin_simulate(self.potential, self.init, [0.0, 0.5], self.config, seed=3)
        np.testing.assert_array_equal(first.column('W2'), second.column('W2'))

    def test_overflow(self):
        """Test a blow-up is reported as a solver fault."""
        config = SolverConfig(SolverScheme.LANGEVIN_EM, dt=1.0, particle_count=1000)
        with self.assertRaises(SolverFault):
            langevin_simulate(PotentialRegistry.create('quartic'), self.init, [0.0, 10.0], config, seed=0)

    def test_invalid(self):
        """Test configuration and dimension checks."""
        with self.assertRaises(DomainError):
            langevin_simulate(self.potential, self.init, [0.0, 1.0], SolverConfig(SolverScheme.MEHLER), seed=0)
        with self.assertRaises(DomainError):
            langevin_simulate(self.potential, build_gaussian([0.0, 0.0], np.eye(2)), [0.0, 1.0], self.config, seed=0)

    def test_target(self):
        """Test the reference measure of the records."""
        self.assertEqual(langevin_target(self.potential).kind, MeasureKind.GAUSSIAN)
        self.assertEqual(langevin_target(PotentialRegistry.create('quartic')).kind, MeasureKind.GRID)
        with self.assertRaises(RepresentationError):
            langevin_target(PotentialRegistry.create('power', q=4.0, dimension=2))
