# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tolerance policy turning the numerical evidence of an evaluation into a tolerance.

Analytic-only evaluations get the analytic tolerance. A grid ingredient widens it to
max(floor, factor·h²·(|lhs| + |rhs| + 1)), a particle ingredient to a multiple of the
Monte Carlo standard error and an entropic transport estimate to a relative tolerance.
A per-item override replaces the policy; the result is multiplied by the configured
tolerance scale.
"""

import math

from dimbench.common.enum import Enum
from dimbench.common.errors import DomainError
from dimbench.common.utils import get_config, logger
from dimbench.measures import MeasureKind


class Evidence(Enum):
    """The Enum class representing the numerical evidence kinds, weakest last."""
    ANALYTIC = 'analytic'
    GRID = 'grid'
    ENTROPIC = 'entropic'
    PARTICLES = 'particles'


_RANK = {evidence: rank for rank, evidence in enumerate(Evidence)}


class TolerancePolicy:
    """Accumulates the evidence of one evaluation and resolves its tolerance."""
    def __init__(self, override=None):
        """Constructor.

        Args:
            override (float, optional): per-item tolerance replacing the policy.
        """
        if override is not None and (math.isnan(float(override)) or float(override) < 0):
            logger.log_and_raise(DomainError, 'Tolerance override must be >= 0, got {}.'.format(override))
        self.__override = None if override is None else float(override)
        self.__observed = {Evidence.ANALYTIC}
        self.__spacing = 0.0
        self.__standard_error = 0.0

    def observe(self, *measures):
        """Record the representations of the measures used by the evaluation.

        Return:
            TolerancePolicy: self, for chaining.
        """
        for m in measures:
            if m is None:
                continue
            if m.kind == MeasureKind.GRID:
                self.observe_spacing(m.representation.grid.max_spacing)
            elif m.kind == MeasureKind.PARTICLES:
                self.__observed.add(Evidence.PARTICLES)
        return self

    def observe_spacing(self, spacing):
        """Record a grid ingredient of spacing h."""
        self.__observed.add(Evidence.GRID)
        self.__spacing = max(self.__spacing, float(spacing))
        return self

    def observe_w2(self, estimate):
        """Record the backend of a W2 estimate."""
        if str(estimate.backend) == Evidence.ENTROPIC.value:
            self.__observed.add(Evidence.ENTROPIC)
        return self

    def observe_standard_error(self, standard_error):
        """Record the Monte Carlo standard error of the compared quantity."""
        self.__observed.add(Evidence.PARTICLES)
        self.__standard_error = max(self.__standard_error, float(standard_error))
        return self

    @property
    def evidence(self):
        """The weakest evidence observed."""
        return max(self.__observed, key=lambda e: _RANK[e])

    @property
    def spacing(self):
        """Largest grid spacing observed."""
        return self.__spacing

    def tolerance(self, lhs, rhs):
        """Tolerance of the comparison lhs <= rhs.

        Args:
            lhs (float): left-hand side.
            rhs (float): right-hand side.

        Return:
            float: the tolerance, NaN when a side is NaN and no override is set.
        """
        cfg = get_config().inequalities
        scale = float(cfg.tolerance_scale)
        if self.__override is not None:
            return self.__override * scale
        magnitude = abs(lhs) + abs(rhs) + 1.0
        if math.isnan(magnitude):
            return math.nan
        if math.isinf(magnitude):
            magnitude = 1.0
        tolerance = float(cfg.analytic_tolerance)
        if Evidence.GRID in self.__observed:
            grid = float(cfg.grid_tolerance_factor) * self.__spacing**2 * magnitude
            tolerance = max(tolerance, float(cfg.grid_tolerance_floor), grid)
        if Evidence.ENTROPIC in self.__observed:
            tolerance = max(tolerance, float(cfg.entropic_tolerance) * magnitude)
        if Evidence.PARTICLES in self.__observed:
            tolerance = max(tolerance, float(cfg.particle_tolerance_factor) * self.__standard_error)
        return tolerance * scale
