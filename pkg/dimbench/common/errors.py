# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Exceptions raised by DimBench.

Every class also derives from the closest builtin so callers can keep
catching ValueError/TypeError/RuntimeError.
"""


class DimBenchError(Exception):
    """Base class of all DimBench errors."""


class DomainError(DimBenchError, ValueError):
    """Argument outside the domain of a formula."""


class RepresentationError(DimBenchError, TypeError):
    """Measure representation not supported by the requested operation."""


class AbsoluteContinuityError(DimBenchError, ValueError):
    """The first measure charges a region where the reference measure vanishes."""


class GridError(DimBenchError, ValueError):
    """Grid too small, empty, or too large to materialize."""


class ConvergenceError(DimBenchError, RuntimeError):
    """Iterative solver did not reach its tolerance."""


class LegendreBoundaryError(DimBenchError, RuntimeError):
    """Legendre supremum attained on the search box boundary."""


class StabilityError(DimBenchError, ValueError):
    """Explicit time step above the stability bound."""


class SolverFault(DimBenchError, RuntimeError):
    """Solver state became invalid during time stepping."""


class PreconditionError(DimBenchError, ValueError):
    """Hypothesis of an audit is violated."""


class ScenarioError(DimBenchError, ValueError):
    """Scenario or sweep file failed to parse or validate."""
    def __init__(self, message, diagnostics=None):
        """Constructor.

        Args:
            message (str): summary message.
            diagnostics (list, optional): detailed diagnostics, one string per problem. Defaults to None.
        """
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])
