"""Exception types raised across the package."""


class SawlabError(Exception):
    """Base class for all package errors."""


class OccupiedError(SawlabError):
    """A step would revisit a vertex already on the walk."""


class DomainError(SawlabError, ValueError):
    """An argument or lattice point lies outside the admissible domain."""


class NotClosableError(SawlabError):
    """The walk end-point is not adjacent to its origin."""


class BudgetError(SawlabError):
    """The estimated enumeration cost exceeds the configured ceiling."""


class CoverageError(SawlabError):
    """A table does not cover the index range a derived quantity needs."""


class InsufficientDataError(SawlabError, ValueError):
    """A series is too short for the requested estimate."""


class AbsentPerimeterError(SawlabError, KeyError):
    pass


class AbsentDisplacementError(SawlabError, KeyError):
    pass


class AbsentLengthError(SawlabError, KeyError):
    pass


class BoundaryVertexError(SawlabError, ValueError):
    """The vertex does not have three incident mid-edges inside the domain."""


class ToleranceError(SawlabError):
    """Quadrature refinement did not reach the requested tolerance."""


class ConvergenceError(SawlabError):
    """A Monte Carlo chain mixed too poorly to be trusted."""
