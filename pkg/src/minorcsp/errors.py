"""Exception types shared across the package."""


class MinorCspError(Exception):
    """Base class for all library-specific errors."""


class UnknownPoint(MinorCspError):
    """An edge, part assignment, or relation tuple mentions a point id that
    is not a point of the pattern."""


class SamePartEdge(MinorCspError):
    """A positive or negative edge joins two points of the same part."""


class UnknownPart(MinorCspError):
    """A part id does not identify any part of the pattern."""


class SamePart(MinorCspError):
    """An operation on two distinct parts was given the same part twice."""


class UnknownName(MinorCspError):
    """No pattern with this name in the catalogue."""


class PreconditionViolated(MinorCspError):
    """A structural precondition of a constructor failed; the message names
    the failed clause."""


class ArityMismatch(MinorCspError):
    """Relation arities of an augmented pattern and its target disagree, or
    a tuple has the wrong length."""


class PartialTable(MinorCspError):
    """An operation table does not cover every required argument tuple."""


class BudgetExceeded(MinorCspError):
    """A search was given a smaller budget than the exact bound and found
    nothing within it, so no verdict can be certified."""


class SizeLimitExceeded(MinorCspError):
    """Input exceeds the configured size bound of an exponential search."""


class Disconnected(MinorCspError):
    """The graph was required to be connected but is not."""


class NotAcyclic(MinorCspError):
    """The constraint graph was required to be acyclic but is not."""


class CapExceeded(MinorCspError):
    """The assignment-space cap of the exhaustive solver was exceeded."""


class NotInClass(MinorCspError):
    """The instance fails the membership precondition of a class decider."""


class DomainMismatch(MinorCspError):
    """An operation table and an instance disagree about the domain."""


class BadDensity(MinorCspError):
    """Density parameter outside [0, 1]."""
