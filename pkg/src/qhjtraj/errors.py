"""Exception hierarchy shared by every module."""


class QHJError(Exception):
    """Base class for all package errors."""


class ValidationError(QHJError, ValueError):
    """An argument violates a documented precondition or invariant."""


class DomainError(QHJError, ValueError):
    """Evaluation requested outside the region where a quantity is defined."""


class BracketError(QHJError, ValueError):
    """An energy bracket does not contain the requested level."""


class ConvergenceError(QHJError, RuntimeError):
    """An iterative solve hit its iteration cap."""


class ResolutionError(QHJError, ValueError):
    """The grid is too coarse to resolve the zeros of a basis solution."""


class StepSizeError(QHJError, ValueError):
    """An energy finite-difference step fails its Richardson consistency check."""


class PrecisionWarning(UserWarning):
    """A result is valid but its error bar exceeds the nominal precision."""
