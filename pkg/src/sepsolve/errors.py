"""Exception hierarchy shared by every module of the solver suite."""

from __future__ import annotations


class SepsolveError(Exception):
    """Base class for all errors raised by this package."""


class NonInvertible(SepsolveError):
    """Attempted to invert zero in a prime field."""


class UnknownElement(SepsolveError):
    """A ground-set label was not found in the matroid."""


class NotIndependent(SepsolveError):
    """An operation required an independent set but received a dependent one."""


class RankExceeded(SepsolveError):
    """A truncation rank exceeded the matroid rank."""


class DuplicateLabel(SepsolveError):
    """A new ground-set label collides with an existing one."""


class TooLargeForOracle(SepsolveError):
    """Exhaustive verification was requested on a ground set beyond its bound."""


class NoFiniteCut(SepsolveError):
    """No finite vertex cut exists (a direct s->t arc is present)."""


class NotMinimumBudget(SepsolveError):
    """The budget does not equal the minimum cut value the operation requires."""


class InstanceTooLarge(SepsolveError):
    """The instance exceeds a configured size cap."""


class NotMinimalSeparator(SepsolveError):
    """A separator argument was expected to be minimal but is not."""


class TooLarge(SepsolveError):
    """A brute-force or enumeration request exceeds its size cap."""


class ParseError(SepsolveError):
    """An instance file is malformed."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class ValidationError(SepsolveError):
    """A parsed instance is structurally inconsistent."""


class InternalInvariantViolation(SepsolveError):
    """An invariant the underlying theory guarantees was observed to fail."""
