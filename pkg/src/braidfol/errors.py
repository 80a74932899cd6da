"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class BraidfolError(Exception):
    """Base class for all package errors."""


class ParseError(BraidfolError, ValueError):
    """Malformed braid text."""


class NotAKnot(BraidfolError):
    """The braid closure has more than one component."""


class NoSuchGenerator(BraidfolError):
    """A generator that the operation needs does not occur in the word."""


class CannotCalibrate(BraidfolError):
    """Calibration needs at least two letters in the next column."""


class RequiresStandardForm(BraidfolError):
    """The operation is only defined on standardized words."""


class DuplicateChoice(BraidfolError):
    """The same plumbing arc was assigned twice."""


class ModelMismatch(BraidfolError):
    """An assignment was paired with a diagram it does not belong to."""


class DomainError(BraidfolError, ValueError):
    """Arguments outside the documented domain."""


class Delegated(BraidfolError):
    """Input lies outside the construction's scope (n <= 3 or genus < 2)."""


class FailsPrecheck(BraidfolError):
    """A necessary primality condition fails."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class CaseExhausted(BraidfolError):
    """No construction case produced a valid certificate."""

    def __init__(self, message: str, trace: list | None = None):
        super().__init__(message)
        self.trace = list(trace or [])


class TooLarge(BraidfolError):
    """Exhaustive search cap exceeded."""


class FormatError(BraidfolError, ValueError):
    """Malformed certificate payload."""
