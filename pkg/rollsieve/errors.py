# rollsieve - Exception hierarchy
from __future__ import annotations


class SieveError(Exception):
    """Base class for every error raised by rollsieve."""


class SieveRangeError(SieveError, ValueError):
    """An argument lies outside the range an operation accepts."""


class InvariantViolation(SieveError, RuntimeError):
    """Internal state contradicts a documented invariant. Always a bug."""
