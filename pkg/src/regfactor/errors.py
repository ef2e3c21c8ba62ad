"""Exception types shared across the package."""

from __future__ import annotations


class RegFactorError(Exception):
    """Base class for every error raised by this package."""


class InputError(RegFactorError):
    """Invalid user-supplied data: bad roots, malformed files, bad arguments."""


class ConstructionError(RegFactorError):
    """A structural invariant failed while assembling derived data.

    This signals a violation of the model (or a bug), never a user mistake.
    """


class BudgetError(RegFactorError):
    """An enumeration or solve exceeded its configured resource budget.

    ``partial`` holds whatever was computed before the budget ran out; it is
    flagged invalid and must not be treated as a complete answer.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = [] if partial is None else partial
        self.valid = False
