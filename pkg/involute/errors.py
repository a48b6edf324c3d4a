"""
Exception types shared by every involute module.

Law failures are never raised; they end up as report entries. These
exceptions cover bad input, unmet preconditions and violated conditions
that stop an operation from producing a result.
"""

from typing import Any, Optional


class InvoluteError(Exception):
    """Base class for all involute errors."""


class InputError(InvoluteError, ValueError):
    """Malformed input: bad encodings, unknown symbols, shape mismatches."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class ScalarMismatchError(InputError):
    """Two values built over different scalar semirings were combined."""


class PreconditionError(InvoluteError):
    """An operation was called outside its documented preconditions."""


class ConditionViolation(InvoluteError):
    """A required algebraic condition does not hold; carries a witness."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness
