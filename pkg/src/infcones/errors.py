"""Exception hierarchy shared by every module."""

from __future__ import annotations


class InfconesError(Exception):
    """Base class for all library errors."""


class InputError(InfconesError, ValueError):
    """Malformed or inadmissible input (bad file, failed precondition)."""


class ParseError(InputError):
    """Polynomial text does not match the grammar."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class ContextMismatch(InputError):
    """Operands live in different variable contexts."""


class ResourceExceeded(InfconesError):
    """A Groebner computation ran past its step or degree budget.

    ``stage`` names the pipeline stage that was running, when known.
    """

    def __init__(self, message: str, stage: str | None = None):
        self.stage = stage
        if stage:
            message = f"{stage} exceeded budget: {message}"
        super().__init__(message)


class InvariantViolation(InfconesError, AssertionError):
    """An internal postcondition failed; this signals a bug, not bad input."""
