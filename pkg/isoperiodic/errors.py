# Copyright (c) the isoperiodic authors. All Rights Reserved
from typing import Any, Optional


class IsoperiodicError(Exception):
    """Base class for failures reported to the command line with a fixed exit code."""

    exit_code: int = 1


class InputError(IsoperiodicError):
    """Malformed or inconsistent input data."""

    exit_code = 2


class PreconditionError(IsoperiodicError):
    """Input is well formed but outside the domain of the operation."""

    exit_code = 3


class UnsupportedGenusError(PreconditionError):
    pass


class ResourceCapError(PreconditionError):
    """An enumeration hit its candidate cap; `partial` holds what was found so far."""

    def __init__(self, message: str, partial: Any = None) -> None:
        super().__init__(message)
        self.partial = partial


class VerificationError(IsoperiodicError):
    """A construction failed its own verification. Never expected on valid input."""

    exit_code = 4

    def __init__(self, message: str, case: Optional[str] = None) -> None:
        if case is not None:
            message = f"[case {case}] {message}"
        super().__init__(message)
        self.case = case
