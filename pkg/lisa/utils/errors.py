from __future__ import annotations

from typing import Any, Optional


class LisaError(Exception):
    """Base class for every error raised by the lisa package."""

    def __init__(self, message: str, witness: Optional[dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.witness = witness or {}


class AmbientMismatch(LisaError):
    pass


class ValidationFailure(LisaError):
    pass


class NotSubalgebra(ValidationFailure):
    pass


class NotAnIdeal(ValidationFailure):
    pass


class LeibnizViolation(ValidationFailure):
    pass


class UnsupportedField(LisaError):
    pass


class EnumerationBoundExceeded(LisaError):
    pass


class PreconditionFailure(LisaError):
    def __init__(self, message: str, report: Any = None) -> None:
        super().__init__(message)
        self.report = report


class MalformedInput(LisaError):
    pass
