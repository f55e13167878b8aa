"""
Exception hierarchy for the quantization discrimination toolkit.
"""

from typing import Optional


class QuantDiscriminationError(Exception):
    """Base class for all toolkit errors."""


class DomainError(QuantDiscriminationError, ValueError):
    """An input violates an operation's precondition."""


class DegenerateClassesError(DomainError):
    """The two classes cannot be told apart (equal means, zero spread, one class)."""


class SaturationError(QuantDiscriminationError, ArithmeticError):
    """Threshold so extreme that the quantized distribution collapses."""


class DatasetFormatError(QuantDiscriminationError):
    """A dataset CSV file could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class SchemaError(QuantDiscriminationError):
    """A sweep CSV does not match any known table layout."""

    def __init__(self, message: str, column: Optional[str] = None):
        self.column = column
        super().__init__(message)
