"""
Exception hierarchy shared by the scoring engine, the dataset loader and the CLI.
"""
from typing import Optional, Sequence


class RankforgeError(Exception):
    """Base class for every error raised by rankforge."""


class ValidationError(RankforgeError):
    """Input data violates a structural rule (ranks, names, stage multisets)."""


class ParseError(ValidationError):
    """Malformed value in an event file."""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column '{column}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.row = row
        self.column = column


class DomainError(RankforgeError):
    """A score function was asked to evaluate a rank outside its domain."""


class ContractError(RankforgeError, ValueError):
    """Arguments disagree in shape, e.g. rank vector and weight vector lengths."""


class ConfigurationError(RankforgeError):
    """A scoring system, tie-break chain or simulation is misconfigured."""


class DegenerateFunctionError(RankforgeError):
    """The function is constant on the normalization endpoints."""


class TableDegeneracyError(RankforgeError):
    """Rounding made a scoring table lose strict monotonicity."""

    def __init__(self, message: str, colliding: Sequence[int] = ()):
        super().__init__(message)
        self.colliding = tuple(colliding)


class UsageError(RankforgeError):
    """Bad command-line input: unknown method, policy or flag value."""
