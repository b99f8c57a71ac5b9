"""Exception hierarchy.

Semantic errors (invariant violations) and parse errors are kept apart so
the CLI can map them to distinct exit codes.
"""

from __future__ import annotations


class ContextRepError(Exception):
    """Base class for all toolkit errors."""


class InvalidCounts(ContextRepError):
    """Count data violates an invariant: zero total, negative or duplicate entries."""


class InvalidDistribution(ContextRepError):
    """Probability entries are out of [0, 1] or do not sum to one."""


class InvalidHiddenVariable(ContextRepError):
    """Hidden-variable point lies outside the outcome simplex."""


class InvalidFamily(ContextRepError):
    """Projector blocks do not form a valid partition of the ambient indices."""


class FamilyMismatch(ContextRepError):
    """Spectral family or phase assignment does not fit the distribution."""


class UnsupportedFamily(ContextRepError):
    """Operation is only defined for rank-1 projector blocks."""


class InvalidJointTable(ContextRepError):
    """Joint table is non-rectangular, negative, or does not sum to one."""


class InvalidPhases(ContextRepError):
    """Phase file entries do not match the outcome labels or are not numbers."""


class ParseError(ContextRepError):
    """Malformed input text; carries line/column diagnostics when known."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        elif line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
