"""Exception types shared across the library."""

from __future__ import annotations


class GeometryError(Exception):
    """Raised when an operation's geometric precondition is violated."""


class ParseError(Exception):
    """Raised on malformed textual input (scalars, scenarios, decompositions).

    Carries an optional source location so CLI diagnostics can point at the
    offending token.
    """

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col if col is not None else 0}: {message}"
        elif col is not None:
            message = f"col {col}: {message}"
        super().__init__(message)
