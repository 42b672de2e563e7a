"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class GraphError(ValueError):
    """Invalid graph data or a query about a vertex the graph does not have."""


class ParseError(GraphError):
    """Malformed graph text. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """An operation's hypothesis does not hold on the given input."""

    def __init__(self, message: str, actual: int | None = None) -> None:
        self.actual = actual
        super().__init__(message)


class GraphTooLargeError(PreconditionError):
    """Input exceeds a size guard (oracle enumeration, diamond order, scans)."""
