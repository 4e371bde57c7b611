"""Exception hierarchy shared by the loader, parser and engine."""

from __future__ import annotations


class PathAlgebraError(Exception):
    """Base class for all errors raised by this package."""


class GraphLoadError(PathAlgebraError):
    """Malformed graph file or a violated graph invariant."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class PositionError(PathAlgebraError, IndexError):
    """A node or edge position outside the path."""


class ConcatError(PathAlgebraError, ValueError):
    """Concatenation of paths whose endpoints do not meet."""


class QuerySyntaxError(PathAlgebraError):
    """Query text that does not conform to the grammar."""

    def __init__(
        self,
        message: str,
        line: int,
        column: int,
        expected: tuple[str, ...] = (),
    ):
        self.line = line
        self.column = column
        self.expected = expected
        text = f"line {line}, column {column}: {message}"
        if expected:
            text += f" (expected one of: {', '.join(expected)})"
        super().__init__(text)


class QuerySemanticError(QuerySyntaxError):
    """Well-formed query text with an invalid value, such as ``0 PATHS``."""


class DivergenceError(PathAlgebraError):
    """Unbounded walk recursion that keeps producing new paths."""

    def __init__(self, iterations: int, message: str | None = None):
        self.iterations = iterations
        super().__init__(
            message
            or f"walk recursion still producing new paths after {iterations} iterations; "
            "the input contains a cycle, supply a max depth"
        )
