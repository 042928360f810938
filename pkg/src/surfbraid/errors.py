"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class BraidError(Exception):
    """Base class for domain errors (CLI exit status 1).

    ``entry`` is the 1-based position of the offending tuple entry, when known.
    """

    def __init__(self, message: str = "", *, entry: int | None = None):
        super().__init__(message)
        self.entry = entry


class DegreeMismatch(BraidError):
    pass


class RankMismatch(BraidError):
    pass


class IndexOutOfRange(BraidError):
    pass


class PositionOutOfRange(BraidError):
    pass


class NonSimpleEntry(BraidError):
    pass


class BoundaryNotTrivial(BraidError):
    pass


class InternalParityViolation(BraidError):
    """A component carries an odd number of branch points; validation let a bad tuple through."""


class BudgetExceeded(BraidError):
    pass


class InapplicableMove(BraidError):
    def __init__(self, position: int, message: str):
        super().__init__(f"move {position}: {message}")
        self.position = position


class DocumentError(BraidError):
    """Malformed tuple document or move script."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
