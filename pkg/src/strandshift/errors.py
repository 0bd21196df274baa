"""Shared exception types."""


class StrandShiftError(Exception):
    """Base class for all library errors."""


class SignatureMismatch(StrandShiftError):
    """Domain/range tuples do not line up for the attempted operation."""


class PreconditionError(StrandShiftError):
    """A move or operation was attempted on data that does not admit it."""


class LimitExceeded(StrandShiftError):
    """An internal search or completion limit was hit.

    The verdict is undecided, not negative; `limit` names the knob.
    """

    def __init__(self, limit: str, message: str = ""):
        self.limit = limit
        super().__init__(message or f"limit exceeded: {limit}")


class ParseError(StrandShiftError):
    """Malformed input file; carries 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")
