"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all package-specific errors."""


class ParseError(Error, ValueError):
    """Malformed input text; carries a 1-based line/column when known."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class PreconditionError(Error, ValueError):
    """An operation was called on inputs outside its contract."""


class SpecMismatchError(Error, ValueError):
    """Operands belong to different ambient groups or rings."""
