"""Exception hierarchy shared by every stage of the engine."""


class PulseError(Exception):
    """Base class for all errors raised by pulsetags."""


class ValidationError(PulseError, ValueError):
    """Input violates a documented precondition or invariant."""


class ParseError(PulseError, ValueError):
    """A file could not be parsed. ``line`` is 1-based when known."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class MigrationError(PulseError):
    """A persisted bundle was written by an incompatible tool version."""
