"""Exception hierarchy.  Every error raised on purpose derives from LimconeError."""


class LimconeError(Exception):
    """Base class; the CLI maps these to exit code 1."""


class RankError(LimconeError):
    pass


class ShapeError(LimconeError):
    pass


class InvalidTree(LimconeError):
    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations or [])


class NodeError(LimconeError):
    pass


class PathError(LimconeError):
    pass


class Unsupported(LimconeError):
    pass


class NotConsistent(LimconeError):
    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class DepthError(LimconeError):
    pass


class SystemError_(LimconeError):
    """Two objects live over different direct systems."""


class ZeroVector(LimconeError):
    pass


class TooLarge(LimconeError):
    pass


class RealizationBug(LimconeError):
    pass


class NotMaximalAbelian(LimconeError):
    pass


class SpecParseError(LimconeError):
    """Malformed input file; carries a line/column when known."""

    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
