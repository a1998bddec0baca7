"""Exception hierarchy shared by every qalpha module."""


class QAlphaError(Exception):
    """Base class for all errors raised by qalpha."""


class DomainError(QAlphaError, ValueError):
    """An argument lies outside the domain of an operation."""


class PoleAtOneError(QAlphaError, ArithmeticError):
    """The q -> 1 limit of a rational function does not exist."""


class DivisibilityError(QAlphaError, ArithmeticError):
    """An exact polynomial division left a nonzero remainder."""


class BadSpecializationError(QAlphaError, ArithmeticError):
    """Specializing q (or alpha) to a number hit a zero denominator."""


class ConsistencyError(QAlphaError, AssertionError):
    """Two routes that must agree produced different results."""


class BoundError(QAlphaError, ValueError):
    """A size or degree guard was exceeded."""


class ParseError(QAlphaError, ValueError):
    """Malformed expression; ``position`` is the 0-based column of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
