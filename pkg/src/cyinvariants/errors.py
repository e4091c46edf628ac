"""Exception hierarchy shared by every module."""


class InvariantsError(Exception):
    """Base class for all errors raised by cyinvariants."""


class RankMismatchError(InvariantsError, ValueError):
    """Two lattice objects of different rank were combined."""


class DomainError(InvariantsError, ValueError):
    """An argument is outside the domain of the operation."""


class InconsistentInvariantsError(InvariantsError, ArithmeticError):
    """Input data cannot come from integer instanton numbers or a Type III contraction.

    Raised whenever an exact rational quantity that must be an integer turns
    out not to be one.
    """


class ValidationError(InvariantsError, ValueError):
    """A document or data record violates one of its invariants."""


class ParseError(ValidationError):
    """Malformed input text. Carries the line and column where parsing failed."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
