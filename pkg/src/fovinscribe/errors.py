"""Exception hierarchy.

Input problems derive from :class:`InputError` (also a ``ValueError``);
numerical failures derive from :class:`NumericalError`. The CLI maps the
former to exit code 2 and the latter to exit code 3.
"""


class FovError(Exception):
    """Base class for all package errors."""


class InputError(FovError, ValueError):
    pass


class NumericalError(FovError, ArithmeticError):
    pass


class NonSquare(InputError):
    pass


class NonHermitian(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class TooSmall(InputError):
    pass


class ZeroComponent(InputError):
    pass


class NonzeroDeletedEntry(InputError):
    pass


class NotUnit(InputError):
    pass


class NotOrthogonal(InputError):
    pass


class EmptyInput(InputError):
    pass


class Degenerate(InputError):
    pass


class BadSplit(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ShapeError(InputError):
    pass


class NoConvergence(NumericalError):
    pass


class NotNormal(NumericalError):
    pass


class MidpointAssertionFailed(FovError, AssertionError):
    """A DFT contact missed its edge midpoint; indicates a computation bug."""
