"""Exception types raised by quatsylv."""


class QuatError(Exception):
    """Base class for all library errors."""


class ShapeError(QuatError, ValueError):
    """Operands are not conformable."""


class Inconsistent(QuatError):
    """A solver was asked to solve a system that has no solution.

    ``certificate`` carries the failed checks when available.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class AdjointStructureError(QuatError, ValueError):
    """A complex matrix is not the adjoint image of a quaternion matrix."""


class ToleranceError(QuatError, ArithmeticError):
    """The numerical rank of a complex adjoint came out odd.

    Exact complex adjoints always have even rank, so an odd count means the
    singular-value cutoff landed inside a pair.
    """


class ParseError(QuatError, ValueError):
    """Malformed ``.qmat`` / ``.qsys`` input."""

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)


class CapExceeded(QuatError):
    """The vectorized oracle system would exceed the configured size cap."""
