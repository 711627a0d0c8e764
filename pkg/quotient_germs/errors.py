"""
Exception hierarchy for quotient_germs.
"""

from typing import Optional


class QuotientGermsError(Exception):
    """Base class for every error raised by quotient_germs."""


class SingularMatrixError(QuotientGermsError):
    """The coefficient matrix of a linear system has determinant zero."""


class NotSymmetricError(QuotientGermsError):
    """A symmetric matrix was required."""


class InvalidParametersError(QuotientGermsError, ValueError):
    """Family parameters (n, q, m, ...) violate their constraints."""


class InvalidGraphError(QuotientGermsError, ValueError):
    """A resolution graph is malformed or unsuitable for the operation."""


class IndexOutOfRangeError(QuotientGermsError, IndexError):
    """A vertex index lies outside the graph."""


class DivisionByZeroError(QuotientGermsError, ZeroDivisionError):
    """A continued fraction tail evaluated to zero."""


class UnknownRowError(QuotientGermsError, KeyError):
    """No table row matches the requested family and residue."""


class NotNegativeDefiniteError(QuotientGermsError):
    """The intersection matrix is not negative definite."""


class BoundTooSmallError(QuotientGermsError):
    """The oracle box contains no antinef cycle."""


class PreconditionViolatedError(QuotientGermsError):
    """Two graphs are not comparable for the monotonicity check."""


class InternalError(QuotientGermsError):
    """An invariant that should be unreachable was hit."""


class NotLCInputError(QuotientGermsError):
    """The germ itself is not log canonical."""


class NotKLTError(QuotientGermsError):
    """The germ has mld <= 0 over the point."""


class TooManyBranchesAtSmoothPointError(QuotientGermsError):
    """More than two snc curves pass through a smooth surface point."""


class DegenerateIdealError(QuotientGermsError, ValueError):
    """A monomial ideal contains the unit."""


class GermFileError(QuotientGermsError):
    """An input file violates the graph or germ file format."""

    def __init__(self, path: str, invariant: str, message: str, line: Optional[int] = None):
        self.path = path
        self.invariant = invariant
        self.line = line
        self.detail = message
        super().__init__(self.render())

    def render(self) -> str:
        location = f"{self.path}:{self.line}" if self.line else f"{self.path}"
        return f"{location}: {self.invariant}: {self.detail}"
