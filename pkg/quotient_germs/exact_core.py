"""
Exact rational arithmetic and dense linear algebra.

Every quantity in quotient_germs is a ``fractions.Fraction``; nothing here
ever rounds. Square systems are solved with fraction-free (Bareiss)
elimination on integer rows, with a sparse symmetric fast path for the
intersection matrices of trees.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import NotSymmetricError, SingularMatrixError

Rational = Fraction
RationalLike = Union[int, Fraction, str]


class _NotLC:
    """Value returned where a log discrepancy infimum is -infinity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NotLC"

    __str__ = __repr__

    def __reduce__(self):
        return (_NotLC, ())


NOT_LC = _NotLC()


def is_not_lc(value) -> bool:
    return value is NOT_LC


def to_rational(value: RationalLike) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string. Floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}; use a 'p/q' string")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot read {value!r} as a rational")


def format_rational(value) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral)."""
    if value is NOT_LC:
        return "NotLC"
    return str(Fraction(value))


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable rectangular matrix of Fractions."""

    rows: Tuple[Tuple[Fraction, ...], ...]
    ncols: int = 0

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[RationalLike]]) -> "RationalMatrix":
        """Convert every entry with ``to_rational``; rows must have equal length."""
        converted = tuple(tuple(to_rational(x) for x in row) for row in rows)
        ncols = len(converted[0]) if converted else 0
        if any(len(row) != ncols for row in converted):
            raise ValueError("matrix rows have different lengths")
        return cls(converted, ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        n = self.nrows
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def mul_vector(self, vector: Sequence[RationalLike]) -> List[Fraction]:
        """matrix . vector, exactly."""
        if len(vector) != self.ncols:
            raise ValueError(f"vector of length {len(vector)} against {self.ncols} columns")
        values = [to_rational(v) for v in vector]
        return [sum((a * b for a, b in zip(row, values)), Fraction(0)) for row in self.rows]

    def to_lists(self) -> List[List[Fraction]]:
        return [list(row) for row in self.rows]


def _integral_rows(matrix: RationalMatrix, rhs: Optional[Sequence[Fraction]] = None):
    """Scale each row (and its rhs entry) by the lcm of its denominators."""
    rows: List[List[int]] = []
    scales: List[int] = []
    for i, row in enumerate(matrix.rows):
        entries = list(row) + ([rhs[i]] if rhs is not None else [])
        scale = reduce(lcm, (x.denominator for x in entries), 1)
        rows.append([int(x * scale) for x in entries])
        scales.append(scale)
    return rows, scales


def _bareiss(rows: List[List[int]], n: int) -> int:
    """In-place fraction-free elimination of the leading n columns; returns the swap sign."""
    sign = 1
    previous = 1
    width = len(rows[0]) if rows else 0
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if rows[r][k] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError(f"no pivot in column {k}")
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            factor = rows[i][k]
            row_i = rows[i]
            row_k = rows[k]
            for j in range(k + 1, width):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // previous
            row_i[k] = 0
        previous = pivot
    return sign


def determinant(matrix: RationalMatrix) -> Fraction:
    """Exact determinant by Bareiss elimination."""
    if not matrix.is_square():
        raise ValueError(f"determinant of a {matrix.nrows}x{matrix.ncols} matrix")
    n = matrix.nrows
    if n == 0:
        return Fraction(1)
    rows, scales = _integral_rows(matrix)
    try:
        sign = _bareiss(rows, n)
    except SingularMatrixError:
        return Fraction(0)
    return Fraction(sign * rows[n - 1][n - 1], reduce(lambda a, b: a * b, scales, 1))


@dataclass(frozen=True)
class SparseFactorization:
    """
    Elimination of a symmetric matrix in natural order without pivoting,
    touching only nonzero entries.

    ``pivots`` stops at the first zero pivot. A complete factorization
    solves any number of right-hand sides without redoing the elimination.
    """

    size: int
    pivots: Tuple[Fraction, ...]
    upper: Tuple[Dict[int, Fraction], ...]
    lower: Tuple[Tuple[Tuple[int, Fraction], ...], ...]

    @property
    def complete(self) -> bool:
        return len(self.pivots) == self.size

    @property
    def determinant(self) -> Fraction:
        if not self.complete:
            return Fraction(0)
        return reduce(lambda a, b: a * b, self.pivots, Fraction(1))

    def is_negative_definite(self) -> bool:
        # D_k = d_1 ... d_k, so the signs alternate exactly when every pivot is negative
        return self.complete and all(d < 0 for d in self.pivots)

    def solve(self, rhs: Sequence[RationalLike]) -> List[Fraction]:
        if not self.complete:
            raise SingularMatrixError(f"zero pivot in column {len(self.pivots)} without pivoting")
        if len(rhs) != self.size:
            raise ValueError(f"rhs has length {len(rhs)}, expected {self.size}")
        values = [to_rational(v) for v in rhs]
        for k, factors in enumerate(self.lower):
            for i, factor in factors:
                values[i] -= factor * values[k]
        solution = [Fraction(0)] * self.size
        for k in range(self.size - 1, -1, -1):
            acc = values[k] - sum((v * solution[j] for j, v in self.upper[k].items()), Fraction(0))
            solution[k] = acc / self.pivots[k]
        return solution


def factor_symmetric(rows: Sequence[Mapping[int, RationalLike]]) -> SparseFactorization:
    """Factor a symmetric matrix given as sparse rows ``{column: value}``."""
    n = len(rows)
    work: List[Dict[int, Fraction]] = [{j: to_rational(v) for j, v in row.items() if v} for row in rows]
    pivots: List[Fraction] = []
    upper: List[Dict[int, Fraction]] = []
    lower: List[Tuple[Tuple[int, Fraction], ...]] = []
    for k in range(n):
        pivot = work[k].get(k, Fraction(0))
        if pivot == 0:
            break
        pivots.append(pivot)
        tail = {j: v for j, v in work[k].items() if j > k}
        upper.append(tail)
        factors = []
        for i in tail:
            factor = work[i].pop(k, Fraction(0)) / pivot
            if not factor:
                continue
            factors.append((i, factor))
            target = work[i]
            for j, v in tail.items():
                updated = target.get(j, Fraction(0)) - factor * v
                if updated:
                    target[j] = updated
                else:
                    target.pop(j, None)
        lower.append(tuple(factors))
    return SparseFactorization(n, tuple(pivots), tuple(upper), tuple(lower))


def _sparse_rows(matrix: RationalMatrix) -> List[Dict[int, Fraction]]:
    return [{j: v for j, v in enumerate(row) if v} for row in matrix.rows]


def solve_linear_system(matrix: RationalMatrix, rhs: Sequence[RationalLike]) -> List[Fraction]:
    """Return the unique exact x with matrix . x = rhs."""
    if not matrix.is_square():
        raise ValueError(f"cannot solve a {matrix.nrows}x{matrix.ncols} system")
    n = matrix.nrows
    if len(rhs) != n:
        raise ValueError(f"rhs has length {len(rhs)}, expected {n}")
    values = [to_rational(v) for v in rhs]
    if n == 0:
        return []

    if matrix.is_symmetric():
        factorization = factor_symmetric(_sparse_rows(matrix))
        if factorization.complete:
            return factorization.solve(values)

    rows_int, _ = _integral_rows(matrix, values)
    _bareiss(rows_int, n)
    solution = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        acc = Fraction(rows_int[k][n]) - sum(
            (rows_int[k][j] * solution[j] for j in range(k + 1, n)), Fraction(0)
        )
        solution[k] = acc / rows_int[k][k]
    return solution


def leading_principal_minors(matrix: RationalMatrix) -> List[Fraction]:
    """The determinants of the leading k x k submatrices, k = 1..n."""
    if not matrix.is_square():
        raise ValueError("leading minors need a square matrix")
    n = matrix.nrows
    pivots = factor_symmetric(_sparse_rows(matrix)).pivots if matrix.is_symmetric() else ()
    minors: List[Fraction] = []
    running = Fraction(1)
    for pivot in pivots:
        running *= pivot
        minors.append(running)
    for k in range(len(minors) + 1, n + 1):
        minors.append(determinant(RationalMatrix.from_rows(row[:k] for row in matrix.rows[:k])))
    return minors


def is_negative_definite(matrix: RationalMatrix) -> bool:
    """Sylvester: the k-th leading principal minor has sign (-1)^k for every k."""
    if not matrix.is_square() or not matrix.is_symmetric():
        raise NotSymmetricError(f"matrix of shape {matrix.shape} is not symmetric")
    return factor_symmetric(_sparse_rows(matrix)).is_negative_definite()
