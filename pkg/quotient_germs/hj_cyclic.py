"""
Hirzebruch-Jung continued fractions and cyclic quotient singularities A_{n,q}.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .errors import DivisionByZeroError, InvalidParametersError
from .resolution_graph import ResolutionGraph


@dataclass(frozen=True)
class HJExpansion:
    """n/q = [b_1, ..., b_r] = b_1 - 1/(b_2 - 1/(... - 1/b_r)), every b_i >= 2."""

    n: int
    q: int
    terms: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.terms)

    def value(self) -> Fraction:
        return hj_evaluate(self.terms)


def check_coprime_pair(n: int, q: int, lower: int = 0):
    """Raise unless lower < q < n and gcd(n, q) = 1."""
    for name, value in (("n", n), ("q", q)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidParametersError(f"{name} must be an integer, got {value!r}")
    if not lower < q < n:
        raise InvalidParametersError(f"need {lower} < q < n, got n={n}, q={q}")
    if gcd(n, q) != 1:
        raise InvalidParametersError(f"n={n} and q={q} are not coprime")


def hj_expand(n: int, q: int) -> HJExpansion:
    """The unique expansion of n/q with all terms >= 2."""
    check_coprime_pair(n, q)
    terms: List[int] = []
    a, b = n, q
    while b:
        c = -(-a // b)
        terms.append(c)
        a, b = b, c * b - a
    return HJExpansion(n, q, tuple(terms))


def hj_evaluate(terms: Sequence[int]) -> Fraction:
    """Exact value of [b_1, ..., b_r]."""
    if not terms:
        raise InvalidParametersError("cannot evaluate an empty continued fraction")
    value = Fraction(terms[-1])
    for position in range(len(terms) - 2, -1, -1):
        if value == 0:
            raise DivisionByZeroError(f"tail starting at position {position + 1} evaluates to 0")
        value = terms[position] - 1 / value
    return value


def dual_fraction(n: int, q: int) -> int:
    """q' with q q' = 1 (mod n); the chain of A_{n,q'} is the chain of A_{n,q} reversed."""
    check_coprime_pair(n, q)
    return pow(q, -1, n)


def cyclic_graph(n: int, q: int) -> ResolutionGraph:
    """Chain -b_1, ..., -b_r of the minimal resolution of A_{n,q}."""
    expansion = hj_expand(n, q)
    return ResolutionGraph.chain([-b for b in expansion.terms], True, f"A({n},{q})")
