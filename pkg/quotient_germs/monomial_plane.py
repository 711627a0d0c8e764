"""
Newton data on the smooth plane germ (x, y) = (0, 0).

For a boundary lambda * (f = 0) with f spanned by monomials x^a y^b, the
weighted blowup with weights (p1, p2) has log discrepancy

    g(p) = p1 + p2 - lambda * min_j (a_j p1 + b_j p2)
         = max_j ((1 - lambda a_j) p1 + (1 - lambda b_j) p2),

which is convex and positively homogeneous. Everything below is decided by
the minimum of g on the segment p1 + p2 = 1.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DegenerateIdealError, InvalidParametersError
from .exact_core import NOT_LC, RationalLike, is_not_lc, to_rational

Exponent = Tuple[int, int]
Weights = Tuple[int, int]
MaybeRational = Union[Fraction, object]


@dataclass(frozen=True)
class MonomialBoundary:
    lam: Fraction
    exponents: Tuple[Exponent, ...]

    def __post_init__(self):
        lam = to_rational(self.lam)
        if lam < 0:
            raise InvalidParametersError(f"lambda must be >= 0, got {lam}")
        cleaned = sorted(set(_check_exponents(self.exponents)))
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "exponents", tuple(cleaned))

    @classmethod
    def parse(cls, lam: RationalLike, exponents: str) -> "MonomialBoundary":
        return cls(to_rational(lam), tuple(parse_exponents(exponents)))

    @property
    def slopes(self) -> List[Tuple[Fraction, Fraction]]:
        """(1 - lambda a, 1 - lambda b) for every monomial."""
        return [(1 - self.lam * a, 1 - self.lam * b) for a, b in self.exponents]

    @property
    def max_exponent_sum(self) -> int:
        return max(a + b for a, b in self.exponents)


@dataclass(frozen=True)
class MldCertificate:
    """How a monomial mld was certified: simplex minimum c and the searched box [1, box]^2."""

    value: MaybeRational
    simplex_minimum: Fraction
    box: int
    minimiser: Optional[Weights]
    limit: bool = False


@dataclass(frozen=True)
class SharpnessReport:
    m: int
    lam: Fraction
    weights: Weights
    mld: Fraction
    a_E: Fraction
    bound: Fraction
    order_bound_ok: bool


def _check_exponents(exponents: Iterable[Sequence[int]]) -> List[Exponent]:
    checked = []
    for pair in exponents:
        if len(pair) != 2:
            raise InvalidParametersError(f"exponent {pair!r} is not a pair")
        a, b = pair
        for x in (a, b):
            if isinstance(x, bool) or not isinstance(x, int) or x < 0:
                raise InvalidParametersError(f"exponent {pair!r} must be two nonnegative integers")
        checked.append((a, b))
    if not checked:
        raise InvalidParametersError("at least one monomial is required")
    return checked


def parse_exponents(text: str) -> List[Exponent]:
    """Parse ``"a,b;a,b;..."``."""
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            a, b = (int(part) for part in chunk.split(","))
        except ValueError:
            raise InvalidParametersError(f"cannot read exponent pair {chunk!r}") from None
        pairs.append((a, b))
    return _check_exponents(pairs)


def _check_weights(weights: Sequence[int]) -> Weights:
    if len(weights) != 2:
        raise InvalidParametersError(f"weights {weights!r} are not a pair")
    p1, p2 = weights
    for x in (p1, p2):
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise InvalidParametersError(f"weights must be positive integers, got {weights!r}")
    return p1, p2


def weighted_order(weights: Sequence[int], mb: MonomialBoundary) -> int:
    """min over monomials of a p1 + b p2"""
    p1, p2 = _check_weights(weights)
    return min(a * p1 + b * p2 for a, b in mb.exponents)


def weighted_log_discrepancy(weights: Sequence[int], mb: MonomialBoundary) -> Fraction:
    p1, p2 = _check_weights(weights)
    return p1 + p2 - mb.lam * weighted_order((p1, p2), mb)


def _g(slopes: Sequence[Tuple[Fraction, Fraction]], p1: int, p2: int) -> Fraction:
    return max(s * p1 + t * p2 for s, t in slopes)


def _segment_candidates(lines: Sequence[Tuple[Fraction, Fraction]]) -> List[Fraction]:
    """Endpoints of [0, 1] and the crossings inside it of the lines u + (v - u) t."""
    points = {Fraction(0), Fraction(1)}
    for i, (u1, v1) in enumerate(lines):
        for u2, v2 in lines[i + 1 :]:
            d1, d2 = v1 - u1, v2 - u2
            if d1 != d2:
                t = (u2 - u1) / (d1 - d2)
                if 0 < t < 1:
                    points.add(t)
    return sorted(points)


def simplex_minimum(mb: MonomialBoundary) -> Tuple[Fraction, List[Fraction]]:
    """c = min of g(t, 1 - t) over t in [0, 1], and the candidate points attaining it."""
    # parametrise as value = beta + (alpha - beta) t
    lines = [(beta, alpha) for alpha, beta in mb.slopes]
    values = [(max(u + (v - u) * t for u, v in lines), t) for t in _segment_candidates(lines)]
    c = min(value for value, _ in values)
    return c, [t for value, t in values if value == c]


def _row_minimum(slopes, p1: int, box: int) -> Tuple[Fraction, int]:
    """Minimum of the convex function p2 -> g(p1, p2) over integers in [1, box]."""
    candidates = {1, box}
    for i, (s1, t1) in enumerate(slopes):
        for s2, t2 in slopes[i + 1 :]:
            if t1 != t2:
                cross = (s2 - s1) * p1 / (t1 - t2)
                for p2 in (math.floor(cross), math.ceil(cross)):
                    if 1 <= p2 <= box:
                        candidates.add(p2)
    return min((_g(slopes, p1, p2), p2) for p2 in candidates)


def _box_minimum(slopes, box: int, c: Fraction) -> Tuple[Fraction, Weights]:
    best_value, best_p2 = _row_minimum(slopes, 1, box)
    best = (best_value, (1, best_p2))
    for p1 in range(2, box + 1):
        # g >= c (p1 + p2) > c p1 on every later row
        if c * (p1 + 1) > best[0]:
            break
        value, p2 = _row_minimum(slopes, p1, box)
        if value < best[0]:
            best = (value, (p1, p2))
    return best


def monomial_mld_certified(mb: MonomialBoundary) -> MldCertificate:
    """
    Exact infimum of g over integer p >= (1, 1).

    c < 0: some lattice ray has negative growth, NOT_LC.
    c > 0: g >= c (p1 + p2), so a box [1, B]^2 whose minimum is at most c B
    holds the global minimum; B doubles until it does.
    c = 0: the infimum is 0 when g vanishes along an interior ray, otherwise
    the limit of g(N, 1) (or g(1, N)) along the vanishing axis, which is
    attained.
    """
    slopes = mb.slopes
    c, attained = simplex_minimum(mb)
    if c < 0:
        return MldCertificate(NOT_LC, c, 0, None)
    if c == 0:
        return _vanishing_case(slopes, attained)

    box = 4 * mb.max_exponent_sum * mb.lam.denominator
    box = max(box, 1)
    while True:
        value, minimiser = _box_minimum(slopes, box, c)
        if value <= c * box:
            return MldCertificate(value, c, box, minimiser)
        box *= 2


def _vanishing_case(slopes, attained: List[Fraction]) -> MldCertificate:
    zero = Fraction(0)
    inside = [t for t in attained if 0 < t < 1]
    if inside:
        t = inside[0]
        return MldCertificate(zero, zero, 0, (t.numerator, t.denominator - t.numerator))
    if len(attained) == 2:
        # zero at both ends, so zero everywhere by convexity
        return MldCertificate(zero, zero, 0, (1, 1))
    # positive inside, vanishing at one end only
    if attained[0] == 1:
        limit = max(beta for alpha, beta in slopes if alpha == 0)
    else:
        limit = max(alpha for alpha, beta in slopes if beta == 0)
    return MldCertificate(limit, zero, 0, None, limit=True)


def monomial_mld(mb: MonomialBoundary) -> MaybeRational:
    """The mld at the origin of the plane with boundary lambda * (f = 0), or NOT_LC."""
    return monomial_mld_certified(mb).value


def monomial_lct(exponents: Iterable[Sequence[int]]) -> Fraction:
    """
    lc threshold of the curve spanned by the monomials:
    1 / max over t in [0, 1] of min_j (a_j t + b_j (1 - t)).
    """
    pairs = _check_exponents(exponents)
    if (0, 0) in pairs:
        raise DegenerateIdealError("the monomials contain the unit")
    lines = [(Fraction(b), Fraction(a)) for a, b in pairs]
    best = max(min(u + (v - u) * t for u, v in lines) for t in _segment_candidates(lines))
    return 1 / best


def primitive_weight_lct(exponents: Iterable[Sequence[int]], limit: int = 50) -> Fraction:
    """Brute force of ``monomial_lct`` over coprime weights up to ``limit``, axes included."""
    pairs = _check_exponents(exponents)
    best = None
    for p1 in range(0, limit + 1):
        for p2 in range(0, limit + 1):
            if math.gcd(p1, p2) != 1:
                continue
            order = min(a * p1 + b * p2 for a, b in pairs)
            if order == 0:
                continue
            value = Fraction(p1 + p2, order)
            if best is None or value < best:
                best = value
    return best


def example_boundary(m: int) -> MonomialBoundary:
    """lambda = (2m - 1) / m^2 times the curve x^m + y^(m+1) = 0."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InvalidParametersError(f"m must be a positive integer, got {m!r}")
    return MonomialBoundary(Fraction(2 * m - 1, m * m), ((m, 0), (0, m + 1)))


def example_sharpness_check(m: int) -> SharpnessReport:
    """
    The divisor E of the (m+1, m) weighted blowup has a(E) = mld = 1/m, and any
    curve through the origin vanishes to order >= m along E, so adding t times
    it breaks lc along E once t > 1/m^2.
    """
    mb = example_boundary(m)
    mld = monomial_mld(mb)
    weights = (m + 1, m)
    a_e = weighted_log_discrepancy(weights, mb)
    bound = a_e / min(weights)
    expected = Fraction(1, m)
    ok = not is_not_lc(mld) and mld == expected and a_e == expected and bound == mld * mld
    return SharpnessReport(m, mb.lam, weights, mld, a_e, bound, ok)
