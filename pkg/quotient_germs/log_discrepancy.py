"""
Log pullbacks, minimal log discrepancies and lc thresholds of surface germs.

A germ is a resolution graph (the minimal resolution of a rational surface
singularity, or the empty graph for a smooth point) together with a boundary
whose strict transform meets the exceptional curves transversally. On that
model, the pullback

    K_W + Delta_W + sum_i e_i E_i = pi^*(K_Z + Delta)

is determined by intersecting with every E_i, and the log discrepancy of E_i
is a_i = 1 - e_i. A smooth point is handled on its blowup at z, which is a
single (-1)-curve.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    InternalError,
    InvalidGraphError,
    InvalidParametersError,
    NotKLTError,
    NotLCInputError,
    TooManyBranchesAtSmoothPointError,
)
from .exact_core import NOT_LC, RationalLike, is_not_lc, to_rational
from .fundamental_cycle import laufer_fundamental_cycle
from .logger import get_logger
from .resolution_graph import Cycle, ResolutionGraph, validate

MaybeRational = Union[Fraction, object]

BOUNDARY_KEYS = {"coefficient", "incidences"}
RANDOM_COEFFICIENTS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


@dataclass(frozen=True)
class BoundaryCurve:
    """
    Strict transform of one boundary curve: its coefficient and how many
    times it meets each exceptional vertex.
    """

    coefficient: Fraction
    incidences: Tuple[int, ...] = ()

    def __post_init__(self):
        coefficient = to_rational(self.coefficient)
        object.__setattr__(self, "coefficient", coefficient)
        if not 0 <= coefficient <= 1:
            raise InvalidParametersError(f"boundary coefficient {coefficient} outside [0, 1]")
        for k in self.incidences:
            if isinstance(k, bool) or not isinstance(k, int) or k < 0:
                raise InvalidParametersError(f"incidence {k!r} is not a nonnegative integer")

    def through_point(self) -> bool:
        return any(self.incidences)


@dataclass(frozen=True)
class BoundaryData:
    curves: Tuple[BoundaryCurve, ...] = ()

    @classmethod
    def empty(cls) -> "BoundaryData":
        return cls(())

    @classmethod
    def of(cls, *curves: Tuple[RationalLike, Sequence[int]]) -> "BoundaryData":
        return cls(tuple(BoundaryCurve(to_rational(c), tuple(inc)) for c, inc in curves))

    @classmethod
    def from_document(cls, entries: Any, vertex_count: int) -> "BoundaryData":
        """Parse the ``boundary`` list of a germ file."""
        if not isinstance(entries, list):
            raise InvalidParametersError("boundary must be a list")
        curves = []
        for position, entry in enumerate(entries):
            if not isinstance(entry, Mapping) or set(entry) != BOUNDARY_KEYS:
                raise InvalidParametersError(f"boundary[{position}] must have exactly the keys coefficient, incidences")
            raw = entry["coefficient"]
            if not isinstance(raw, (str, int)) or isinstance(raw, bool):
                raise InvalidParametersError(f"boundary[{position}].coefficient must be a 'p/q' string")
            try:
                coefficient = to_rational(raw)
            except (TypeError, ValueError) as exc:
                raise InvalidParametersError(f"boundary[{position}].coefficient: {exc}") from None
            incidences = entry["incidences"]
            if not isinstance(incidences, list):
                raise InvalidParametersError(f"boundary[{position}].incidences must be a list")
            if len(incidences) != vertex_count:
                raise InvalidParametersError(
                    f"boundary[{position}] has {len(incidences)} incidences for {vertex_count} vertices"
                )
            curves.append(BoundaryCurve(coefficient, tuple(incidences)))
        return cls(tuple(curves))

    def to_document(self) -> List[dict]:
        return [{"coefficient": str(c.coefficient), "incidences": list(c.incidences)} for c in self.curves]

    def __len__(self) -> int:
        return len(self.curves)

    def scaled(self, factor: RationalLike) -> "BoundaryData":
        s = to_rational(factor)
        if not 0 <= s <= 1:
            raise InvalidParametersError(f"scale {s} outside [0, 1]")
        return BoundaryData(tuple(BoundaryCurve(c.coefficient * s, c.incidences) for c in self.curves))

    def pairing(self, vertex: int) -> Fraction:
        """Delta_W . E_vertex"""
        return sum((c.coefficient * c.incidences[vertex] for c in self.curves), Fraction(0))

    def total_coefficient(self) -> Fraction:
        return sum((c.coefficient for c in self.curves), Fraction(0))

    def meets_point(self) -> bool:
        """True when some curve with a nonzero coefficient passes through the point."""
        return any(c.coefficient and c.through_point() for c in self.curves)


@dataclass(frozen=True)
class ComponentCheck:
    """Pairing (Delta_full - e D).D = 2 + (1 - e) D^2 and e <= 1 - eps for one component D."""

    vertex: int
    pairing: Fraction
    pairing_below_two: bool
    discrepancy_ok: bool


@dataclass
class GermReport:
    exceptional_pullback_coeffs: List[Fraction]
    log_discrepancies: List[Fraction]
    mld: MaybeRational
    lct_maximal_ideal: MaybeRational
    epsilon_sq_over_24_ok: bool
    epsilon_sq_over_4_ok: bool
    fundamental_cycle: Optional[Cycle] = None
    required: Optional[Fraction] = None
    adjunction_ok: bool = True
    component_checks: List[ComponentCheck] = field(default_factory=list)

    @property
    def epsilon(self) -> MaybeRational:
        return self.mld

    @property
    def passed(self) -> bool:
        return self.epsilon_sq_over_24_ok

    @property
    def lct_over_eps_sq(self) -> Optional[Fraction]:
        if is_not_lc(self.mld) or is_not_lc(self.lct_maximal_ideal) or not self.mld:
            return None
        return self.lct_maximal_ideal / (self.mld * self.mld)


def _check_boundary(graph: ResolutionGraph, boundary: BoundaryData):
    for position, curve in enumerate(boundary.curves):
        if len(curve.incidences) != len(graph):
            raise InvalidGraphError(
                f"boundary curve {position} has {len(curve.incidences)} incidences for {len(graph)} vertices"
            )


def _check_pullback_graph(graph: ResolutionGraph, require_minimal: bool = True):
    if graph.is_smooth_point():
        raise InvalidGraphError("a smooth point has no exceptional curves; use smooth_point_blowup")
    if require_minimal and not graph.minimal_resolution:
        raise InvalidGraphError("the pullback is computed on a minimal resolution")
    problems = validate(graph)
    if problems:
        raise InvalidGraphError("; ".join(str(d) for d in problems))


def smooth_point_blowup(boundary: BoundaryData) -> Tuple[ResolutionGraph, BoundaryData]:
    """Blow up a smooth point once: one (-1)-curve met once by every curve through the point."""
    if len(boundary) > 2:
        raise TooManyBranchesAtSmoothPointError(f"{len(boundary)} snc curves through a smooth point")
    graph = ResolutionGraph((-1,), (), False, "blowup")
    return graph, BoundaryData(tuple(BoundaryCurve(c.coefficient, (1,)) for c in boundary.curves))


@dataclass(frozen=True)
class ScaledPullback:
    """
    A pullback kept as integers over one denominator: e_i is
    ``numerators[i] / denominator`` and Delta_W . E_j is
    ``pairings[j] / denominator``.
    """

    numerators: Tuple[int, ...]
    pairings: Tuple[int, ...]
    denominator: int

    def values(self) -> List[Fraction]:
        return [Fraction(x, self.denominator) for x in self.numerators]

    def mld(self) -> MaybeRational:
        top = max(self.numerators)
        if top > self.denominator:
            return NOT_LC
        return Fraction(self.denominator - top, self.denominator)

    def threshold(self, cycle: Cycle) -> Fraction:
        """min (1 - e_i) / c_i over the support of the cycle."""
        best: Optional[Tuple[int, int]] = None
        for x, c in zip(self.numerators, cycle.coefficients):
            if not c:
                continue
            gap = self.denominator - x
            if best is None or gap * best[1] < best[0] * c:
                best = (gap, c)
        if best is None:
            raise InvalidParametersError("the cycle is zero")
        return Fraction(best[0], self.denominator * best[1])

    def coefficient_cap(self, response: Sequence[int], determinant: int) -> Optional[Fraction]:
        """
        Supremum of the d keeping every e_i + d v_i below 1, where
        v = response / determinant; None when v vanishes.
        """
        best: Optional[Tuple[int, int]] = None
        for x, r in zip(self.numerators, response):
            if r <= 0:
                continue
            room = (self.denominator - x) * determinant
            if best is None or room * best[1] < best[0] * r:
                best = (room, r)
        if best is None:
            return None
        return Fraction(best[0], self.denominator * best[1])


@dataclass(frozen=True)
class SurfaceCheck:
    """The scalar outcome of the lct(m_z) >= mld^2 / 24 check for one boundary."""

    mld: Fraction
    lct: Fraction
    required: Fraction
    eps_sq_over_4_ok: bool
    adjunction_ok: bool

    @property
    def passed(self) -> bool:
        return self.lct >= self.required

    @property
    def ratio(self) -> Optional[Fraction]:
        return self.lct / (self.mld * self.mld) if self.mld else None


class PullbackSolver:
    """
    Log pullbacks of one graph against many boundaries.

    The pullback is affine in the boundary. With u_j = -M^{-1} E_j,

        e = e_0 + sum_j (Delta_W . E_j) u_j,

    and |det M| e_0 and |det M| u_j are integral, so every pullback is kept
    as integers over a common denominator. Each u_j is solved once, on
    first use, from the graph's cached factorization.
    """

    def __init__(self, graph: ResolutionGraph, require_minimal: bool = True):
        _check_pullback_graph(graph, require_minimal)
        self.graph = graph
        self._factorization = graph.factorization
        self.determinant = abs(self._factorization.determinant.numerator)
        self.base = self._integral(self._factorization.solve([2 + w for w in graph.weights]))
        self._columns: Dict[int, Tuple[int, ...]] = {}

    def _integral(self, values: Sequence[Fraction]) -> Tuple[int, ...]:
        scaled = [v * self.determinant for v in values]
        # |det M| M^{-1} is the adjugate up to sign
        if any(v.denominator != 1 for v in scaled):
            raise InternalError(f"|det M| = {self.determinant} does not clear the solution denominators")
        return tuple(v.numerator for v in scaled)

    def column(self, vertex: int) -> Tuple[int, ...]:
        """|det M| u_vertex, the response of e to one unit of Delta_W . E_vertex."""
        cached = self._columns.get(vertex)
        if cached is None:
            self.graph._check_index(vertex)
            unit = [0] * len(self.graph)
            unit[vertex] = -1
            cached = self._columns[vertex] = self._integral(self._factorization.solve(unit))
        return cached

    def response(self, incidences: Sequence[int]) -> List[int]:
        """|det M| times the change of e per unit coefficient of a curve with these incidences."""
        total = [0] * len(self.graph)
        for j, k in enumerate(incidences):
            if k:
                for i, u in enumerate(self.column(j)):
                    total[i] += k * u
        return total

    def scaled(self, boundary: Optional[BoundaryData] = None) -> ScaledPullback:
        boundary = boundary or BoundaryData.empty()
        _check_boundary(self.graph, boundary)
        scale = reduce(lcm, (c.coefficient.denominator for c in boundary.curves), 1)
        numerators = [x * scale for x in self.base]
        pairings = [0] * len(self.graph)
        for curve in boundary.curves:
            weight = curve.coefficient.numerator * (scale // curve.coefficient.denominator)
            if weight:
                for j, k in enumerate(curve.incidences):
                    pairings[j] += weight * k
        for j, p in enumerate(pairings):
            if p:
                for i, u in enumerate(self.column(j)):
                    numerators[i] += p * u
        return ScaledPullback(
            tuple(numerators), tuple(p * self.determinant for p in pairings), self.determinant * scale
        )

    def pullback(self, boundary: Optional[BoundaryData] = None) -> List[Fraction]:
        return self.scaled(boundary).values()

    def full_pairings(self, scaled: ScaledPullback) -> List[int]:
        """(Delta_W + sum_i e_i E_i) . E_j over the common denominator."""
        adjacency = self.graph.adjacency
        full = []
        for j, w in enumerate(self.graph.weights):
            total = scaled.pairings[j] + scaled.numerators[j] * w
            for i, mult in adjacency[j].items():
                total += scaled.numerators[i] * mult
            full.append(total)
        return full

    def surface_check(self, boundary: Optional[BoundaryData], cycle: Cycle) -> SurfaceCheck:
        """lct(m_z) against mld^2 / 24, the e_i + mld^2 / 4 <= 1 flag and the adjunction recheck."""
        scaled = self.scaled(boundary)
        mld = scaled.mld()
        if is_not_lc(mld) or mld <= 0:
            raise NotKLTError(f"need mld > 0 over the point, got {mld}")
        den = scaled.denominator
        square = mld * mld
        adjunction_ok = all(
            full == (w + 2) * den for full, w in zip(self.full_pairings(scaled), self.graph.weights)
        )
        return SurfaceCheck(
            mld=mld,
            lct=scaled.threshold(cycle),
            required=square / 24,
            eps_sq_over_4_ok=Fraction(max(scaled.numerators), den) + square / 4 <= 1,
            adjunction_ok=adjunction_ok,
        )


def _solve_pullback(graph: ResolutionGraph, boundary: BoundaryData) -> List[Fraction]:
    rhs = [2 + w - boundary.pairing(j) for j, w in enumerate(graph.weights)]
    return graph.factorization.solve(rhs)


def exceptional_log_pullback(graph: ResolutionGraph, boundary: Optional[BoundaryData] = None) -> List[Fraction]:
    """The e_i with (K_W + Delta_W + sum e_i E_i) . E_j = 0 for every j."""
    boundary = boundary or BoundaryData.empty()
    _check_pullback_graph(graph)
    _check_boundary(graph, boundary)
    return _solve_pullback(graph, boundary)


def canonical_log_discrepancies(graph: ResolutionGraph) -> List[Fraction]:
    """a_i = 1 - e_i without boundary; 1 everywhere exactly on Du Val graphs."""
    return [1 - e for e in exceptional_log_pullback(graph)]


def is_du_val(graph: ResolutionGraph) -> bool:
    return all(a == 1 for a in canonical_log_discrepancies(graph))


def pullback_residuals(graph: ResolutionGraph, boundary: BoundaryData, pullback: Sequence[Fraction]) -> List[Fraction]:
    """(K_W + Delta_W^full) . E_j for every j; all zero for a correct pullback."""
    adjacency = graph.adjacency
    residuals = []
    for j, w in enumerate(graph.weights):
        full = boundary.pairing(j) + pullback[j] * w
        full += sum((pullback[i] * mult for i, mult in adjacency[j].items()), Fraction(0))
        residuals.append(full - 2 - w)
    return residuals


def _model(graph: ResolutionGraph, boundary: BoundaryData) -> Tuple[ResolutionGraph, BoundaryData, List[Fraction]]:
    """The graph, boundary and pullback on the model where everything is computed."""
    if graph.is_smooth_point():
        blowup, moved = smooth_point_blowup(boundary)
        return blowup, moved, _solve_pullback(blowup, moved)
    return graph, boundary, exceptional_log_pullback(graph, boundary)


def _mld_from_pullback(boundary: BoundaryData, pullback: Sequence[Fraction]) -> MaybeRational:
    if any(e > 1 for e in pullback):
        return NOT_LC
    if any(c.coefficient > 1 for c in boundary.curves if c.through_point()):
        return NOT_LC
    return min(1 - e for e in pullback)


def mld_over_point(graph: ResolutionGraph, boundary: Optional[BoundaryData] = None) -> MaybeRational:
    """
    Minimal log discrepancy over the closed point, or NOT_LC.

    On a log smooth model every divisor over z is reached by toroidal blowups
    at double points, whose log discrepancies p a + q a' never drop below
    min(a, a'), so the minimum is taken over the exceptional curves.
    """
    boundary = boundary or BoundaryData.empty()
    if graph.is_smooth_point():
        if len(boundary) > 2:
            raise TooManyBranchesAtSmoothPointError(f"{len(boundary)} snc curves through a smooth point")
        if any(c.coefficient > 1 for c in boundary.curves):
            return NOT_LC
        return 2 - boundary.total_coefficient()
    return _mld_from_pullback(boundary, exceptional_log_pullback(graph, boundary))


def _threshold(pullback: Sequence[Fraction], cycle: Cycle) -> Fraction:
    return min((1 - e) / c for e, c in zip(pullback, cycle.coefficients))


def _warn_rationality(graph: ResolutionGraph, known_rational: bool):
    if known_rational or graph.is_smooth_point():
        return
    name = graph.label or f"the {len(graph)}-vertex graph"
    get_logger().warning(
        f"⚠️  {name} does not come from the quotient catalog; m_z O_W = O_W(-C_f) needs a rational "
        f"singularity, and rationality is the caller's responsibility"
    )


def lct_maximal_ideal(
    graph: ResolutionGraph, boundary: Optional[BoundaryData] = None, known_rational: bool = False
) -> MaybeRational:
    """
    The lc threshold of the maximal ideal of z with respect to the germ.

    On a rational singularity m_z O_W = O_W(-C_f), so the threshold is
    min (1 - e_i) / c_i. Unless ``known_rational`` is set, a warning says
    that rationality of the graph is the caller's responsibility.
    """
    boundary = boundary or BoundaryData.empty()
    mld = mld_over_point(graph, boundary)
    if is_not_lc(mld) or mld < 0:
        raise NotLCInputError(f"germ is not log canonical (mld = {mld})")
    _warn_rationality(graph, known_rational)
    model, moved, pullback = _model(graph, boundary)
    cycle = Cycle((1,)) if graph.is_smooth_point() else laufer_fundamental_cycle(model)
    return _threshold(pullback, cycle)


def verify_surface_bound(
    graph: ResolutionGraph,
    boundary: Optional[BoundaryData] = None,
    cycle: Optional[Cycle] = None,
    solver: Optional[PullbackSolver] = None,
    known_rational: bool = False,
) -> GermReport:
    """
    Check lct(m_z) >= eps^2 / 24 and e_i + eps^2 / 4 <= 1 with eps = mld.

    Along the way the adjunction identity (Delta_full - D).D = 2 is rechecked
    for every exceptional D, together with the per-component pairing bound.
    A precomputed fundamental cycle and solver may be passed in when
    sweeping boundaries over one graph.
    """
    boundary = boundary or BoundaryData.empty()
    if graph.is_smooth_point():
        model, moved = smooth_point_blowup(boundary)
        solver = PullbackSolver(model, require_minimal=False)
        cycle = Cycle((1,))
    else:
        model, moved = graph, boundary
        solver = solver or PullbackSolver(graph)
        cycle = cycle if cycle is not None else laufer_fundamental_cycle(graph)
    check = solver.surface_check(moved, cycle)
    _warn_rationality(graph, known_rational)

    scaled = solver.scaled(moved)
    den = scaled.denominator
    top = max(scaled.numerators)
    pullback = scaled.values()
    checks = []
    for j, (full, w) in enumerate(zip(solver.full_pairings(scaled), model.weights)):
        pairing = full - scaled.numerators[j] * w
        checks.append(ComponentCheck(j, Fraction(pairing, den), pairing < 2 * den, scaled.numerators[j] <= top))

    return GermReport(
        exceptional_pullback_coeffs=pullback,
        log_discrepancies=[1 - e for e in pullback],
        mld=check.mld,
        lct_maximal_ideal=check.lct,
        epsilon_sq_over_24_ok=check.passed,
        epsilon_sq_over_4_ok=check.eps_sq_over_4_ok,
        fundamental_cycle=cycle,
        required=check.required,
        adjunction_ok=check.adjunction_ok,
        component_checks=checks,
    )


def random_lc_boundary(
    graph: ResolutionGraph,
    rng: random.Random,
    max_curves: int = 3,
    solver: Optional[PullbackSolver] = None,
) -> BoundaryData:
    """
    A random boundary with mld > 0 over the point, klt by construction.

    Every curve meets one or two exceptional curves with incidence 1 or 2.
    Its coefficient is drawn from {1/4, 1/2, 3/4} below the cap
    min (1 - e_i) / v_i, where e is the pullback of the curves drawn so far
    and v the change of e per unit coefficient. When no fixed value fits,
    a quarter, half or three quarters of the cap is used instead.
    """
    if graph.is_smooth_point():
        count = rng.randint(1, max(1, min(max_curves, 2)))
        return BoundaryData(tuple(BoundaryCurve(rng.choice(RANDOM_COEFFICIENTS), ()) for _ in range(count)))
    solver = solver or PullbackSolver(graph)
    n = len(graph)
    curves: List[BoundaryCurve] = []
    for _ in range(rng.randint(1, max(max_curves, 1))):
        incidences = [0] * n
        for vertex in rng.sample(range(n), min(n, rng.randint(1, 2))):
            incidences[vertex] = rng.choice((1, 2))
        state = solver.scaled(BoundaryData(tuple(curves)))
        cap = state.coefficient_cap(solver.response(incidences), solver.determinant)
        if cap is not None and cap <= 0:
            raise NotKLTError(f"{graph.label or 'graph'} has mld {state.mld()}; no klt boundary can be added")
        fitting = [c for c in RANDOM_COEFFICIENTS if cap is None or c < cap]
        coefficient = rng.choice(fitting) if fitting else cap * rng.choice(RANDOM_COEFFICIENTS)
        curves.append(BoundaryCurve(coefficient, tuple(incidences)))
    return BoundaryData(tuple(curves))
