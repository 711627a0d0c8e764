"""
Seeded property checks: oracle equivalence, monotonicity, tie-break
invariance and the exact identities of the catalog.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

import networkx as nx

from .config import RunConfig
from .exact_core import is_not_lc
from .fundamental_cycle import (
    brute_force_fundamental_cycle,
    check_monotonicity,
    comparable_lowering,
    laufer_fundamental_cycle,
)
from .hj_cyclic import hj_evaluate, hj_expand
from .log_discrepancy import lct_maximal_ideal, mld_over_point, random_lc_boundary
from .logger import get_logger
from .monomial_plane import (
    MonomialBoundary,
    example_sharpness_check,
    monomial_lct,
    monomial_mld,
    primitive_weight_lct,
)
from .quotient_catalog import CatalogEntry, enumerate_catalog
from .report import Report
from .resolution_graph import Edge, ResolutionGraph, is_definite
from .verification import GermVerifier

ORACLE_MAX_VERTICES = 8
ORACLE_BOUND = 10


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, ok: bool, label: str):
        self.checked += 1
        if not ok:
            self.violations.append(label)


def random_definite_tree(rng: random.Random, max_vertices: int = 7, low: int = -5, high: int = -2) -> ResolutionGraph:
    """A random tree with weights in [low, high] and a negative definite matrix."""
    while True:
        n = rng.randint(1, max_vertices)
        if n == 1:
            edges = []
        elif n == 2:
            edges = [(0, 1)]
        else:
            edges = list(nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)]).edges())
        weights = tuple(rng.randint(low, high) for _ in range(n))
        graph = ResolutionGraph(weights, tuple(Edge(a, b) for a, b in edges), True, "random tree")
        if is_definite(graph):
            return graph


class PropertySuite:
    """Each check returns a PropertyResult; ``run`` gathers them into a report."""

    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or RunConfig()
        self.logger = get_logger()
        self.oracle_max_n = int(self.config.options.get("oracle_max_n") or self.config.max_n)

    def _rng(self, name: str) -> random.Random:
        return random.Random(f"{self.config.seed}:{name}")

    def small_catalog(self) -> List[CatalogEntry]:
        """Every catalog graph of the sweep range with at most eight vertices."""
        return [
            e
            for e in enumerate_catalog(self.oracle_max_n, self.config.max_b)
            if len(e.graph) <= ORACLE_MAX_VERTICES
        ]

    def oracle_equivalence(self, trees: int = 200) -> PropertyResult:
        result = PropertyResult("laufer equals brute force")
        for entry in self.small_catalog():
            graph = entry.graph
            result.record(laufer_fundamental_cycle(graph) == brute_force_fundamental_cycle(graph, ORACLE_BOUND), entry.key)
        rng = self._rng("trees")
        for index in range(trees):
            graph = random_definite_tree(rng)
            ok = laufer_fundamental_cycle(graph) == brute_force_fundamental_cycle(graph, ORACLE_BOUND)
            result.record(ok, f"tree {index} {list(graph.weights)}")
        return result

    def full_support(self) -> PropertyResult:
        result = PropertyResult("fundamental cycle has full support")
        for entry in self.small_catalog():
            cycle = laufer_fundamental_cycle(entry.graph)
            result.record(len(cycle.support) == len(cycle), entry.key)
        return result

    def monotonicity(self, pairs: int = 500) -> PropertyResult:
        result = PropertyResult("lowering weights lowers the fundamental cycle")
        rng = self._rng("monotonicity")
        pool = list(enumerate_catalog(self.oracle_max_n, self.config.max_b))
        for index in range(pairs):
            entry = rng.choice(pool)
            drops = [rng.choice((0, 0, 1, 2)) for _ in entry.graph.weights]
            lowered = comparable_lowering(entry.graph, drops)
            result.record(check_monotonicity(entry.graph, lowered), f"pair {index}: {entry.key} drops {drops}")
        return result

    def tie_break_invariance(self, policies: int = 50) -> PropertyResult:
        result = PropertyResult("start and tie-break invariance")
        rng = self._rng("policies")
        for entry in self.small_catalog():
            graph = entry.graph
            reference = laufer_fundamental_cycle(graph, "lowest")
            outputs = [laufer_fundamental_cycle(graph, "highest")]
            for _ in range(policies):
                start = rng.randrange(len(graph))
                outputs.append(laufer_fundamental_cycle(graph, f"random:{rng.getrandbits(32)}", start))
            result.record(all(c == reference for c in outputs), entry.key)
        return result

    def hj_roundtrip(self, max_n: int = 300) -> PropertyResult:
        result = PropertyResult("continued fraction roundtrip")
        for n in range(2, max_n + 1):
            for q in range(1, n):
                if Fraction(n, q).denominator != q:
                    continue
                expansion = hj_expand(n, q)
                ok = hj_evaluate(expansion.terms) == Fraction(n, q) and all(b >= 2 for b in expansion.terms)
                result.record(ok, f"{n}/{q}")
        return result

    def discrepancy_sanity(self) -> PropertyResult:
        result = PropertyResult("catalog discrepancies are klt and Du Val exactly on (-2)-graphs")
        report = GermVerifier(self.config).discrepancy_sanity()
        result.checked = report.summary["germs"]
        result.violations = list(report.summary["failures"])
        return result

    def lct_below_mld(self) -> PropertyResult:
        result = PropertyResult("lct of the maximal ideal is at most the mld")
        for entry in enumerate_catalog(self.config.max_n, self.config.max_b):
            lct = lct_maximal_ideal(entry.graph, known_rational=True)
            result.record(lct <= mld_over_point(entry.graph), entry.key)
        return result

    def mld_scaling(self, scales: int = 20) -> PropertyResult:
        result = PropertyResult("shrinking the boundary never lowers the mld")
        rng = self._rng("scaling")
        for entry in self.small_catalog():
            boundary = random_lc_boundary(entry.graph, rng)
            full = mld_over_point(entry.graph, boundary)
            for _ in range(scales):
                s = Fraction(rng.randint(0, 12), 12)
                scaled = mld_over_point(entry.graph, boundary.scaled(s))
                result.record(not is_not_lc(scaled) and scaled >= full, f"{entry.key} s={s}")
        return result

    def example_family(self) -> PropertyResult:
        result = PropertyResult("sharpness family: mld = a(E) = 1/m, bound 1/m^2")
        for m in range(1, self.config.max_m + 1):
            result.record(example_sharpness_check(m).order_bound_ok, f"m={m}")
        return result

    def monomial_mld_in_lambda(self, sets: int = 30, steps: int = 10) -> PropertyResult:
        result = PropertyResult("monomial mld is 2 at lambda 0 and nonincreasing in lambda")
        rng = self._rng("lambda")
        for index in range(sets):
            exponents = _random_exponents(rng)
            previous = None
            for k in range(steps):
                mb = MonomialBoundary(Fraction(k, 4), exponents)
                value = monomial_mld(mb)
                if k == 0:
                    result.record(value == 2, f"set {index} at lambda 0")
                ok = previous is None or is_not_lc(value) or (not is_not_lc(previous) and value <= previous)
                result.record(ok, f"set {index} at lambda {mb.lam}")
                previous = value
        return result

    def monomial_lct_brute_force(self, sets: int = 30) -> PropertyResult:
        result = PropertyResult("monomial lct agrees with a weight brute force")
        rng = self._rng("lct")
        for index in range(sets):
            exponents = _random_exponents(rng)
            result.record(monomial_lct(exponents) == primitive_weight_lct(exponents, 50), f"set {index} {exponents}")
        return result

    def checks(self) -> List[Callable[[], PropertyResult]]:
        return [
            self.oracle_equivalence,
            self.full_support,
            self.monotonicity,
            self.tie_break_invariance,
            self.hj_roundtrip,
            self.discrepancy_sanity,
            self.lct_below_mld,
            self.mld_scaling,
            self.example_family,
            self.monomial_mld_in_lambda,
            self.monomial_lct_brute_force,
        ]

    def run(self) -> Report:
        report = Report("Property suite", columns=["property", "checked", "violations", "passed"])
        for check in self.checks():
            outcome = check()
            if outcome.passed:
                self.logger.info(f"✅ {outcome.name}: {outcome.checked} checked")
            else:
                self.logger.warning(f"❌ {outcome.name}: {len(outcome.violations)} violation(s)")
            report.add(property=outcome.name, checked=outcome.checked,
                       violations=outcome.violations[:5], passed=outcome.passed)
        report.passed = all(row["passed"] for row in report.rows)
        report.summary = {"properties": len(report.rows), "seed": self.config.seed}
        return report


def _random_exponents(rng: random.Random) -> List[tuple]:
    target = rng.randint(1, 4)
    pairs = set()
    while len(pairs) < target:
        pair = (rng.randint(0, 6), rng.randint(0, 6))
        if pair != (0, 0):
            pairs.add(pair)
    return sorted(pairs)
