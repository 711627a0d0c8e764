"""
Verification sweeps over the quotient catalog.

Each sweep maps a pure, module-level unit function over catalog parameters
and merges the results in parameter order, so the outcome does not depend on
the worker count.
"""

import random
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .config import RunConfig
from .fundamental_cycle import check_6e, laufer_fundamental_cycle, laufer_trace
from .log_discrepancy import (
    BoundaryData,
    PullbackSolver,
    canonical_log_discrepancies,
    pullback_residuals,
    random_lc_boundary,
)
from .logger import get_logger
from .quotient_catalog import (
    CatalogEntry,
    Family,
    catalog_entry,
    enumerate_catalog,
    expected_fundamental_cycle_b2,
    table_members_b2,
)
from .report import Report

# (family value, params) identifies a catalog germ across processes
EntryKey = Tuple[str, Tuple[Tuple[str, int], ...]]

CYCLIC_PATTERN_SIZES = (2, 3, 5, 8, 13)
DIHEDRAL_PATTERN_SIZES = (3, 4, 6, 9, 12)


def entry_key(entry: CatalogEntry) -> EntryKey:
    return entry.family.value, tuple(entry.params.items())


def entry_from_key(key: EntryKey) -> CatalogEntry:
    family, params = key
    return catalog_entry(Family(family), **dict(params))


def parallel_map(func: Callable, items: Sequence, jobs: int = 1) -> List:
    """Ordered map, fanned out over ``jobs`` worker processes when jobs > 1."""
    if jobs <= 1 or len(items) < 2:
        return [func(item) for item in items]
    with Pool(processes=jobs) as pool:
        return list(pool.imap(func, items, chunksize=max(1, len(items) // (jobs * 8))))


def germ_rng(seed: int, key: EntryKey) -> random.Random:
    family, params = key
    label = ",".join(f"{k}={v}" for k, v in params)
    return random.Random(f"{seed}:{family}:{label}")


def six_e_unit(key: EntryKey) -> Dict[str, Any]:
    entry = entry_from_key(key)
    trace = laufer_trace(entry.graph)
    bound = check_6e(entry.graph, trace.cycle)
    return {
        "family": key[0],
        "germ": entry.key,
        "vertices": len(entry.graph),
        "max_coefficient": bound.max_coefficient,
        "passes": bound.passes,
        "steps": trace.steps,
        "total": trace.cycle.total,
    }


def discrepancy_unit(key: EntryKey) -> Dict[str, Any]:
    entry = entry_from_key(key)
    discrepancies = canonical_log_discrepancies(entry.graph)
    pullback = [1 - a for a in discrepancies]
    residuals = pullback_residuals(entry.graph, BoundaryData.empty(), pullback)
    all_minus_two = all(w == -2 for w in entry.graph.weights)
    return {
        "germ": entry.key,
        "klt": all(0 < a <= 1 for a in discrepancies),
        "du_val_ok": (not all_minus_two) or all(a == 1 for a in discrepancies),
        "residuals_zero": not any(residuals),
    }


def surface_bound_unit(task: Tuple[EntryKey, int, int]) -> Dict[str, Any]:
    """Empty boundary plus ``samples`` random lc boundaries on one catalog germ."""
    key, seed, samples = task
    entry = entry_from_key(key)
    graph = entry.graph
    cycle = laufer_fundamental_cycle(graph)
    six_e = check_6e(graph, cycle).passes
    solver = PullbackSolver(graph)
    rng = germ_rng(seed, key)
    boundaries = [BoundaryData.empty()] + [random_lc_boundary(graph, rng, solver=solver) for _ in range(samples)]

    failures: List[Dict[str, Any]] = []
    min_ratio: Optional[Fraction] = None
    eps4_ok = True
    consistency_ok = True
    for boundary in boundaries:
        check = solver.surface_check(boundary, cycle)
        consistency_ok = consistency_ok and check.adjunction_ok
        if six_e and not check.eps_sq_over_4_ok:
            eps4_ok = False
        ratio = check.ratio
        if ratio is not None and (min_ratio is None or ratio < min_ratio):
            min_ratio = ratio
        if not check.passed:
            failures.append(
                {"germ": entry.key, "epsilon": check.mld, "lct": check.lct, "required": check.required, "passed": False}
            )
    return {
        "family": key[0],
        "germ": entry.key,
        "checked": len(boundaries),
        "nontrivial": sum(1 for b in boundaries if b.meets_point()),
        "failures": failures,
        "min_ratio": min_ratio,
        "eps4_ok": eps4_ok,
        "consistency_ok": consistency_ok,
    }


class GermVerifier:
    """Runs the catalog-wide checks and turns them into reports."""

    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or RunConfig()
        self.logger = get_logger()

    def _keys(self, families: Optional[Iterable[Family]] = None) -> List[EntryKey]:
        entries = enumerate_catalog(self.config.max_n, self.config.max_b, list(families) if families else None)
        return [entry_key(e) for e in entries]

    def verify_tables(self) -> Report:
        """Fundamental cycles of the b = 2 table rows plus the cyclic and dihedral patterns."""
        report = Report("Fundamental cycles of the b = 2 table rows",
                        columns=["family", "row", "graph", "expected", "computed", "matched"])
        table_hits = 0
        table_total = 0
        for entry, expected in table_members_b2():
            computed = laufer_fundamental_cycle(entry.graph)
            matched = computed == expected.cycle
            table_total += 1
            table_hits += matched
            report.add(family=entry.family.value, row=f"m = {expected.row}", graph=entry.key,
                       expected=expected.cycle, computed=computed, matched=matched)
            self._log_match(entry.key, matched)

        pattern_hits = 0
        pattern_total = 0
        for size in CYCLIC_PATTERN_SIZES:
            entry = catalog_entry(Family.CYCLIC, n=size + 1, q=size)
            pattern_hits += self._check_pattern(report, entry, "all ones")
            pattern_total += 1
        for size in DIHEDRAL_PATTERN_SIZES:
            entry = catalog_entry(Family.DIHEDRAL, n=size, q=size - 1)
            pattern_hits += self._check_pattern(report, entry, "(1,2,...,2,1;1)")
            pattern_total += 1

        report.summary = {
            "table_rows_matched": f"{table_hits}/{table_total}",
            "patterns_matched": f"{pattern_hits}/{pattern_total}",
        }
        report.passed = table_hits == table_total and pattern_hits == pattern_total
        return report

    def _check_pattern(self, report: Report, entry: CatalogEntry, row: str) -> bool:
        expected = expected_fundamental_cycle_b2(entry.family, length=len(entry.graph))
        computed = laufer_fundamental_cycle(entry.graph)
        matched = computed == expected.cycle
        report.add(family=entry.family.value, row=row, graph=entry.key,
                   expected=expected.cycle, computed=computed, matched=matched)
        self._log_match(entry.key, matched)
        return matched

    def _log_match(self, name: str, matched: bool):
        if matched:
            self.logger.info(f"✅ {name} matches its table row")
        else:
            self.logger.warning(f"❌ {name} does not match its table row")

    def sweep_6e(self) -> Report:
        """Largest fundamental-cycle coefficient in every family of the sweep range."""
        results = parallel_map(six_e_unit, self._keys(), self.config.jobs)
        report = Report(f"Fundamental cycle coefficients (n <= {self.config.max_n}, b <= {self.config.max_b})",
                        columns=["family", "germs", "max_coefficient", "attained_at", "passes"])
        for family in Family:
            rows = [r for r in results if r["family"] == family.value]
            if not rows:
                continue
            top = max(r["max_coefficient"] for r in rows)
            attained = [r["germ"] for r in rows if r["max_coefficient"] == top]
            report.add(family=family.value, germs=len(rows), max_coefficient=top,
                       attained_at=", ".join(attained[:3]) + (" ..." if len(attained) > 3 else ""),
                       passes=all(r["passes"] for r in rows))
        overall = max((r["max_coefficient"] for r in results), default=0)
        violations = [r["germ"] for r in results if not r["passes"]]
        steps_ok = all(r["steps"] + 1 == r["total"] and r["total"] <= 6 * r["vertices"] for r in results)
        report.summary = {
            "germs": len(results),
            "global_max_coefficient": overall,
            "violations": violations,
            "laufer_steps_within_6V": steps_ok,
        }
        report.passed = not violations and steps_ok
        if violations:
            self.logger.warning(f"❌ {len(violations)} germ(s) exceed coefficient 6")
        return report

    def discrepancy_sanity(self) -> Report:
        results = parallel_map(discrepancy_unit, self._keys(), self.config.jobs)
        report = Report("Discrepancies without boundary")
        bad = [r["germ"] for r in results if not (r["klt"] and r["du_val_ok"] and r["residuals_zero"])]
        report.summary = {"germs": len(results), "failures": bad}
        report.passed = not bad
        return report

    def surface_bound_sweep(self) -> Report:
        """lct(m_z) >= mld^2 / 24 on every catalog germ, with random lc boundaries."""
        tasks = [(key, self.config.seed, self.config.samples) for key in self._keys()]
        results = parallel_map(surface_bound_unit, tasks, self.config.jobs)
        report = Report(f"lct of the maximal ideal against mld^2/24 ({self.config.samples} boundaries per germ)",
                        columns=["family", "germs", "pairs", "failures", "min_lct_over_eps_sq", "attained_at"])
        for family in Family:
            rows = [r for r in results if r["family"] == family.value]
            if not rows:
                continue
            ratios = [(r["min_ratio"], r["germ"]) for r in rows if r["min_ratio"] is not None]
            low = min(ratios) if ratios else (None, "")
            report.add(family=family.value, germs=len(rows), pairs=sum(r["checked"] for r in rows),
                       failures=sum(len(r["failures"]) for r in rows),
                       min_lct_over_eps_sq=low[0], attained_at=low[1])
        failures = [f for r in results for f in r["failures"]]
        ratios = [r["min_ratio"] for r in results if r["min_ratio"] is not None]
        report.summary = {
            "pairs": sum(r["checked"] for r in results),
            "nontrivial_boundaries": sum(r["nontrivial"] for r in results),
            "failures": failures,
            "min_lct_over_eps_sq": min(ratios) if ratios else None,
            "threshold": Fraction(1, 24),
            "eps_sq_over_4_ok": all(r["eps4_ok"] for r in results),
            "pullback_rechecks_ok": all(r["consistency_ok"] for r in results),
        }
        report.passed = not failures and report.summary["eps_sq_over_4_ok"] and report.summary["pullback_rechecks_ok"]
        return report
