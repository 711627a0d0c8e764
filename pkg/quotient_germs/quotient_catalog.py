"""
Dual graphs of the minimal resolutions of quotient surface singularities.

Vertex order: the horizontal arm is listed left to right as drawn in the
classification tables, and the vertical branch vertex comes last. Expected
fundamental cycles below use the same order.
"""

from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import InvalidParametersError, UnknownRowError
from .hj_cyclic import check_coprime_pair, cyclic_graph, hj_expand
from .resolution_graph import Cycle, ResolutionGraph


class Family(Enum):
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"
    TETRAHEDRAL = "tetrahedral"
    OCTAHEDRAL = "octahedral"
    ICOSAHEDRAL = "icosahedral"

    @classmethod
    def parse(cls, text: str) -> "Family":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise InvalidParametersError(f"unknown family {text!r}") from None


# placeholder for the central weight -b inside a row shape
CENTRAL = None


@dataclass(frozen=True)
class RowShape:
    """One table row: m = modulus * (b - 2) + residue."""

    residue: int
    chain: Tuple[Optional[int], ...]
    branch_at: int
    cycle_b2: Tuple[int, ...]

    def weights(self, b: int) -> List[int]:
        return [-b if w is CENTRAL else w for w in self.chain] + [-2]


POLYHEDRAL_MODULUS = {
    Family.TETRAHEDRAL: 6,
    Family.OCTAHEDRAL: 12,
    Family.ICOSAHEDRAL: 30,
}

TABLE_ROWS: Dict[Family, Dict[int, RowShape]] = {
    Family.TETRAHEDRAL: {
        1: RowShape(1, (-2, -2, CENTRAL, -2, -2), 2, (1, 2, 3, 2, 1, 2)),
        3: RowShape(3, (-2, -2, CENTRAL, -3), 2, (1, 2, 2, 1, 1)),
        5: RowShape(5, (-3, CENTRAL, -3), 1, (1, 2, 1, 1)),
    },
    Family.OCTAHEDRAL: {
        1: RowShape(1, (-2, -2, CENTRAL, -2, -2, -2), 2, (2, 3, 4, 3, 2, 1, 2)),
        5: RowShape(5, (-3, CENTRAL, -2, -2, -2), 1, (1, 2, 2, 2, 1, 1)),
        7: RowShape(7, (-2, -2, CENTRAL, -4), 2, (1, 2, 2, 1, 1)),
        11: RowShape(11, (-3, CENTRAL, -4), 1, (1, 2, 1, 1)),
    },
    Family.ICOSAHEDRAL: {
        1: RowShape(1, (-2, -2, CENTRAL, -2, -2, -2, -2), 2, (2, 4, 6, 5, 4, 3, 2, 3)),
        7: RowShape(7, (-2, -2, CENTRAL, -2, -3), 2, (1, 2, 3, 2, 1, 2)),
        11: RowShape(11, (-3, CENTRAL, -2, -2, -2, -2), 1, (1, 2, 2, 2, 2, 1, 1)),
        13: RowShape(13, (-2, -2, CENTRAL, -3, -2), 2, (1, 2, 2, 1, 1, 1)),
        17: RowShape(17, (-3, CENTRAL, -2, -3), 1, (1, 2, 2, 1, 1)),
        19: RowShape(19, (-2, -2, CENTRAL, -5), 2, (1, 2, 2, 1, 1)),
        23: RowShape(23, (-3, CENTRAL, -3, -2), 1, (1, 2, 1, 1, 1)),
        29: RowShape(29, (-3, CENTRAL, -5), 1, (1, 2, 1, 1)),
    },
}


@dataclass(frozen=True)
class CatalogEntry:
    family: Family
    params: Dict[str, int] = field(hash=False)
    graph: ResolutionGraph
    derived_b: int

    @property
    def key(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family.value}({inner})"


@dataclass(frozen=True)
class ExpectedCycle:
    family: Family
    row: Optional[int]
    cycle: Cycle


def cyclic_entry(n: int, q: int) -> CatalogEntry:
    graph = cyclic_graph(n, q)
    return CatalogEntry(Family.CYCLIC, {"n": n, "q": q}, graph, -graph.weights[0])


def dihedral_graph(n: int, q: int) -> CatalogEntry:
    """Central -b with two (-2)-leaves and the chain -b_1..-b_r, where n/q = [b, b_1, ..., b_r]."""
    check_coprime_pair(n, q, lower=1)
    b, *tail = hj_expand(n, q).terms
    chain = [-2, -b] + [-t for t in tail]
    graph = ResolutionGraph.star(chain, 1, True, f"D({n},{q})")
    return CatalogEntry(Family.DIHEDRAL, {"n": n, "q": q}, graph, b)


def row_shape(family: Family, m: int) -> Tuple[RowShape, int]:
    """The table row of ``m`` and its central weight b."""
    if family not in POLYHEDRAL_MODULUS:
        raise InvalidParametersError(f"{family.value} has no table rows")
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InvalidParametersError(f"m must be a positive integer, got {m!r}")
    modulus = POLYHEDRAL_MODULUS[family]
    residue = m % modulus
    row = TABLE_ROWS[family].get(residue)
    if row is None:
        allowed = ", ".join(str(r) for r in TABLE_ROWS[family])
        raise InvalidParametersError(f"{family.value} needs m = {allowed} (mod {modulus}); got m={m}")
    b = (m - residue) // modulus + 2
    if b < 2:
        raise InvalidParametersError(f"m={m} gives central weight b={b} < 2")
    return row, b


def _polyhedral_graph(family: Family, m: int) -> CatalogEntry:
    row, b = row_shape(family, m)
    label = f"{family.value[0].upper()}({m})"
    graph = ResolutionGraph.star(row.weights(b)[:-1], row.branch_at, True, label)
    return CatalogEntry(family, {"m": m}, graph, b)


def tetrahedral_graph(m: int) -> CatalogEntry:
    return _polyhedral_graph(Family.TETRAHEDRAL, m)


def octahedral_graph(m: int) -> CatalogEntry:
    return _polyhedral_graph(Family.OCTAHEDRAL, m)


def icosahedral_graph(m: int) -> CatalogEntry:
    return _polyhedral_graph(Family.ICOSAHEDRAL, m)


def catalog_entry(family: Family, **params: int) -> CatalogEntry:
    """Dispatch on the family: n, q for cyclic/dihedral, m otherwise."""
    try:
        if family is Family.CYCLIC:
            return cyclic_entry(params["n"], params["q"])
        if family is Family.DIHEDRAL:
            return dihedral_graph(params["n"], params["q"])
        return _polyhedral_graph(family, params["m"])
    except KeyError as missing:
        raise InvalidParametersError(f"{family.value} needs parameter {missing}") from None


def cyclic_pattern(r: int) -> Cycle:
    """All ones on a chain of r (-2)-curves."""
    return Cycle((1,) * r)


def dihedral_pattern(r: int) -> Cycle:
    """(1, 2, ..., 2, 1; 1) on a dihedral graph whose chain after the centre has r vertices."""
    return Cycle((1, 2) + (2,) * (r - 1) + (1, 1))


def expected_fundamental_cycle_b2(
    family: Family, residue: Optional[int] = None, length: Optional[int] = None
) -> ExpectedCycle:
    """
    Transcribed fundamental cycles of the b = 2 members.

    Cyclic and dihedral rows are patterns, so they take the vertex count
    ``length`` instead of a residue.
    """
    if family is Family.CYCLIC:
        if not length or length < 1:
            raise UnknownRowError("the cyclic pattern needs a chain length >= 1")
        return ExpectedCycle(family, None, cyclic_pattern(length))
    if family is Family.DIHEDRAL:
        if not length or length < 4:
            raise UnknownRowError("the dihedral pattern needs at least 4 vertices")
        return ExpectedCycle(family, None, dihedral_pattern(length - 3))
    row = TABLE_ROWS.get(family, {}).get(residue)
    if row is None:
        raise UnknownRowError(f"no {family.value} row for residue {residue!r}")
    return ExpectedCycle(family, residue, Cycle(row.cycle_b2))


def table_members_b2() -> Iterator[Tuple[CatalogEntry, ExpectedCycle]]:
    """The fifteen tabulated rows, each at its b = 2 member."""
    for family, rows in TABLE_ROWS.items():
        for residue in rows:
            yield catalog_entry(family, m=residue), expected_fundamental_cycle_b2(family, residue)


def polyhedral_m_values(family: Family, max_b: int) -> List[int]:
    modulus = POLYHEDRAL_MODULUS[family]
    return [modulus * (b - 2) + residue for b in range(2, max_b + 1) for residue in TABLE_ROWS[family]]


def enumerate_catalog(max_n: int, max_b: int, families: Optional[Sequence[Family]] = None) -> Iterator[CatalogEntry]:
    """Every catalog germ in the sweep range, in a fixed order."""
    wanted = set(families) if families else set(Family)
    if Family.CYCLIC in wanted:
        for n in range(2, max_n + 1):
            for q in range(1, n):
                if gcd(n, q) == 1:
                    yield cyclic_entry(n, q)
    if Family.DIHEDRAL in wanted:
        for n in range(3, max_n + 1):
            for q in range(2, n):
                if gcd(n, q) == 1:
                    yield dihedral_graph(n, q)
    for family in (Family.TETRAHEDRAL, Family.OCTAHEDRAL, Family.ICOSAHEDRAL):
        if family in wanted:
            for m in sorted(polyhedral_m_values(family, max_b)):
                yield _polyhedral_graph(family, m)