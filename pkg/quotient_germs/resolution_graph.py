"""
Weighted dual graphs of exceptional divisors and cycles supported on them.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterator, List, Mapping, Sequence, Tuple

import networkx as nx

from .errors import IndexOutOfRangeError, InvalidGraphError
from .exact_core import RationalMatrix, SparseFactorization, factor_symmetric, format_rational, leading_principal_minors


GRAPH_KEYS = {"minimal_resolution", "vertices", "edges"}
VERTEX_KEYS = {"id", "weight"}
EDGE_KEYS = {"a", "b", "mult"}


@dataclass(frozen=True)
class Vertex:
    id: int
    weight: int


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    mult: int = 1


@dataclass(frozen=True)
class Diagnostic:
    """One violated invariant reported by ``validate``."""

    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ResolutionGraph:
    """
    Dual graph of the exceptional divisor of a resolution.

    Vertex ``i`` carries the self-intersection ``weights[i]``; each edge
    records how many points two components share. Components are smooth
    rational curves, so there is no genus field. The empty graph stands for
    a smooth point.
    """

    weights: Tuple[int, ...]
    edges: Tuple[Edge, ...] = ()
    minimal_resolution: bool = True
    label: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.weights)
        for w in self.weights:
            if isinstance(w, bool) or not isinstance(w, int):
                raise InvalidGraphError(f"vertex weight {w!r} is not an integer")
        for edge in self.edges:
            if not (0 <= edge.a < n and 0 <= edge.b < n):
                raise InvalidGraphError(f"edge ({edge.a}, {edge.b}) refers to a missing vertex")

    @classmethod
    def chain(cls, weights: Sequence[int], minimal_resolution: bool = True, label: str = "") -> "ResolutionGraph":
        """A linear chain with the given self-intersections, in order."""
        edges = tuple(Edge(i, i + 1) for i in range(len(weights) - 1))
        return cls(tuple(weights), edges, minimal_resolution, label)

    @classmethod
    def star(
        cls, chain_weights: Sequence[int], branch_at: int, minimal_resolution: bool = True, label: str = ""
    ) -> "ResolutionGraph":
        """A chain plus one (-2)-vertex, listed last, attached to chain vertex ``branch_at``."""
        n = len(chain_weights)
        if not 0 <= branch_at < n:
            raise InvalidGraphError(f"branch position {branch_at} outside the chain")
        edges = tuple(Edge(i, i + 1) for i in range(n - 1)) + (Edge(branch_at, n),)
        return cls(tuple(chain_weights) + (-2,), edges, minimal_resolution, label)

    @classmethod
    def from_document(
        cls, document: Mapping[str, Any], label: str = "", extra_keys: Sequence[str] = ()
    ) -> "ResolutionGraph":
        """Build a graph from the graph file format; unknown keys are refused."""
        if not isinstance(document, Mapping):
            raise InvalidGraphError("graph document must be an object")
        unknown = set(document) - GRAPH_KEYS - set(extra_keys)
        if unknown:
            raise InvalidGraphError(f"unknown key(s) {sorted(unknown)}")
        minimal = document.get("minimal_resolution", True)
        if not isinstance(minimal, bool):
            raise InvalidGraphError("minimal_resolution must be a boolean")

        vertices = document.get("vertices", [])
        if not isinstance(vertices, list):
            raise InvalidGraphError("vertices must be a list")
        weights: List[int] = []
        for position, vertex in enumerate(vertices):
            if not isinstance(vertex, Mapping) or set(vertex) != VERTEX_KEYS:
                raise InvalidGraphError(f"vertices[{position}] must have exactly the keys id, weight")
            if vertex["id"] != position:
                raise InvalidGraphError(f"vertices[{position}] has id {vertex['id']!r}; ids must be 0..n-1 in order")
            weight = vertex["weight"]
            if isinstance(weight, bool) or not isinstance(weight, int):
                raise InvalidGraphError(f"vertices[{position}].weight must be an integer")
            weights.append(weight)

        raw_edges = document.get("edges", [])
        if not isinstance(raw_edges, list):
            raise InvalidGraphError("edges must be a list")
        edges: List[Edge] = []
        for position, raw in enumerate(raw_edges):
            if not isinstance(raw, Mapping) or not {"a", "b"} <= set(raw) or set(raw) - EDGE_KEYS:
                raise InvalidGraphError(f"edges[{position}] must have keys a, b and optionally mult")
            values = [raw["a"], raw["b"], raw.get("mult", 1)]
            if any(isinstance(v, bool) or not isinstance(v, int) for v in values):
                raise InvalidGraphError(f"edges[{position}] entries must be integers")
            edges.append(Edge(*values))
        return cls(tuple(weights), tuple(edges), minimal, label)

    def to_document(self) -> Dict[str, Any]:
        return {
            "minimal_resolution": self.minimal_resolution,
            "vertices": [{"id": i, "weight": w} for i, w in enumerate(self.weights)],
            "edges": [{"a": e.a, "b": e.b, "mult": e.mult} for e in self.edges],
        }

    @property
    def vertices(self) -> List[Vertex]:
        return [Vertex(i, w) for i, w in enumerate(self.weights)]

    def __len__(self) -> int:
        return len(self.weights)

    def is_smooth_point(self) -> bool:
        return len(self.weights) == 0

    @cached_property
    def int_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """The intersection matrix as plain integers (self-loops ignored)."""
        n = len(self.weights)
        rows = [[0] * n for _ in range(n)]
        for i, w in enumerate(self.weights):
            rows[i][i] = w
        for e in self.edges:
            if e.a != e.b:
                rows[e.a][e.b] += e.mult
                rows[e.b][e.a] += e.mult
        return tuple(tuple(r) for r in rows)

    @cached_property
    def factorization(self) -> SparseFactorization:
        """Sparse elimination of the intersection matrix, built from the adjacency."""
        rows = []
        for i, w in enumerate(self.weights):
            row = dict(self.adjacency[i])
            row[i] = w
            rows.append(row)
        return factor_symmetric(rows)

    @cached_property
    def adjacency(self) -> Tuple[Dict[int, int], ...]:
        """For each vertex, neighbour -> total edge multiplicity."""
        table: List[Dict[int, int]] = [dict() for _ in self.weights]
        for e in self.edges:
            if e.a != e.b:
                table[e.a][e.b] = table[e.a].get(e.b, 0) + e.mult
                table[e.b][e.a] = table[e.b].get(e.a, 0) + e.mult
        return tuple(table)

    def neighbours(self, vertex: int) -> Dict[int, int]:
        self._check_index(vertex)
        return dict(self.adjacency[vertex])

    def degree(self, vertex: int) -> int:
        return sum(self.neighbours(vertex).values())

    def with_weights(self, weights: Sequence[int]) -> "ResolutionGraph":
        """Same edges, new self-intersections."""
        if len(weights) != len(self.weights):
            raise InvalidGraphError("weight vector does not match the vertex count")
        return ResolutionGraph(tuple(weights), self.edges, self.minimal_resolution, self.label)

    def to_networkx(self) -> nx.MultiGraph:
        """One networkx edge per intersection point."""
        graph = nx.MultiGraph()
        for i, w in enumerate(self.weights):
            graph.add_node(i, weight=w)
        for e in self.edges:
            for _ in range(max(e.mult, 0)):
                graph.add_edge(e.a, e.b)
        return graph

    def _check_index(self, vertex: int):
        if not 0 <= vertex < len(self.weights):
            raise IndexOutOfRangeError(f"vertex {vertex} outside 0..{len(self.weights) - 1}")


@dataclass(frozen=True)
class Cycle:
    """A nonnegative integer combination of exceptional components."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        for c in self.coefficients:
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise ValueError(f"cycle coefficient {c!r} is not a nonnegative integer")

    @classmethod
    def of(cls, values: Sequence[int]) -> "Cycle":
        return cls(tuple(values))

    @classmethod
    def zero(cls, n: int) -> "Cycle":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, vertex: int) -> "Cycle":
        """The component E_vertex as a cycle."""
        return cls(tuple(1 if i == vertex else 0 for i in range(n)))

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coefficients)

    def __getitem__(self, index: int) -> int:
        return self.coefficients[index]

    def add_vertex(self, vertex: int) -> "Cycle":
        """C + E_vertex, as one step of Laufer's loop adds it."""
        values = list(self.coefficients)
        values[vertex] += 1
        return Cycle(tuple(values))

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def dominates(self, other: "Cycle") -> bool:
        """True when every coefficient is at least the other's."""
        return all(a >= b for a, b in zip(self.coefficients, other.coefficients))

    def minimum(self, other: "Cycle") -> "Cycle":
        """Coordinatewise minimum; antinef cycles are closed under it."""
        return Cycle(tuple(min(a, b) for a, b in zip(self.coefficients, other.coefficients)))

    @property
    def support(self) -> List[int]:
        """Vertices with a positive coefficient."""
        return [i for i, c in enumerate(self.coefficients) if c > 0]

    @property
    def max_coefficient(self) -> int:
        return max(self.coefficients, default=0)

    @property
    def total(self) -> int:
        return sum(self.coefficients)

    def to_list(self) -> List[int]:
        return list(self.coefficients)


def intersection_matrix(graph: ResolutionGraph) -> RationalMatrix:
    """M[i][i] = E_i^2 and M[i][j] = number of points of E_i and E_j."""
    return RationalMatrix.from_rows(graph.int_matrix)


def is_connected(graph: ResolutionGraph) -> bool:
    if graph.is_smooth_point():
        return True
    return nx.is_connected(graph.to_networkx())


def is_definite(graph: ResolutionGraph) -> bool:
    """Negative definiteness of the intersection matrix, without building it densely."""
    return graph.factorization.is_negative_definite()


def validate(graph: ResolutionGraph) -> List[Diagnostic]:
    """Empty list iff connected, negative definite and (if flagged) minimal."""
    diagnostics: List[Diagnostic] = []
    if graph.is_smooth_point():
        return diagnostics

    for e in graph.edges:
        if e.a == e.b:
            diagnostics.append(Diagnostic("SelfLoop", f"vertex {e.a} meets itself; components must be smooth"))
        if e.mult < 1:
            diagnostics.append(Diagnostic("BadMultiplicity", f"edge ({e.a}, {e.b}) has multiplicity {e.mult}"))

    if not is_connected(graph):
        parts = nx.number_connected_components(graph.to_networkx())
        diagnostics.append(Diagnostic("NotConnected", f"graph splits into {parts} components"))

    if not is_definite(graph):
        minors = ", ".join(format_rational(d) for d in leading_principal_minors(intersection_matrix(graph)))
        diagnostics.append(
            Diagnostic("NotNegativeDefinite", f"leading principal minors {minors} do not alternate from negative")
        )

    if graph.minimal_resolution:
        for i, w in enumerate(graph.weights):
            if w > -2:
                diagnostics.append(
                    Diagnostic("NotMinimalResolution", f"vertex {i} has weight {w} > -2 on a minimal resolution")
                )
    return diagnostics


def int_dot(graph: ResolutionGraph, cycle: Cycle, vertex: int) -> int:
    """Integer version of ``cycle_dot`` used inside the hot loops."""
    row = graph.int_matrix[vertex]
    return sum(c * m for c, m in zip(cycle.coefficients, row) if c)


def cycle_dot(graph: ResolutionGraph, cycle: Cycle, vertex: int) -> Fraction:
    """(sum_i c_i E_i) . E_vertex"""
    graph._check_index(vertex)
    if len(cycle) != len(graph):
        raise InvalidGraphError(f"cycle has {len(cycle)} coefficients, graph has {len(graph)} vertices")
    return Fraction(int_dot(graph, cycle, vertex))


def cycle_self_intersection(graph: ResolutionGraph, cycle: Cycle) -> int:
    """C . C"""
    return sum(c * int_dot(graph, cycle, i) for i, c in enumerate(cycle.coefficients) if c)
