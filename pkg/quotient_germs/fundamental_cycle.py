"""
Fundamental cycles: Laufer's algorithm, a brute-force oracle, and the
coefficient checks built on them.
"""

import random
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .errors import (
    BoundTooSmallError,
    InternalError,
    InvalidGraphError,
    InvalidParametersError,
    NotNegativeDefiniteError,
    PreconditionViolatedError,
)
from .resolution_graph import (
    Cycle,
    ResolutionGraph,
    cycle_self_intersection,
    int_dot,
    is_connected,
    is_definite,
)

# picks one vertex out of a nonempty ascending candidate list
Policy = Callable[[List[int]], int]
PolicyLike = Union[str, Policy, None]

LAUFER_CAP_FACTOR = 100
DEFAULT_ORACLE_BOUND = 10
SIX_E_CEILING = 6


@dataclass(frozen=True)
class LauferTrace:
    """Result of one run: the cycle, the vertices added in order, and the step count."""

    cycle: Cycle
    visited: Tuple[int, ...]
    start: int

    @property
    def steps(self) -> int:
        return len(self.visited)


@dataclass(frozen=True)
class CoefficientBound:
    cycle: Cycle
    max_coefficient: int
    passes: bool


def lowest_policy(candidates: List[int]) -> int:
    return candidates[0]


def highest_policy(candidates: List[int]) -> int:
    return candidates[-1]


def random_policy(seed: int) -> Policy:
    rng = random.Random(seed)

    def choose(candidates: List[int]) -> int:
        return rng.choice(candidates)

    return choose


def resolve_policy(policy: PolicyLike) -> Policy:
    """Accept ``lowest``, ``highest``, ``random:<seed>`` or a callable."""
    if policy is None or policy == "lowest":
        return lowest_policy
    if callable(policy):
        return policy
    if policy == "highest":
        return highest_policy
    if isinstance(policy, str) and policy.startswith("random:"):
        try:
            return random_policy(int(policy.split(":", 1)[1]))
        except ValueError:
            pass
    raise InvalidParametersError(f"unknown tie-break policy {policy!r}")


def _require_definite(graph: ResolutionGraph):
    if graph.is_smooth_point():
        raise InvalidGraphError("a smooth point has no fundamental cycle")
    if not is_connected(graph):
        raise InvalidGraphError("graph is not connected")
    if not is_definite(graph):
        raise NotNegativeDefiniteError("intersection matrix is not negative definite")


def laufer_trace(graph: ResolutionGraph, policy: PolicyLike = "lowest", start: Optional[int] = None) -> LauferTrace:
    """
    Start from one component and keep adding a component E_i with C.E_i > 0
    until C is antinef.

    ``start`` defaults to the policy's choice among all vertices.
    """
    _require_definite(graph)
    choose = resolve_policy(policy)
    n = len(graph)
    if start is None:
        start = choose(list(range(n)))
    graph._check_index(start)

    coefficients = [0] * n
    dots = [0] * n
    weights = graph.weights
    adjacency = graph.adjacency
    # vertices with C.E_i > 0
    positive = set()

    def add(vertex: int):
        coefficients[vertex] += 1
        dots[vertex] += weights[vertex]
        for other, mult in adjacency[vertex].items():
            dots[other] += mult
        for touched in (vertex, *adjacency[vertex]):
            if dots[touched] > 0:
                positive.add(touched)
            else:
                positive.discard(touched)

    add(start)
    visited: List[int] = []
    cap = LAUFER_CAP_FACTOR * n
    while True:
        candidates = sorted(positive)
        if not candidates:
            break
        if len(visited) >= cap:
            raise InternalError(f"Laufer's loop exceeded {cap} additions")
        vertex = choose(candidates)
        add(vertex)
        visited.append(vertex)
    return LauferTrace(Cycle(tuple(coefficients)), tuple(visited), start)


def laufer_fundamental_cycle(
    graph: ResolutionGraph, policy: PolicyLike = "lowest", start: Optional[int] = None
) -> Cycle:
    return laufer_trace(graph, policy, start).cycle


def is_antinef(graph: ResolutionGraph, cycle: Cycle) -> bool:
    if len(cycle) != len(graph):
        raise InvalidGraphError(f"cycle has {len(cycle)} coefficients, graph has {len(graph)} vertices")
    return all(int_dot(graph, cycle, i) <= 0 for i in range(len(graph)))


def _search_order(graph: ResolutionGraph) -> List[int]:
    """Breadth-first from the vertex of highest degree."""
    root = max(range(len(graph)), key=lambda i: (len(graph.adjacency[i]), -i))
    return [root] + [v for _, v in nx.bfs_edges(graph.to_networkx(), root)]


def brute_force_fundamental_cycle(graph: ResolutionGraph, coefficient_bound: int = DEFAULT_ORACLE_BOUND) -> Cycle:
    """
    Coordinatewise minimum of every nonzero antinef cycle in [0, bound]^n.

    The box is walked depth first. An assignment is abandoned once an
    assigned vertex pairs positively with the assigned part, since the
    remaining neighbours can only raise that pairing.
    """
    if isinstance(coefficient_bound, bool) or not isinstance(coefficient_bound, int) or coefficient_bound < 1:
        raise InvalidParametersError(f"coefficient bound must be >= 1, got {coefficient_bound!r}")
    _require_definite(graph)
    n = len(graph)
    order = _search_order(graph)
    matrix = graph.int_matrix
    adjacency = graph.adjacency
    values = [0] * n
    partial = [0] * n
    assigned = [False] * n
    best: List[Optional[List[int]]] = [None]
    found = [0]

    def descend(depth: int):
        if depth == n:
            if any(values):
                found[0] += 1
                if best[0] is None:
                    best[0] = list(values)
                else:
                    best[0] = [min(a, b) for a, b in zip(best[0], values)]
            return
        vertex = order[depth]
        touched = [u for u in adjacency[vertex] if assigned[u]]
        for value in range(coefficient_bound + 1):
            values[vertex] = value
            own = matrix[vertex][vertex] * value + sum(adjacency[vertex][u] * values[u] for u in touched)
            if own > 0:
                continue
            bumped = [u for u in touched if partial[u] + adjacency[vertex][u] * value > 0]
            if bumped:
                break
            for u in touched:
                partial[u] += adjacency[vertex][u] * value
            partial[vertex] = own
            assigned[vertex] = True
            descend(depth + 1)
            assigned[vertex] = False
            for u in touched:
                partial[u] -= adjacency[vertex][u] * value
        values[vertex] = 0
        partial[vertex] = 0

    descend(0)
    if best[0] is None:
        raise BoundTooSmallError(f"no antinef cycle with coefficients <= {coefficient_bound}")
    minimum = Cycle(tuple(best[0]))
    if not is_antinef(graph, minimum):
        raise InternalError(f"minimum of {found[0]} antinef cycles is not antinef: {minimum.to_list()}")
    return minimum


def check_monotonicity(graph_a: ResolutionGraph, graph_b: ResolutionGraph) -> bool:
    """
    For intersection matrices with M_A >= M_B entrywise, the fundamental
    cycle of A dominates that of B.
    """
    if len(graph_a) != len(graph_b):
        raise PreconditionViolatedError(f"vertex counts differ: {len(graph_a)} vs {len(graph_b)}")
    rows_a, rows_b = graph_a.int_matrix, graph_b.int_matrix
    for i, (row_a, row_b) in enumerate(zip(rows_a, rows_b)):
        for j, (x, y) in enumerate(zip(row_a, row_b)):
            if x < y:
                raise PreconditionViolatedError(f"M_A[{i}][{j}] = {x} < M_B[{i}][{j}] = {y}")
    return laufer_fundamental_cycle(graph_a).dominates(laufer_fundamental_cycle(graph_b))


def check_6e(graph: ResolutionGraph, cycle: Optional[Cycle] = None) -> CoefficientBound:
    """Largest fundamental-cycle coefficient and whether it is at most 6."""
    if cycle is None:
        cycle = laufer_fundamental_cycle(graph)
    top = cycle.max_coefficient
    return CoefficientBound(cycle, top, top <= SIX_E_CEILING)


def fundamental_cycle_self_intersection(graph: ResolutionGraph, cycle: Optional[Cycle] = None) -> int:
    """C_f . C_f"""
    if cycle is None:
        cycle = laufer_fundamental_cycle(graph)
    return cycle_self_intersection(graph, cycle)


def comparable_lowering(graph: ResolutionGraph, drops: Sequence[int]) -> ResolutionGraph:
    """The same graph with vertex i lowered by ``drops[i]``; its matrix is entrywise <= the original."""
    if len(drops) != len(graph) or any(d < 0 for d in drops):
        raise PreconditionViolatedError("drops must be one nonnegative integer per vertex")
    return graph.with_weights([w - d for w, d in zip(graph.weights, drops)])
