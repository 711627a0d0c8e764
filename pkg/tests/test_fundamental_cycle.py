"""
Tests for Laufer's algorithm, the brute-force oracle and the coefficient checks.
"""

import random

import pytest

from quotient_germs.errors import (
    BoundTooSmallError,
    InvalidGraphError,
    InvalidParametersError,
    NotNegativeDefiniteError,
    PreconditionViolatedError,
)
from quotient_germs.fundamental_cycle import (
    brute_force_fundamental_cycle,
    check_6e,
    check_monotonicity,
    comparable_lowering,
    fundamental_cycle_self_intersection,
    is_antinef,
    laufer_fundamental_cycle,
    laufer_trace,
    resolve_policy,
)
from quotient_germs.properties import random_definite_tree
from quotient_germs.quotient_catalog import Family, catalog_entry, enumerate_catalog
from quotient_germs.resolution_graph import Cycle, ResolutionGraph

E8_CYCLE = Cycle.of([2, 4, 6, 5, 4, 3, 2, 3])


def test_chain_has_all_ones():
    """Test that any chain gets the reduced cycle."""
    graph = ResolutionGraph.chain([-3, -2, -5, -2])
    assert laufer_fundamental_cycle(graph) == Cycle.of([1, 1, 1, 1])


def test_single_vertex():
    """Test a lone (-n)-curve."""
    assert laufer_fundamental_cycle(ResolutionGraph((-4,))) == Cycle.of([1])


def test_e8(e8_graph):
    """Test the E8 cycle, its self-intersection and its step count."""
    trace = laufer_trace(e8_graph)
    assert trace.cycle == E8_CYCLE
    assert fundamental_cycle_self_intersection(e8_graph) == -2
    assert trace.steps + 1 == E8_CYCLE.total


def test_d4_against_oracle(d4_graph):
    """Test D4 with Laufer and with a small oracle box."""
    expected = Cycle.of([1, 2, 1, 1])
    assert laufer_fundamental_cycle(d4_graph) == expected
    assert brute_force_fundamental_cycle(d4_graph, 6) == expected


def test_tetrahedral_m3():
    """Test the tetrahedral row m = 3 at b = 2."""
    graph = catalog_entry(Family.TETRAHEDRAL, m=3).graph
    assert laufer_fundamental_cycle(graph) == Cycle.of([1, 2, 2, 1, 1])


def test_policies_and_starts_agree(e8_graph):
    """Test that the result does not depend on the start or tie-break."""
    rng = random.Random(3)
    for _ in range(20):
        start = rng.randrange(len(e8_graph))
        policy = f"random:{rng.getrandbits(16)}"
        assert laufer_fundamental_cycle(e8_graph, policy, start) == E8_CYCLE
    assert laufer_fundamental_cycle(e8_graph, "highest") == E8_CYCLE


def test_unknown_policy():
    """Test policy parsing."""
    with pytest.raises(InvalidParametersError):
        resolve_policy("random:abc")
    with pytest.raises(InvalidParametersError):
        resolve_policy("middle")
    assert resolve_policy(None)([4, 5]) == 4


def test_laufer_refuses_bad_graphs():
    """Test the smooth point, disconnected and indefinite cases."""
    with pytest.raises(InvalidGraphError):
        laufer_fundamental_cycle(ResolutionGraph(()))
    with pytest.raises(InvalidGraphError):
        laufer_fundamental_cycle(ResolutionGraph((-2, -2)))
    with pytest.raises(NotNegativeDefiniteError):
        laufer_fundamental_cycle(ResolutionGraph.chain([-1, -1], minimal_resolution=False))


def test_oracle_matches_laufer_on_small_catalog():
    """Test the oracle against Laufer on every small catalog germ."""
    for entry in enumerate_catalog(7, 2):
        if len(entry.graph) <= 8:
            assert brute_force_fundamental_cycle(entry.graph, 10) == laufer_fundamental_cycle(entry.graph), entry.key


def test_oracle_matches_laufer_on_random_trees():
    """Test the oracle against Laufer on random definite trees."""
    rng = random.Random(17)
    for _ in range(25):
        graph = random_definite_tree(rng, max_vertices=5)
        assert brute_force_fundamental_cycle(graph, 10) == laufer_fundamental_cycle(graph)


def test_oracle_bound_too_small(e8_graph):
    """Test that the E8 cycle does not fit into [0, 5]^8."""
    with pytest.raises(BoundTooSmallError):
        brute_force_fundamental_cycle(e8_graph, 5)
    with pytest.raises(InvalidParametersError):
        brute_force_fundamental_cycle(e8_graph, 0)


def test_is_antinef(e8_graph):
    """Test antinefness of the fundamental cycle and of a single curve."""
    assert is_antinef(e8_graph, E8_CYCLE)
    assert not is_antinef(e8_graph, Cycle.unit(8, 0))


def test_monotonicity():
    """Test that lowering weights never raises the fundamental cycle."""
    e8 = catalog_entry(Family.ICOSAHEDRAL, m=1).graph
    lowered = comparable_lowering(e8, [0, 0, 1, 0, 0, 0, 0, 0])
    assert check_monotonicity(e8, lowered)
    assert laufer_fundamental_cycle(lowered) == Cycle.of([1] * 8)
    assert check_monotonicity(e8, e8)


def test_monotonicity_preconditions():
    """Test incomparable graphs."""
    a = ResolutionGraph.chain([-2, -3])
    with pytest.raises(PreconditionViolatedError):
        check_monotonicity(a, ResolutionGraph.chain([-2, -2]))
    with pytest.raises(PreconditionViolatedError):
        check_monotonicity(a, ResolutionGraph.chain([-2, -3, -2]))
    with pytest.raises(PreconditionViolatedError):
        comparable_lowering(a, [1, -1])


def test_check_6e(e8_graph):
    """Test that E8 attains the ceiling exactly."""
    bound = check_6e(e8_graph)
    assert bound.max_coefficient == 6
    assert bound.passes
