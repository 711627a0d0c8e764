"""
Tests for resolution graphs, cycles and their validation.
"""

from fractions import Fraction

import pytest

from quotient_germs.errors import IndexOutOfRangeError, InvalidGraphError
from quotient_germs.exact_core import determinant, leading_principal_minors
from quotient_germs.resolution_graph import (
    Cycle,
    Edge,
    ResolutionGraph,
    cycle_dot,
    cycle_self_intersection,
    intersection_matrix,
    is_connected,
    is_definite,
    validate,
)


def _codes(graph):
    return [d.code for d in validate(graph)]


def test_chain_and_intersection_matrix():
    """Test the matrix of a (-2, -3) chain."""
    graph = ResolutionGraph.chain([-2, -3])
    assert intersection_matrix(graph).to_lists() == [[-2, 1], [1, -3]]
    assert graph.neighbours(0) == {1: 1}
    assert graph.degree(1) == 1


def test_star_lists_the_branch_last():
    """Test that the branch vertex is appended and attached where asked."""
    graph = ResolutionGraph.star([-2, -2, -2], 1)
    assert graph.weights == (-2, -2, -2, -2)
    assert graph.neighbours(1) == {0: 1, 2: 1, 3: 1}
    with pytest.raises(InvalidGraphError):
        ResolutionGraph.star([-2, -2], 2)


def test_edge_multiplicities_are_summed():
    """Test that parallel edges add up in the matrix."""
    graph = ResolutionGraph((-3, -3), (Edge(0, 1), Edge(1, 0, 2)))
    assert graph.int_matrix[0][1] == 3
    assert graph.int_matrix[1][0] == 3


def test_validate_accepts_du_val_graph(e8_graph):
    """Test that E8 passes every check."""
    assert validate(e8_graph) == []
    assert is_connected(e8_graph)


def test_validate_reports_each_problem():
    """Test the diagnostic codes of broken graphs."""
    assert "NotConnected" in _codes(ResolutionGraph((-2, -2)))
    assert "NotNegativeDefinite" in _codes(ResolutionGraph.chain([-1, -1], minimal_resolution=False))
    assert "NotMinimalResolution" in _codes(ResolutionGraph.chain([-1, -3]))
    assert "SelfLoop" in _codes(ResolutionGraph((-4,), (Edge(0, 0),)))
    assert "BadMultiplicity" in _codes(ResolutionGraph((-2, -2), (Edge(0, 1, 0),)))


def test_non_minimal_graph_may_carry_minus_one():
    """Test that a (-1)-curve is fine once the minimal flag is off."""
    assert validate(ResolutionGraph.chain([-1, -3], minimal_resolution=False)) == []


def test_smooth_point_is_valid():
    """Test the empty graph."""
    graph = ResolutionGraph(())
    assert graph.is_smooth_point()
    assert validate(graph) == []


def test_from_document_roundtrip():
    """Test that to_document and from_document agree."""
    graph = ResolutionGraph.star([-2, -3, -2], 1, label="D")
    assert ResolutionGraph.from_document(graph.to_document()) == graph


@pytest.mark.parametrize(
    "document",
    [
        {"vertices": [{"id": 1, "weight": -2}], "edges": []},
        {"vertices": [{"id": 0, "weight": -2, "genus": 0}], "edges": []},
        {"vertices": [{"id": 0, "weight": "-2"}], "edges": []},
        {"vertices": [{"id": 0, "weight": -2}], "edges": [{"a": 0, "b": 3}]},
        {"vertices": [], "edges": [], "colour": "red"},
        {"minimal_resolution": "yes", "vertices": [], "edges": []},
    ],
)
def test_from_document_is_strict(document):
    """Test that malformed documents are refused."""
    with pytest.raises(InvalidGraphError):
        ResolutionGraph.from_document(document)


def test_cycle_dot_and_self_intersection(e8_graph):
    """Test that the E8 fundamental cycle pairs to -2 with itself."""
    cycle = Cycle.of([2, 4, 6, 5, 4, 3, 2, 3])
    assert [cycle_dot(e8_graph, cycle, i) for i in range(8)] == [Fraction(0)] * 6 + [Fraction(-1), Fraction(0)]
    assert cycle_self_intersection(e8_graph, cycle) == -2


def test_cycle_dot_checks_sizes(e8_graph):
    """Test index and length errors."""
    with pytest.raises(IndexOutOfRangeError):
        cycle_dot(e8_graph, Cycle.zero(8), 8)
    with pytest.raises(InvalidGraphError):
        cycle_dot(e8_graph, Cycle.zero(3), 0)


def test_cycle_helpers():
    """Test dominance, minimum and support."""
    a = Cycle.of([1, 2, 0])
    b = Cycle.of([1, 1, 0])
    assert a.dominates(b)
    assert not b.dominates(a)
    assert a.minimum(Cycle.of([0, 3, 1])) == Cycle.of([0, 2, 0])
    assert a.support == [0, 1]
    assert Cycle.unit(3, 2).add_vertex(2) == Cycle.of([0, 0, 2])
    with pytest.raises(ValueError):
        Cycle.of([1, -1])


def test_graph_factorization_matches_dense_minors(e8_graph, d4_graph):
    """Test the adjacency-built factorization against the dense Sylvester sequence."""
    for graph in (e8_graph, d4_graph, ResolutionGraph.chain([-3, -2, -4])):
        minors = leading_principal_minors(intersection_matrix(graph))
        running = Fraction(1)
        for pivot, minor in zip(graph.factorization.pivots, minors):
            running *= pivot
            assert running == minor
        assert graph.factorization.determinant == determinant(intersection_matrix(graph))
        assert is_definite(graph)
    assert e8_graph.factorization.determinant == 1
    assert not is_definite(ResolutionGraph.chain([-1, -1]))
