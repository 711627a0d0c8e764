"""
Tests for Hirzebruch-Jung continued fractions.
"""

from fractions import Fraction
from math import gcd

import pytest

from quotient_germs.errors import DivisionByZeroError, InvalidParametersError
from quotient_germs.hj_cyclic import cyclic_graph, dual_fraction, hj_evaluate, hj_expand


@pytest.mark.parametrize(
    "n, q, terms",
    [
        (5, 3, (2, 3)),
        (7, 3, (3, 2, 2)),
        (7, 5, (2, 2, 3)),
        (6, 1, (6,)),
        (5, 4, (2, 2, 2, 2)),
    ],
)
def test_known_expansions(n, q, terms):
    """Test a handful of expansions worked out by hand."""
    assert hj_expand(n, q).terms == terms


def test_roundtrip_small_range():
    """Test that evaluating an expansion gives back n/q with every term >= 2."""
    for n in range(2, 60):
        for q in range(1, n):
            if gcd(n, q) != 1:
                continue
            expansion = hj_expand(n, q)
            assert all(b >= 2 for b in expansion.terms)
            assert expansion.value() == Fraction(n, q)


def test_dual_fraction_reverses_the_chain():
    """Test that q q' = 1 mod n reverses the expansion."""
    for n, q in ((7, 3), (11, 4), (13, 5)):
        dual = dual_fraction(n, q)
        assert (q * dual) % n == 1
        assert hj_expand(n, dual).terms == tuple(reversed(hj_expand(n, q).terms))


@pytest.mark.parametrize("n, q", [(4, 2), (3, 3), (3, 0), (5, 7), (5, 2.0)])
def test_bad_pairs_are_refused(n, q):
    """Test coprimality and range checks."""
    with pytest.raises(InvalidParametersError):
        hj_expand(n, q)


def test_evaluate_edge_cases():
    """Test empty input and a vanishing tail."""
    with pytest.raises(InvalidParametersError):
        hj_evaluate([])
    with pytest.raises(DivisionByZeroError):
        hj_evaluate([2, 1, 1])
    assert hj_evaluate([1, 1, 2]) == Fraction(-1)


def test_cyclic_graph_is_a_chain():
    """Test the chain of A(7, 3)."""
    graph = cyclic_graph(7, 3)
    assert graph.weights == (-3, -2, -2)
    assert [(e.a, e.b) for e in graph.edges] == [(0, 1), (1, 2)]
