"""
Tests for report rendering.
"""

import json
from fractions import Fraction

import pytest

from quotient_germs.exact_core import NOT_LC
from quotient_germs.quotient_catalog import Family
from quotient_germs.report import Report, emit_report, render_human, render_json, to_jsonable
from quotient_germs.resolution_graph import Cycle


def test_to_jsonable():
    """Test rationals, cycles, enums and the float refusal."""
    assert to_jsonable(Fraction(1, 3)) == "1/3"
    assert to_jsonable(NOT_LC) == "NotLC"
    assert to_jsonable(Cycle.of([1, 2, 3, 2, 1, 2])) == [1, 2, 3, 2, 1, 2]
    assert to_jsonable(Family.DIHEDRAL) == "dihedral"
    assert to_jsonable({"a": (Fraction(2), None)}) == {"a": ["2", None]}
    with pytest.raises(TypeError):
        to_jsonable(0.5)


def test_render_json_is_compact_and_sorted():
    """Test the exact bytes of a small report."""
    report = Report("t", summary={"lct": Fraction(1, 3)})
    report.add(cycle=Cycle.of([1, 2, 3, 2, 1, 2]), mld=Fraction(2, 3))
    text = render_json(report)
    assert text == (
        '{"passed":true,"rows":[{"cycle":[1,2,3,2,1,2],"mld":"2/3"}],'
        '"summary":{"lct":"1/3"},"title":"t"}'
    )
    assert json.loads(text)["summary"]["lct"] == "1/3"


def test_render_human():
    """Test that the table, summary and verdict all show up."""
    report = Report("Fundamental cycles", columns=["germ", "matched"], passed=False)
    report.add(germ="icosahedral(m=1)", matched=True)
    report.summary = {"table_rows_matched": "14/15"}
    text = render_human(report)
    assert "Fundamental cycles" in text
    assert "icosahedral(m=1)" in text
    assert "table_rows_matched: 14/15" in text
    assert "FAILED" in text


def test_emit_report_dispatches_on_format():
    """Test both output formats."""
    report = Report("empty")
    assert emit_report(report, "json").startswith("{")
    assert "passed" in emit_report(report, "human")
