"""
End-to-end tests of the quotient-germs command line.
"""

import json

import pytest
from click.testing import CliRunner

from quotient_germs import __version__
from quotient_germs.cli import cli
from quotient_germs.report import Report
from quotient_germs.verification import GermVerifier


@pytest.fixture
def runner():
    return CliRunner()


def _json(runner, *args):
    result = runner.invoke(cli, ["--format", "json", *map(str, args)])
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_version(runner):
    """Test --version."""
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_catalog_e8(runner):
    """Test the icosahedral m = 1 graph."""
    document = _json(runner, "catalog", "icosahedral", "--m", 1)
    assert len(document["rows"]) == 8
    assert document["summary"]["germ"] == "icosahedral(m=1)"
    assert document["summary"]["derived_b"] == 2


def test_catalog_writes_graph_file(runner, tmp_path):
    """Test --output and the continued fraction of a cyclic germ."""
    target = tmp_path / "a73.json"
    document = _json(runner, "catalog", "cyclic", "--n", 7, "--q", 3, "--output", target)
    assert document["summary"]["hj_expansion"] == [3, 2, 2]
    fundcycle = _json(runner, "fundcycle", target)
    assert fundcycle["rows"][0]["cycle"] == [1, 1, 1]


def test_catalog_bad_parameters(runner):
    """Test that a missing table row exits 2."""
    result = runner.invoke(cli, ["catalog", "tetrahedral", "--m", "2"])
    assert result.exit_code == 2
    assert "InvalidParameters" in result.output


def test_fundcycle_e8(runner, fixtures_dir):
    """Test Laufer's cycle on the E8 graph file."""
    row = _json(runner, "fundcycle", fixtures_dir / "e8.json")["rows"][0]
    assert row["cycle"] == [2, 4, 6, 5, 4, 3, 2, 3]
    assert row["self_intersection"] == -2
    assert row["max_coefficient"] == 6
    assert row["method"] == "laufer"


def test_fundcycle_oracle(runner, fixtures_dir):
    """Test the brute-force oracle on D4."""
    row = _json(runner, "fundcycle", fixtures_dir / "d4.yaml", "--oracle", "--bound", 6)["rows"][0]
    assert row["cycle"] == [2, 1, 1, 1]
    assert row["method"] == "oracle"
    assert "steps" not in row
    laufer = _json(runner, "fundcycle", fixtures_dir / "d4.yaml")["rows"][0]
    assert laufer["steps"] == 4


def test_malformed_graph_exits_2(runner, fixtures_dir):
    """Test that a disconnected graph names its invariant and line."""
    result = runner.invoke(cli, ["fundcycle", str(fixtures_dir / "disconnected.json")])
    assert result.exit_code == 2
    assert "disconnected.json:7: NotConnected:" in result.output


def test_bad_policy_exits_2(runner, fixtures_dir):
    """Test an unknown tie-break policy."""
    result = runner.invoke(cli, ["fundcycle", str(fixtures_dir / "e8.json"), "--policy", "middle"])
    assert result.exit_code == 2


def test_verify_tables(runner):
    """Test that every transcribed row matches."""
    result = runner.invoke(cli, ["verify-tables"])
    assert result.exit_code == 0, result.output
    assert "15/15" in result.output
    assert "✅" in result.output


def test_failed_verification_exits_1(runner, monkeypatch):
    """Test the exit status of a failing report."""
    monkeypatch.setattr(GermVerifier, "verify_tables", lambda self: Report("broken", passed=False))
    result = runner.invoke(cli, ["verify-tables"])
    assert result.exit_code == 1
    assert "FAILED" in result.output


def test_sweep_6e_is_reproducible(runner):
    """Test byte-identical JSON across runs."""
    args = ["--format", "json", "sweep-6e", "--max-n", "10", "--max-b", "2"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0
    assert first.output == second.output
    assert json.loads(first.output)["summary"]["global_max_coefficient"] == 6


def test_discrepancy(runner, fixtures_dir):
    """Test the pullback of a (-3)-curve with boundary 1/2."""
    document = _json(runner, "discrepancy", fixtures_dir / "germ_half.json")
    assert document["rows"][0]["e"] == "1/2"
    assert document["rows"][0]["a"] == "1/2"
    assert document["summary"]["residuals_zero"] is True


def test_mld_not_lc(runner, fixtures_dir):
    """Test that NotLC is a value, not an error."""
    document = _json(runner, "mld", fixtures_dir / "germ_not_lc.json")
    assert document["rows"][0]["mld"] == "NotLC"


def test_lct_max_ideal(runner, fixtures_dir):
    """Test lct(m) = 1/6 on E8 and the NotLCInput error."""
    document = _json(runner, "lct-max-ideal", fixtures_dir / "germ_e8.json")
    assert document["rows"][0]["lct"] == "1/6"
    result = runner.invoke(cli, ["lct-max-ideal", str(fixtures_dir / "germ_not_lc.json")])
    assert result.exit_code == 2
    assert "NotLCInput" in result.output


def test_check_surface_bound_files(runner, fixtures_dir):
    """Test single germs, including the smooth point."""
    row = _json(runner, "check-surface-bound", fixtures_dir / "germ_e8.json")["rows"][0]
    assert row["lct"] == "1/6"
    assert row["required"] == "1/24"
    assert row["passed"] is True
    row = _json(runner, "check-surface-bound", fixtures_dir / "germ_smooth.json")["rows"][0]
    assert row["epsilon"] == "7/6"


def test_check_surface_bound_needs_input(runner):
    """Test that neither a file nor --sweep is an input error."""
    assert runner.invoke(cli, ["check-surface-bound"]).exit_code == 2


def test_check_surface_bound_sweep(runner):
    """Test a small seeded sweep."""
    document = _json(runner, "--seed", 5, "check-surface-bound", "--sweep",
                     "--max-n", 6, "--max-b", 2, "--samples", 1)
    assert document["passed"] is True
    assert document["summary"]["failures"] == []


def test_bad_coefficient_exits_2(runner, fixtures_dir):
    """Test a germ file with a coefficient above 1."""
    result = runner.invoke(cli, ["mld", str(fixtures_dir / "germ_bad_coefficient.json")])
    assert result.exit_code == 2
    assert "CoefficientRange" in result.output


def test_monomial_mld(runner):
    """Test the cusp with coefficient 3/4 and the float refusal."""
    document = _json(runner, "monomial-mld", "--lambda", "3/4", "--exponents", "2,0;0,3")
    assert document["rows"][0]["mld"] == "1/2"
    result = runner.invoke(cli, ["monomial-mld", "--lambda", "0.75", "--exponents", "2,0;0,3"])
    assert result.exit_code == 2


def test_monomial_lct(runner):
    """Test the cusp threshold and the unit ideal."""
    assert _json(runner, "monomial-lct", "--exponents", "2,0;0,3")["rows"][0]["lct"] == "5/6"
    result = runner.invoke(cli, ["monomial-lct", "--exponents", "0,0;1,0"])
    assert result.exit_code == 2
    assert "DegenerateIdeal" in result.output


def test_example18(runner):
    """Test the sharpness family for m = 1..5."""
    document = _json(runner, "example18", "--max-m", 5)
    assert [row["mld"] for row in document["rows"]] == ["1", "1/2", "1/3", "1/4", "1/5"]
    assert document["rows"][3]["bound"] == "1/16"
    single = _json(runner, "example18", "--m", 3)
    assert single["rows"][0]["lambda"] == "5/9"


def test_property_suite(runner):
    """Test a small property suite run."""
    result = runner.invoke(cli, ["property-suite", "--max-n", "6", "--max-b", "2",
                                 "--max-m", "4", "--oracle-max-n", "6"])
    assert result.exit_code == 0, result.output


def test_config_file_sets_format(runner, tmp_path):
    """Test that a config file selects JSON output."""
    path = tmp_path / "settings.yaml"
    path.write_text("output:\n  format: json\nlogging:\n  level: ERROR\n")
    result = runner.invoke(cli, ["--config", str(path), "monomial-lct", "--exponents", "1,0"])
    assert result.exit_code == 0
    assert json.loads(result.output)["rows"][0]["lct"] == "1"


@pytest.mark.parametrize("command", ["lct-max-ideal", "check-surface-bound"])
def test_file_graphs_warn_about_rationality(runner, fixtures_dir, command):
    """Test that a graph read from a file carries the rationality warning on stderr."""
    result = runner.invoke(cli, ["--format", "json", command, str(fixtures_dir / "germ_half.json")])
    assert result.exit_code == 0, result.output
    assert "caller's responsibility" in result.stderr
    assert "germ_half" in result.stderr
    assert json.loads(result.stdout)["rows"][0]["lct"] == "1/2"


def test_smooth_point_needs_no_rationality_warning(runner, fixtures_dir):
    """Test that the smooth point is not flagged."""
    result = runner.invoke(cli, ["lct-max-ideal", str(fixtures_dir / "germ_smooth.json")])
    assert result.exit_code == 0
    assert "responsibility" not in result.stderr


def test_sweep_boundaries_meet_the_point(runner):
    """Test that every random boundary in a sweep meets the exceptional locus."""
    document = _json(runner, "--seed", 5, "check-surface-bound", "--sweep",
                     "--max-n", 6, "--max-b", 2, "--samples", 3)
    summary = document["summary"]
    assert summary["nontrivial_boundaries"] * 4 == summary["pairs"] * 3


def test_init_config(runner, tmp_path):
    """Test that init-config writes a file the CLI reads back, and never overwrites it."""
    target = tmp_path / "settings.yaml"
    result = runner.invoke(cli, ["init-config", str(target)])
    assert result.exit_code == 0, result.output
    assert "seed: 20240601" in target.read_text()
    assert runner.invoke(cli, ["init-config", str(target)]).exit_code == 1
    result = runner.invoke(cli, ["--config", str(target), "--format", "json", "monomial-lct", "--exponents", "1,0"])
    assert result.exit_code == 0
