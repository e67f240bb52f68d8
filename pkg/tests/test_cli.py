import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from apolar.cli import main
from apolar.report import validate_report

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, list(args))

    return go


def test_analyze_text(run):
    r = run("analyze", "x1^6+x1^4*x2")
    assert r.exit_code == 0
    assert "(1, 2, 2, 2, 1, 1, 1)" in r.output
    assert "(0, 1, 1, 1, 0)" in r.output


def test_analyze_json_obstructed(run):
    r = run("analyze", "--poly", "x1*x2*x3+x4^2+x5^2*x4", "--field", "fp:65537", "--json")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    validate_report(doc)
    assert doc["tangent_dimension"] == 67
    assert doc["unobstructed"] is False
    assert doc["length"] == 12


def test_analyze_zero(run):
    r = run("analyze", "0")
    assert r.exit_code == 2
    assert "zero polynomial has no apolar algebra" in r.output


def test_analyze_parse_error(run):
    r = run("analyze", "x1^-2")
    assert r.exit_code == 2
    assert "^" in r.output


def test_bad_field(run):
    assert run("analyze", "x1^2", "--field", "fp:4").exit_code == 2
    assert run("analyze", "x1^2", "--field", "fp:3").exit_code == 2


def test_vars_option(run):
    r = run("analyze", "x1^2", "--vars", "3", "--json")
    doc = json.loads(r.output)
    assert doc["vars"] == 3
    assert doc["complete_intersection"] is True


def test_json_is_byte_identical(run):
    a = run("analyze", "x1^2*x3+x2^2*x3+x4^2*x1", "--json").output
    b = run("analyze", "x1^2*x3+x2^2*x3+x4^2*x1", "--json").output
    assert a == b


def test_timings_opt_in(run):
    doc = json.loads(run("analyze", "x1^3", "--json", "--timings").output)
    assert "timings" in doc
    validate_report(doc)


def test_raysum(run):
    r = run("raysum", "x1^2*x2^2*x3", "--partial", "a2^2", "--d", "3", "--json")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    validate_report(doc)
    assert doc["identity_holds"]
    assert doc["ray_sum"] == "x1^2*x3*x4^3 + x1^2*x2^2*x3"  # degrevlex, highest first


def test_raysum_bad_d(run):
    r = run("raysum", "x1^2*x2^2*x3", "--partial", "a2^2", "--d", "1")
    assert r.exit_code == 2


def test_family(run):
    r = run("family", "x1^2*x2^2*x3", "--partial", "a2^2", "--d", "3", "--kind", "lower", "--json", "--seed", "0")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    validate_report(doc)
    assert doc["flatness"]["verdict"] == "FLAT_CONSISTENT"
    assert len(doc["fibers"]) == 6
    assert all(row["length"] == 30 for row in doc["fibers"])


def test_family_upper_text(run):
    r = run("family", "x1^3", "--partial", "a1^2", "--d", "2", "--kind", "upper")
    assert r.exit_code == 0
    assert "FLAT_CONSISTENT" in r.output


def test_tangent_preserve(run):
    r = run("tangent-preserve", "x1^2*x3+x2^2*x3+x4^2*x1", "--partial", "a4*a1", "--json")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    validate_report(doc)
    assert doc["holds"] and all(doc["necessary"].values())


def test_tangent_preserve_precondition(run):
    r = run("tangent-preserve", "x1*x2*x3+x4^2", "--partial", "a4")
    assert r.exit_code == 2


def test_repro_unknown_suite(run):
    r = run("repro", "unknown-suite")
    assert r.exit_code == 2
    assert "hilbert" in r.output and "tangent" in r.output


def test_repro_list(run):
    r = run("repro", "--list")
    assert r.exit_code == 0
    assert r.output.split()[0] == "all"


@pytest.mark.parametrize("suite", ["hilbert", "macaulay", "decomposition"])
def test_repro_quick_suites(run, suite):
    r = run("repro", suite)
    assert r.exit_code == 0
    assert "0 failed" in r.output


def test_repro_golden_file(run):
    """Full suite: every case passes and the JSON matches the stored golden file byte for byte."""
    r = run("repro", "all", "--json", "--seed", "0")
    assert r.exit_code == 0, r.output
    doc = json.loads(r.output)
    validate_report(doc)
    assert doc["failed"] == 0
    assert r.output == (GOLDEN / "repro_all_seed0.json").read_text()


def test_repro_mismatch_exit_code(run, monkeypatch):
    from apolar import repro

    bad = repro.Case("macaulay", "deliberately wrong", 5, lambda: 4)
    monkeypatch.setitem(repro.SUITES, "macaulay", lambda seed: [bad])
    r = run("repro", "macaulay")
    assert r.exit_code == 1
    assert "FAIL" in r.output
