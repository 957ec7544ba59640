from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import jsonschema
import pytest

from duplicial import catalog, series
from duplicial.cli import main
from duplicial.series import SERIES_SCHEMA, series_from_json, vertex


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_trees_commands(capsys):
    code, out, _ = run(capsys, "trees", "enum", "--n", "3")
    assert code == 0 and len(out.split()) == 5
    code, out, _ = run(capsys, "trees", "enum", "--n", "2", "--format", "json")
    assert json.loads(out) == ["((..).)", "(.(..))"]
    assert run(capsys, "trees", "over", "(..)", "(..)")[1].strip() == "((..).)"
    assert run(capsys, "trees", "under", "(..)", "(..)")[1].strip() == "(.(..))"
    assert run(capsys, "trees", "graft", ".", "(..)")[1].strip() == "(.(..))"
    assert run(capsys, "trees", "spine", "((..).)")[1].split() == [".", "."]
    assert run(capsys, "trees", "leaves", "((..).)")[1].strip() == "2"


def test_trees_errors(capsys):
    code, _, err = run(capsys, "trees", "enum", "--n", "20")
    assert code == 2 and "cap" in err
    code, _, err = run(capsys, "trees", "over", "(.", "(..)")
    assert code == 2 and "byte 2" in err
    assert run(capsys, "trees", "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_series_show_and_schema(capsys):
    code, out, _ = run(capsys, "series", "show", "E", "--order", "3")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SERIES_SCHEMA)
    e = series_from_json(out)
    assert e == catalog.series_E(3)
    assert e["(((..).).)"] == 1 and e["(.(.(..)))"] == 1 and e["(.((..).))"] == 0
    code, out, _ = run(capsys, "series", "show", "A", "--order", "2", "--w", "1/2")
    assert series_from_json(out)["((..).)"] == Fraction(1, 2)


def test_series_compose_files(capsys, tmp_path):
    for name in ("A", "B"):
        _, out, _ = run(capsys, "series", "show", name, "--order", "5")
        (tmp_path / f"{name}.json").write_text(out)
    code, out, _ = run(capsys, "series", "compose", "--a", str(tmp_path / "A.json"),
                       "--b", str(tmp_path / "B.json"))
    assert code == 0 and series_from_json(out) == vertex(5)
    code, out, _ = run(capsys, "series", "compose", "--a", "A", "--b", "B", "--order", "4")
    assert series_from_json(out) == vertex(4)


def test_series_other_commands(capsys):
    assert run(capsys, "series", "project", "--name", "C", "--order", "4")[1].strip() == \
        "x + x^2 + x^3 + x^4"
    _, out, _ = run(capsys, "series", "invert", "--a", "D", "--order", "5")
    assert series_from_json(out) == series.suspension(catalog.series_D(5))
    _, out, _ = run(capsys, "series", "suspend", "--a", "D", "--order", "5")
    assert series_from_json(out) == series.suspension(catalog.series_D(5))
    inline = series.series_to_json(series.unit(3) + vertex(3))
    _, out, _ = run(capsys, "series", "invert", "--kind", "under", "--a", inline)
    assert series_from_json(out)["(.(.(..)))"] == -1


def test_series_errors(capsys):
    code, _, err = run(capsys, "series", "compose", "--a", '{"order": 1}', "--b", "B",
                       "--order", "2")
    assert code == 2 and "flavor" in err
    assert run(capsys, "series", "suspend", "--a", "A")[0] == 2
    assert run(capsys, "series", "suspend", "--a", "/no/such/file")[0] == 2
    assert run(capsys, "series", "project")[0] == 2


def test_series_consistency_failure_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(catalog, "series_B_closed_form",
                        lambda n: series.TreeSeries(n, {"(..)": 1, "((..).)": 7}))
    catalog.series_B.cache_clear()
    try:
        assert run(capsys, "series", "show", "B", "--order", "3")[0] == 1
    finally:
        catalog.series_B.cache_clear()


def test_tamari_commands(capsys):
    code, out, _ = run(capsys, "tamari", "mobius", "--n", "2")
    assert code == 0 and out == "((..).)\t1\n(.(..))\t-1\n"
    _, out, _ = run(capsys, "tamari", "lattice", "--n", "3", "--format", "dot")
    assert out.count("label=") == 5
    _, out, _ = run(capsys, "tamari", "lattice", "--n", "3", "--format", "json")
    assert len(json.loads(out)["elements"]) == 5
    code, out, _ = run(capsys, "tamari", "check-intervals", "--p", "2", "--q", "2")
    assert code == 0 and out.startswith("pass")
    assert run(capsys, "tamari", "lattice", "--n", "12")[0] == 2


def test_hopf_commands(capsys):
    _, out, _ = run(capsys, "hopf", "coaction-a", "((..).)")
    assert out == "1 * V((..)) ⊗ V(.)\n1 * V(((..).)) ⊗ 1\n"
    _, out, _ = run(capsys, "hopf", "delta-e", "(.(..))", "--format", "json")
    assert len(json.loads(out)) == 3
    _, out, _ = run(capsys, "hopf", "antipode", "(.(..))")
    assert out.strip() == "-1*(.(..)) + (..)*(..)"
    _, out, _ = run(capsys, "hopf", "delta-a", ".", "--format", "json")
    assert json.loads(out)[0]["left"] == []


def test_dyson_demo(capsys):
    code, out, _ = run(capsys, "dyson", "demo", "--dim", "2", "--orders", "5", "--seed", "7")
    assert code == 0 and "holds for n <= 5" in out


@pytest.mark.parametrize("suite, order", [("propositions", "6"), ("hopf", "5"),
                                          ("trees", "6"), ("series", "4"),
                                          ("tamari", "6"), ("dyson", "5")])
def test_verify_suites_pass(capsys, suite, order):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--max-order", order)
    assert code == 0
    doc = json.loads(out[out.index("{"):])
    assert doc["passed"] and all(c["status"] == "pass" for c in doc["checks"])
    assert all(c["counterexample"] is None for c in doc["checks"])


def test_verify_is_deterministic(capsys):
    first = run(capsys, "verify", "--suite", "all", "--seed", "3")
    second = run(capsys, "verify", "--suite", "all", "--seed", "3")
    assert first == second and first[0] == 0


def test_tampered_suspension_is_caught(capsys, monkeypatch):
    real = series.suspension

    def negated(a):
        return real(a) * -1

    monkeypatch.setattr(catalog, "suspension", negated)
    code, out, _ = run(capsys, "verify", "--suite", "propositions", "--max-order", "4")
    assert code == 1
    doc = json.loads(out[out.index("{"):])
    failed = {c["check"]: c for c in doc["checks"] if c["status"] == "fail"}
    assert "prop4c" in failed
    assert failed["prop4c"]["counterexample"]["tree"] == "(..)"


def test_entry_points():
    res = subprocess.run([sys.executable, "-m", "duplicial", "trees", "enum", "--n", "2"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.split() == ["((..).)", "(.(..))"]
    res = subprocess.run(["duplicial", "tamari", "mobius", "--n", "9"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and len(res.stdout.splitlines()) == 4862
