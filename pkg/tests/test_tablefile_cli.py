from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

from sisotopy import fixtures
from sisotopy.cli import main
from sisotopy.isotopy import decompose_to_principal
from sisotopy.tablefile import (
    TableParseError,
    parse_table,
    parse_triple,
    read_table,
    read_triple,
    serialize_table,
    serialize_triple,
)

DATA = Path(str(resources.files("sisotopy") / "data"))

GOLDEN = {
    "example1_dot.tbl": "5\n0 1 3 4 2\n1 0 2 3 4\n3 4 1 2 0\n4 2 0 1 3\n2 3 4 0 1\n",
    "example1_star.tbl": "5\n1 0 4 2 3\n3 1 2 0 4\n4 2 1 3 0\n0 4 3 1 2\n2 3 0 4 1\n",
    "example2_times6.tbl": (
        "6\n0 0 0 0 0 0\n0 1 2 3 4 5\n0 2 4 0 2 4\n0 3 0 3 0 3\n0 4 2 0 4 2\n0 5 4 3 2 1\n"
    ),
    "example2_star.tbl": (
        "6\n0 1 2 3 4 5\n4 1 1 4 4 1\n5 1 5 2 1 2\n3 1 5 0 4 2\n1 1 1 1 1 1\n2 1 2 5 1 5\n"
    ),
    "example1.triple": "1,2,3,4,0\n1,2,4,0,3\n1,2,0,4,3\n",
    "example2.triple": "4,3,5,1,2,0\n1,3,2,4,5,0\n1,0,5,4,2,3\n",
    "example1_principal.triple": "0,1,4,3,2\n0,1,3,2,4\n0,1,2,3,4\n",
}


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_files_byte_exact(name):
    assert (DATA / name).read_bytes() == GOLDEN[name].encode()


def test_golden_files_match_fixtures():
    assert serialize_table(fixtures.EXAMPLE1_DOT) == GOLDEN["example1_dot.tbl"]
    assert serialize_table(fixtures.EXAMPLE1_STAR) == GOLDEN["example1_star.tbl"]
    assert serialize_table(fixtures.EXAMPLE2_TIMES6) == GOLDEN["example2_times6.tbl"]
    assert serialize_table(fixtures.EXAMPLE2_STAR) == GOLDEN["example2_star.tbl"]
    assert serialize_triple(fixtures.example1_triple()) == GOLDEN["example1.triple"]
    assert serialize_triple(fixtures.example2_triple()) == GOLDEN["example2.triple"]
    dec = decompose_to_principal(fixtures.EXAMPLE1_DOT, fixtures.EXAMPLE1_STAR, fixtures.example1_triple())
    assert serialize_triple(dec.beta) == GOLDEN["example1_principal.triple"]


def test_round_trip():
    for name in ("example1_dot.tbl", "example2_star.tbl"):
        text = GOLDEN[name]
        assert serialize_table(parse_table(text)) == text
    assert serialize_triple(parse_triple(GOLDEN["example2.triple"])) == GOLDEN["example2.triple"]
    assert read_table(DATA / "example1_star.tbl") == fixtures.EXAMPLE1_STAR
    assert read_triple(DATA / "example1.triple") == fixtures.example1_triple()


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("x\n", 1, 1),
    ("2\n0 1\n", 3, 1),
    ("2\n0 1\n1\n", 3, 2),
    ("2\n0 1\n1 z\n", 3, 3),
    ("2\n0 5\n1 0\n", 2, 3),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(TableParseError) as info:
        parse_table(text)
    assert info.value.line == line
    assert info.value.column == column


# -- CLI ---------------------------------------------------------------------

def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_timing(text):
    report = json.loads(text)
    report.pop("timing")
    return report


def test_classify(capsys):
    code, out, _ = run_cli(capsys, "classify", DATA / "example1_dot.tbl")
    assert code == 0
    report = json.loads(out)
    assert report["format_version"] == 1
    assert report["results"]["classification"]["name"] == "quasigroup"
    assert [c["subset"] for c in report["results"]["certificates"]] == [[0, 1]]


def test_isotope_reproduces_example1(tmp_path, capsys):
    out_path = tmp_path / "out.tbl"
    code, out, _ = run_cli(capsys, "isotope", "--in", DATA / "example1_dot.tbl",
                           "--triple-file", DATA / "example1.triple", "--out", out_path)
    assert code == 0
    assert out_path.read_bytes() == GOLDEN["example1_star.tbl"].encode()
    witnesses = json.loads(out)["results"]["s_witnesses"]
    assert [(w["source"], w["target"]) for w in witnesses] == [([0, 1], [1, 2])]


def test_isotope_example2_witnesses(tmp_path, capsys):
    out_path = tmp_path / "out.tbl"
    code, out, _ = run_cli(capsys, "isotope", DATA / "example2_times6.tbl",
                           "--triple", "4,3,5,1,2,0", "1,3,2,4,5,0", "1,0,5,4,2,3", "--out", out_path)
    assert code == 0
    assert out_path.read_bytes() == GOLDEN["example2_star.tbl"].encode()
    pairs = {(tuple(w["source"]), tuple(w["target"])) for w in json.loads(out)["results"]["s_witnesses"]}
    assert {((2, 4), (2, 5)), ((1, 5), (0, 3))} <= pairs


def test_isotope_fg(capsys):
    code, out, _ = run_cli(capsys, "isotope", DATA / "example1_dot.tbl", "--fg", 0, 1)
    assert code == 0
    assert json.loads(out)["results"]["isotope_class"]["identity"] == 1


def test_json_deterministic_apart_from_timing(capsys):
    reports = []
    for _ in range(2):
        code, out, _ = run_cli(capsys, "audit", "--suite", "equivalence", "--seed", 42)
        assert code == 0
        reports.append(out)
    a, b = (strip_timing(r) for r in reports)
    assert a == b
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_census_cli(capsys):
    code, out, err = run_cli(capsys, "census", "--order", 5, "--s-census")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["total_loops"] == 56
    assert results["isomorphy_class_count"] == 6
    assert results["isotopy_class_count"] == 2
    assert results["s_census"]["s_loop_count"] == 26
    assert "56 loops" in err


@pytest.mark.parametrize("suite", ["isotgroup", "decompose", "gs", "corollaries"])
def test_audit_suites_pass(capsys, suite):
    extra = ["--order", 2, "--order", 3] if suite == "isotgroup" else []
    extra += ["--trials", 50] if suite == "decompose" else []
    code, out, _ = run_cli(capsys, "audit", "--suite", suite, *extra)
    assert code == 0
    report = json.loads(out)
    assert report["counterexamples"] == []
    assert report["results"]["all_passed"]


def test_audit_fixture_paths(capsys):
    code, out, _ = run_cli(capsys, "audit", "--suite", "gs", DATA / "example2_times6.tbl")
    # (Z6, x6) is not a group, so the suite cannot run on it
    assert code == 2
    code, out, _ = run_cli(capsys, "audit", "--suite", "decompose", "--trials", 10,
                           DATA / "example1_dot.tbl")
    assert code == 0


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.tbl"
    bad.write_text("3\n0 1 2\n")
    assert run_cli(capsys, "classify", bad)[0] == 2
    assert run_cli(capsys, "classify", tmp_path / "missing.tbl")[0] == 2
    assert run_cli(capsys, "census", "--order", 9)[0] == 3
    assert run_cli(capsys, "census", "--order", 7)[0] == 3
    assert run_cli(capsys, "isotope", DATA / "example1_dot.tbl",
                   "--triple", "0,1,2", "0,1,2", "0,1,2")[0] == 4
    assert run_cli(capsys, "isotope", DATA / "example1_dot.tbl", "--fg", 0, 7)[0] == 4
    assert run_cli(capsys, "isotope", DATA / "example2_star.tbl", "--fg", 0, 1)[0] == 5
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sisotopy", "classify", str(DATA / "example1_star.tbl")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["certificates"][0]["subset"] == [1, 2]
