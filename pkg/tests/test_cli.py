"""The depthzero command line: reports, determinism and exit statuses."""

import json

import pytest

from depthzero.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_report(capsys):
    code, out, _ = run(capsys, "build", "--family", "E", "--rank", "8")
    assert code == 0
    rep = json.loads(out)
    row = rep["rows"][0]
    assert row["positive_roots"] == 120 and row["dimension"] == 248
    assert row["coxeter_number"] == 30
    assert rep["conventions"]["numbering"].startswith("Bourbaki")


def test_reports_are_byte_identical(capsys):
    args = ("fdeg", "--family", "C", "--rank", "2", "--max-order", "3")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_table_format(capsys):
    code, out, _ = run(capsys, "--format", "table", "build", "--family", "G", "--rank", "2")
    assert code == 0
    assert out.splitlines()[0].startswith("depthzero")
    assert out.rstrip().endswith("exit status 0")


def test_output_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "--output", str(target), "build", "--family", "A", "--rank", "3")
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["command"] == "build"


def test_atlas_e6_flags_one_class(capsys):
    code, out, _ = run(capsys, "atlas", "--family", "E", "--rank", "6")
    assert code == 0
    summary = json.loads(out)["summary"]
    assert summary["flagged"] == [[4]] and summary["matches"] is True


def test_fdeg_from_kac_file(tmp_path, capsys):
    f = tmp_path / "pts.json"
    f.write_text(json.dumps({"family": "E", "rank": 8, "points": [{"kac": [0, 1, 0, 0, 0, 0, 0, 0, 0]}]}))
    code, out, _ = run(capsys, "fdeg", "--kac", str(f))
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["shape"] == ["D8"] and row["ratio_exponent"] == 64 and row["conductor"] == 128


def test_component_group_guard_degrades(capsys):
    code, out, _ = run(capsys, "--max-weyl", "100", "component-group", "--family", "E", "--rank", "8", "--point", "0,1,0,0,0,0,0,0,0")
    rows = json.loads(out)["rows"]
    assert code in (0, 2)
    assert (code == 2) == any(r["status"] != "computed" for r in rows)


def test_malformed_json_reports_location(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"points": [\n  {"kac": [1, 0}\n]}')
    code, _, err = run(capsys, "pseudo-levi", "--family", "A", "--rank", "1", "--kac", str(f))
    assert code == 64
    assert f"{f}:2:" in err


def test_schema_violation_reports_path(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"family": "A", "rank": 1, "points": [{"kac": [1, -1]}]}))
    code, _, err = run(capsys, "pseudo-levi", "--kac", str(f))
    assert code == 64 and "points/0" in err


def test_bad_flags_exit_64(capsys):
    assert run(capsys, "build", "--family", "Q", "--rank", "2")[0] == 64
    assert run(capsys, "build", "--rank", "0")[0] == 64
    assert run(capsys, "nonsense")[0] == 64
    assert run(capsys, "pseudo-levi", "--family", "A", "--rank", "2")[0] == 64


def test_missing_file_exit_64(capsys):
    code, _, err = run(capsys, "fdeg", "--kac", "/nonexistent/points.json")
    assert code == 64 and "/nonexistent/points.json" in err


def test_pinning_clean_exit(capsys):
    code, out, _ = run(capsys, "verify", "pinning", "--family", "C", "--max-rank", "3")
    assert code == 0
    assert {r["verdict"] for r in json.loads(out)["rows"]} <= {"verified", "not-applicable"}


def test_pinning_d_even_degrades(capsys):
    code, out, _ = run(capsys, "verify", "pinning", "--family", "D", "--rank", "4", "--max-rank", "4")
    assert code == 2
    assert "not-computed" in {r["verdict"] for r in json.loads(out)["rows"]}


def test_lemmas_exit_one_on_failed_certificate(capsys):
    # the listed letter counts of the minimal y_alpha do not hold, so the combinatorial certificate fails
    code, out, _ = run(capsys, "verify", "lemmas", "--family", "C", "--max-rank", "3")
    rows = json.loads(out)["rows"]
    assert code == 1
    failed = {r["claim"] for r in rows if r["verdict"] == "failed"}
    assert failed == {"cp_prop71"}


def test_kottwitz_small(capsys):
    code, out, _ = run(capsys, "verify", "kottwitz", "--family", "B", "--max-rank", "3", "--max-order", "3")
    assert code == 0
    assert all(r["verdict"] == "verified" for r in json.loads(out)["rows"])


def test_apartment_small(capsys):
    code, out, _ = run(capsys, "verify", "apartment", "--family", "G", "--max-rank", "2", "--max-order", "4")
    assert code == 0


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and "depthzero" in out
