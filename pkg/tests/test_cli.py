import json
import math
import subprocess
import sys

import numpy as np
import pytest

from umebmub import jsonio
from umebmub.cli import main
from umebmub.linalg import matrix_to_json
from umebmub.mub import example_catalog, example_phase_spec

HALF_PI = repr(math.pi / 2)


def run(argv, capsys):
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def report_of(out):
    return json.loads(out)


def test_construct_basis(tmp_path, capsys):
    out = tmp_path / "b.json"
    code, _, _ = run(["construct", "--d", 4, "--out", out], capsys)
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["d"] == 4 and len(obj["states"]) == 8 and len(obj["labels"]) == 8


def test_construct_d2_is_semantic_error(tmp_path, capsys):
    code, _, err = run(["construct", "--d", 2, "--out", tmp_path / "b.json"], capsys)
    assert code == 3
    assert "d >= 3" in err


def test_construct_bad_flags(tmp_path, capsys):
    code, _, _ = run(["construct", "--d", 4], capsys)
    assert code == 2
    code, _, _ = run(["construct", "--example", "ex9", "--out", tmp_path / "x.json"], capsys)
    assert code == 2


def test_construct_example_dimension_mismatch(tmp_path, capsys):
    code, _, _ = run(["construct", "--d", 5, "--example", "ex1", "--out", tmp_path / "p.json"], capsys)
    assert code == 3


def test_construct_non_unitary_spec(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"d": 4, "S": matrix_to_json(np.eye(2)), "W": matrix_to_json(np.ones((4, 4)))}))
    code, _, err = run(["construct", "--spec", spec, "--out", tmp_path / "p.json"], capsys)
    assert code == 3 and "unitary" in err


@pytest.mark.parametrize("ex", ["ex1", "ex2", "ex3", "ex4"])
def test_example_round_trip(tmp_path, capsys, ex):
    pair = tmp_path / "pair.json"
    assert run(["construct", "--example", ex, "--out", pair], capsys)[0] == 0
    code, out, _ = run(["verify", "mub", "--in", pair], capsys)
    assert code == 0
    rep = report_of(out)
    assert rep["passed"] and rep["max_abs_deviation"] < 1e-12
    for check in ("theorem", "corollary"):
        code, out, _ = run(["verify", check, "--in", pair], capsys)
        assert code == 0, out


def test_round_trip_is_lossless(tmp_path, capsys):
    pair = tmp_path / "pair.json"
    run(["construct", "--example", "ex2", "--out", pair], capsys)
    first, second = jsonio.pair_from_json(json.loads(pair.read_text()))
    spec = example_catalog("ex2")
    assert np.array_equal(jsonio.spec_from_json(json.loads(pair.read_text())["spec"]).W, spec.W)
    from umebmub.mub import build_second_basis

    assert np.array_equal(second.matrix(), build_second_basis(spec).matrix())


def test_verify_basis_against_itself_fails(tmp_path, capsys):
    b = tmp_path / "b.json"
    run(["construct", "--d", 4, "--out", b], capsys)
    basis = json.loads(b.read_text())
    pair = tmp_path / "self.json"
    pair.write_text(json.dumps({"d": 4, "first": basis, "second": basis}))
    code, out, _ = run(["verify", "mub", "--in", pair], capsys)
    assert code == 1
    rep = report_of(out)
    assert not rep["passed"]
    assert rep["notes"][0].startswith("modulus at worst pair")
    assert float(rep["notes"][0].split()[-1]) == pytest.approx(1.0)
    assert rep["max_abs_deviation"] == pytest.approx(1 - 1 / math.sqrt(8))


def test_verify_umeb(tmp_path, capsys):
    u = tmp_path / "umeb4.json"
    assert run(["construct", "--d", 4, "--umeb", "--out", u], capsys)[0] == 0
    code, out, _ = run(["verify", "umeb", "--in", u], capsys)
    assert code == 0
    rep = report_of(out)
    assert [s["criterion"] for s in rep["sub_reports"]] == ["maximally_entangled", "orthonormal", "unextendible"]
    assert rep["sub_reports"][2]["max_abs_deviation"] <= 1e-9


def test_verify_corollary_phase_spec_file(tmp_path, capsys):
    f = tmp_path / "ps.json"
    f.write_text(json.dumps(jsonio.phase_spec_to_json(example_phase_spec("ex4"))))
    code, out, _ = run(["verify", "corollary", "--in", f], capsys)
    assert code == 0 and report_of(out)["passed"]


def test_verify_theorem_fails_for_identity(tmp_path, capsys):
    f = tmp_path / "spec.json"
    f.write_text(json.dumps({"d": 4, "S": matrix_to_json(np.eye(2)), "W": matrix_to_json(np.eye(4))}))
    code, out, _ = run(["verify", "theorem", "--in", f], capsys)
    assert code == 1 and not report_of(out)["passed"]


def test_verify_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", "mub", "--in", bad], capsys)[0] == 2
    assert run(["verify", "mub", "--in", tmp_path / "missing.json"], capsys)[0] == 2
    assert run(["verify", "mub", "--in", bad, "--tol", "-1"], capsys)[0] == 2

    b3, b4 = tmp_path / "b3.json", tmp_path / "b4.json"
    run(["construct", "--d", 3, "--out", b3], capsys)
    run(["construct", "--d", 4, "--out", b4], capsys)
    mixed = tmp_path / "mixed.json"
    mixed.write_text(json.dumps({"d": 4, "first": json.loads(b3.read_text()), "second": json.loads(b4.read_text())}))
    assert run(["verify", "mub", "--in", mixed], capsys)[0] == 2


def read_jsonl(path):
    return [json.loads(line) for line in path.read_text().splitlines()]


def test_search_exhaustive_limit(tmp_path, capsys):
    out = tmp_path / "c.jsonl"
    code, stdout, _ = run(
        ["search", "--d", 4, "--mode", "exhaustive_signs", "--phi1", "1.5707963", "--phi2", 0, "--limit", 5,
         "--tol", "1e-8", "--out", out],
        capsys,
    )
    assert code == 0
    rows = read_jsonl(out)
    assert 1 <= len(rows) <= 5 and all(r["verified"] for r in rows)
    assert stdout.startswith("found ") and "emitted=5" in stdout


def test_search_truncated_angle_needs_looser_tol(tmp_path, capsys):
    # 1.5707963 misses pi/2 by 2.7e-8, which moves the overlaps by ~5e-9
    out = tmp_path / "c.jsonl"
    code, stdout, _ = run(
        ["search", "--d", 4, "--mode", "exhaustive_signs", "--phi1", "1.5707963", "--phi2", 0, "--limit", 5, "--out", out],
        capsys,
    )
    assert code == 0 and stdout.startswith("none-found")


def test_search_d3_none_found(tmp_path, capsys):
    out = tmp_path / "c.jsonl"
    code, stdout, _ = run(
        ["search", "--d", 3, "--mode", "exhaustive_signs", "--phi1", HALF_PI, "--phi2", 0, "--out", out], capsys
    )
    assert code == 0 and stdout.startswith("none-found") and out.read_text() == ""


def test_search_sylvester(tmp_path, capsys):
    out = tmp_path / "c.jsonl"
    code, _, _ = run(
        ["search", "--d", 8, "--mode", "sylvester_orbit", "--seed", 7, "--limit", 1,
         "--phi1", HALF_PI, "--phi2", 0, "--out", out],
        capsys,
    )
    assert code == 0
    rows = read_jsonl(out)
    assert len(rows) == 1 and rows[0]["verified"]


def test_search_bad_combinations(tmp_path, capsys):
    out = tmp_path / "c.jsonl"
    base = ["--phi1", HALF_PI, "--phi2", 0, "--out", out]
    assert run(["search", "--d", 5, "--mode", "exhaustive_signs", *base], capsys)[0] == 2
    assert run(["search", "--d", 6, "--mode", "sylvester_orbit", *base], capsys)[0] == 2
    assert run(["search", "--d", 4, "--mode", "nope", *base], capsys)[0] == 2


def test_console_entry_point(tmp_path):
    out = tmp_path / "b.json"
    proc = subprocess.run(
        [sys.executable, "-m", "umebmub.cli", "construct", "--d", "3", "--out", str(out)], capture_output=True
    )
    assert proc.returncode == 0 and out.exists()
