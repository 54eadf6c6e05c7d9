import io
import json

import pytest

from poissonk.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    text = out.getvalue() or err.getvalue()
    return code, json.loads(text), out.getvalue()


def test_dim():
    code, rep, _ = call("dim", "--surface", "K3", "--v", "1,0,-3", "--epsilon", "2")
    assert code == 0 and rep["expected_dim"] == 6


def test_obstruction():
    code, rep, _ = call("obstruction", "--surface", "P2", "--v", "1,0,-4")
    assert code == 0 and rep["n"] == 1 and rep["verdict"] == "universal sheaf exists"


def test_bad_surface_and_subcommand():
    assert call("surface", "bogus")[0] == 1
    assert call("frobnicate")[0] == 1
    assert call("chi", "--surface", "P2", "--v", "1,0,1/3")[0] == 1


def test_surface_summary_and_spec_file(tmp_path):
    code, rep, _ = call("surface", "Bl1:P2")
    assert code == 0 and rep["surface"]["euler_number"] == 4
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps(rep["spec"]))
    code, rep2, _ = call("chi", "--surface", str(spec), "--v", "1,0,0,0")
    assert code == 0 and rep2["chi"] == 1


def test_rationals_are_strings():
    code, rep, _ = call("hilbert", "--surface", "P2", "--v", "1,0,0", "--H", "1")
    assert rep["hilbert"]["coeffs"] == ["1/2", "3/2", "1"]


def test_stability_and_mukai():
    code, rep, _ = call("stability", "--surface", "P2", "--v", "1,0,0", "--w", "1,0,-1",
                        "--H", "1")
    assert code == 0 and rep["compare"] == 1
    code, rep, _ = call("mukai", "--surface", "K3", "--v", "1,0,-2", "--w", "1,0,-2")
    assert rep["mukai"] == 2 and rep["serre_asymmetry"] == 0


def test_dualbasis():
    code, rep, _ = call("dualbasis", "--surface", "P2")
    assert code == 0
    assert rep["chi(dual_i, basis_j)"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_diagonal_formal_and_surface():
    code, rep, _ = call("diagonal", "--factors", "even:1,odd", "--gram", "1,0;0,1", "--m", "2",
                        "--twist-check")
    assert code == 0 and all(sum(t["bidegree"]) == 4 for t in rep["terms"])
    assert rep["generators"][0]["alpha"] == "1"
    assert all(e["c_rank+1_invariant"] for e in rep["twist_invariance"])
    code, rep, _ = call("diagonal", "--surface", "P2", "--v", "1,0,-1", "--epsilon", "1")
    assert code == 0 and rep["m"] == 2 and rep["rank"] == rep["expected_rank"] == 1
    assert call("diagonal", "--factors", "even:1", "--m", "9")[0] == 1


def test_blowup_round_trip(tmp_path):
    out = tmp_path / "dec.json"
    code, rep, _ = call("blowup", "--surface", "P1xP1", "--steps", "3", "--out", str(out))
    assert code == 0 and rep["verified"] and len(rep["matrix"]) == 7
    code, rep, _ = call("verify", "--decomposition", str(out))
    assert code == 0 and rep["passed"]


def test_spectral():
    code, rep, _ = call("spectral", "--g", "2", "--twist", "1", "--v", "1,0,0,0", "--x", "2,3")
    assert code == 0 and rep["chi_S"] == -1 and rep["projection_formula"]


def test_verify_suite():
    code, rep, _ = call("verify", "--suite", "dimensions")
    assert code == 0 and rep["passed"]
    assert call("verify", "--suite", "nope")[0] == 1


def test_output_is_deterministic():
    argv = ("diagonal", "--factors", "even:2,even:1", "--gram", "1,-1;-1,0", "--m", "2")
    assert call(*argv)[2] == call(*argv)[2]


@pytest.mark.parametrize("argv", [
    ("chi", "--surface", "K3", "--v", "2,0,-1"),
    ("dim", "--surface", "P2", "--v", "2,1,1/2", "--epsilon", "1"),
    ("obstruction", "--surface", "Abelian", "--v", "1,0,0"),
    ("spectral", "--g", "0", "--twist", "3", "--v", "2,1,1,1/2"),
])
def test_no_invariant_breach(argv):
    assert call(*argv)[0] == 0
