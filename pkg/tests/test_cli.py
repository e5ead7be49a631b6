import json

import pytest

from confal.cli import main
from confal.conformal import load_algebra


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def ns_file(tmp_path, capsys):
    path = tmp_path / "ns.json"
    code, _, _ = run(capsys, "catalog", "emit", "ns", "--out", str(path))
    assert code == 0
    return str(path)


@pytest.fixture
def r5_bad_file(tmp_path):
    doc = {
        "basis": [{"name": "x", "parity": 0}, {"name": "y", "parity": 1}],
        "tables": {
            "circ": {"x,x": {"x": "1"}},
            "bracket": {
                "x,x": {"x": "D+2*L"},
                "x,y": {"y": "D+3/2*L"},
                "y,x": {"y": "1/2*D+3/2*L"},
                "y,y": {"x": "1"},
            },
        },
    }
    path = tmp_path / "r5_badproduct.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_check_ns_lie_exit_zero(ns_file, capsys):
    code, out, _ = run(capsys, "check", ns_file, "--suite", "lie")
    assert code == 0
    assert "status: PASS" in out


def test_check_violations_exit_one(r5_bad_file, capsys):
    code, out, _ = run(capsys, "check", r5_bad_file, "--suite", "tpcsa")
    assert code == 1
    assert "transposed_leibniz (x,x,y)" in out
    assert "(-D-3/2*L-3/2*M)*y" in out


def test_check_json_structure(r5_bad_file, capsys):
    code, out, _ = run(capsys, "check", r5_bad_file, "--suite", "tpcsa",
                       "--json")
    assert code == 1
    doc = json.loads(out)
    assert set(doc) == {"suite", "pass", "violations"}
    assert doc["suite"] == "tpcsa"
    assert doc["pass"] is False
    assert {"identity": "transposed_leibniz", "tuple": ["x", "x", "y"],
            "residual": "(-D-3/2*L-3/2*M)*y"} in doc["violations"]


def test_check_missing_file_exit_two(capsys):
    code, _, err = run(capsys, "check", "/nonexistent.json", "--suite", "lie")
    assert code == 2
    assert "error:" in err


def test_check_schema_error_exit_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{\"basis\": []}")
    code, _, err = run(capsys, "check", str(path), "--suite", "lie")
    assert code == 2
    assert "error:" in err


def test_check_usage_error_exit_two(capsys):
    assert run(capsys, "check")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_check_deterministic_output(ns_file, capsys):
    one = run(capsys, "check", ns_file, "--suite", "lie", "--json")
    two = run(capsys, "check", ns_file, "--suite", "lie", "--json")
    assert one == two


def test_check_axiom_flag(ns_file, capsys):
    code, out, _ = run(capsys, "check", ns_file, "--axiom", "jacobi")
    assert code == 0
    assert "jacobi" in out


def test_check_derived_identities_suite(tmp_path, capsys):
    path = tmp_path / "r4.json"
    assert run(capsys, "catalog", "emit", "r4_tpcsa", "--param", "beta=2",
               "--param", "gamma=0", "--param", "c=1", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "check", str(path), "--suite",
                       "derived_identities")
    assert code == 0
    assert "status: PASS" in out


def test_check_compat_suite(tmp_path, capsys):
    path = tmp_path / "r4.json"
    run(capsys, "catalog", "emit", "r4_tpcsa", "--param", "beta=2",
        "--param", "gamma=0", "--param", "c=1", "--out", str(path))
    code, out, _ = run(capsys, "check", str(path), "--suite",
                       "compat_equivalence")
    assert code == 0
    assert "biconditional: CONSISTENT" in out
    assert "leibniz: FAIL" in out


def test_classify_r5_cli(capsys):
    code, out, _ = run(capsys, "classify", "--type", "r5", "--alpha", "1",
                       "--deg", "1", "--grid=-1,0,1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["nominal_candidates"] == 19683
    assert doc["solutions"] == [
        {"f": "0", "g": "0", "h": "0", "family_match": True}]


def test_classify_ceiling_refusal(capsys):
    code, _, err = run(capsys, "classify", "--type", "r1", "--p", "D",
                       "--deg", "2")
    assert code == 2
    assert "387420489" in err


def test_classify_with_modulus(capsys):
    code, out, _ = run(capsys, "classify", "--type", "r3", "--mod", "5",
                       "--json")
    assert code == 0
    assert len(json.loads(out)["solutions"]) == 3


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert out.splitlines()[0].startswith("vir:")


def test_catalog_emit_roundtrip(tmp_path, capsys):
    path = tmp_path / "vir.json"
    assert run(capsys, "catalog", "emit", "vir", "--out", str(path))[0] == 0
    alg = load_algebra(path.read_text())
    assert alg.basis.names == ("L",)


def test_catalog_emit_bad_param(capsys):
    code, _, err = run(capsys, "catalog", "emit", "r2_tpcsa", "--param",
                       "q=L", "--param", "c=1")
    assert code == 2
    assert "error:" in err


def test_construct_tensor_cli(tmp_path, capsys):
    a = tmp_path / "a.json"
    run(capsys, "catalog", "emit", "r4_tpcsa", "--param", "beta=2",
        "--param", "gamma=0", "--param", "c=1", "--out", str(a))
    out_path = tmp_path / "tensor.json"
    code, _, _ = run(capsys, "construct", "tensor", str(a), str(a),
                     "--out", str(out_path))
    assert code == 0
    built = load_algebra(out_path.read_text())
    assert built.basis.size == 4
    code, out, _ = run(capsys, "check", str(out_path), "--suite", "tpcsa")
    assert code == 0


def test_construct_h_modify_cli(tmp_path, capsys):
    a = tmp_path / "a.json"
    run(capsys, "catalog", "emit", "r4_tpcsa", "--param", "beta=2",
        "--param", "gamma=0", "--param", "c=1", "--out", str(a))
    code, out, _ = run(capsys, "construct", "h_modify", str(a),
                       "--element", "x")
    assert code == 0
    built = load_algebra(out)
    assert built.table("bracket").entries


def test_construct_derivation_star_cli(tmp_path, capsys):
    a = tmp_path / "rank1.json"
    a.write_text(json.dumps({
        "basis": [{"name": "x", "parity": 0}],
        "tables": {"circ": {"x,x": {"x": "1"}}},
    }))
    mp = tmp_path / "map.json"
    mp.write_text(json.dumps({"x": {"x": "D"}}))
    code, out, _ = run(capsys, "construct", "derivation_star", str(a),
                       "--map", str(mp))
    assert code == 0
    built = load_algebra(out)
    assert built.table("star").entry(0, 0).comps[0] == \
        __import__("confal.poly", fromlist=["parse_poly"]).parse_poly("D+L")


def test_construct_commutator_cli(tmp_path, capsys):
    a = tmp_path / "rank1.json"
    a.write_text(json.dumps({
        "basis": [{"name": "x", "parity": 0}],
        "tables": {"circ": {"x,x": {"x": "1"}},
                   "star": {"x,x": {"x": "D+L"}}},
    }))
    code, out, _ = run(capsys, "construct", "commutator", str(a))
    assert code == 0
    built = load_algebra(out)
    assert str(built.table("bracket").entry(0, 0)) == "(D+2*L)*x"


def test_construct_hom_map_cli(tmp_path, capsys):
    a = tmp_path / "a.json"
    run(capsys, "catalog", "emit", "r4_tpcsa", "--param", "beta=2",
        "--param", "gamma=0", "--param", "c=1", "--out", str(a))
    code, out, _ = run(capsys, "construct", "hom_map", str(a),
                       "--element", "x")
    assert code == 0
    assert json.loads(out) == {"x": {"x": "1"}, "y": {"y": "1"}}


def test_construct_precondition_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "basis": [{"name": "x", "parity": 0}],
        "tables": {"circ": {"x,x": {"x": "L"}},
                   "bracket": {}},
    }))
    code, _, err = run(capsys, "construct", "tensor", str(bad), str(bad))
    assert code == 2
    assert "error:" in err
