import io
import json
import subprocess
import sys

import pytest

from mcfcalc import cli
from mcfcalc.errors import InsufficientPrecision


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_series_delta():
    code, out, _ = run("series", "delta", "--q-order", "5")
    assert code == 0
    s = json.loads(out)["series"]
    assert s["valuation"] == 1
    assert s["coefficients"] == ["1", "-24", "252", "-1472"]


def test_series_csv():
    code, out, _ = run("series", "s", "--q-order", "2", "--z-order", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "z_exp,q_exp,coefficient"
    assert "2,1,1" in out.splitlines()


def test_global_format_flag():
    code, out, _ = run("--format", "csv", "series", "delta", "--q-order", "3")
    assert out == "q_exp,coefficient\n1,1\n2,-24\n"


def test_invariant_yau_zaslow():
    code, out, _ = run("invariant", "point-hodge", "--surface", "k3", "--genus", "0", "--points", "0", "--h", "1", "--div", "1")
    assert code == 0
    assert json.loads(out)["value"] == "24"


def test_invariant_rejects_imprimitive():
    code, _, err = run("invariant", "point-hodge", "--surface", "k3", "--genus", "0", "--points", "0", "--h", "1", "--div", "2")
    assert code == 2 and "mcf" in err


def test_mcf_eighth():
    code, out, _ = run("mcf", "point-hodge", "--surface", "k3", "--genus", "0", "--points", "0", "--h", "0", "--div", "2")
    assert code == 0
    assert json.loads(out)["value"] == "1/8"


def test_mcf_general_and_contract_error():
    code, out, _ = run("mcf", "general", "--genus", "2", "--degrees", "2,2", "--div", "2", "--values", '{"1": "5", "2": "7"}')
    assert (code, json.loads(out)["value"]) == (0, "229")
    code, _, err = run("mcf", "general", "--genus", "1", "--degrees", "1/2", "--div", "2", "--values", '{"1": "5", "2": "7"}')
    assert code == 4 and "not an integer" in err


def test_batch(tmp_path):
    f = tmp_path / "q.json"
    f.write_text(json.dumps([
        {"surface": "k3", "genus": 0, "points": 0, "h": 1},
        {"surface": "k3", "genus": 0, "points": 0, "h": 0, "div": 2},
        {"surface": "abelian", "genus": 2, "points": 2, "h": 2},
    ]))
    code, out, _ = run("mcf", "point-hodge", "--batch", str(f))
    assert code == 0
    assert [r["value"] for r in json.loads(out)["results"]] == ["24", "1/8", "2"]
    code, out, _ = run("mcf", "point-hodge", "--batch", str(f), "--format", "csv")
    assert out.splitlines()[2] == "k3,0,0,0,2,1/8"


def test_usage_errors():
    assert run("invariant", "point-hodge", "--surface", "k3")[0] == 2
    assert run("bogus")[0] == 2
    assert run("dr-vertex", "--query", "/nonexistent.json")[0] == 2


def test_precision_exit_code(monkeypatch):
    def boom(q):
        raise InsufficientPrecision("budget exhausted")

    monkeypatch.setattr(cli, "primitive_point_hodge", boom)
    code, _, err = run("invariant", "point-hodge", "--surface", "k3", "--genus", "0", "--points", "0", "--h", "1")
    assert code == 3 and "precision" in err


DR_QUERY = {
    "legs": [
        {"a": 1, "gamma": {"rank": 0, "s": 1, "f": 2, "n": 0}, "degree": 1},
        {"a": -1, "gamma": {"rank": 1, "s": 1, "f": 0, "n": 2}, "degree": 1},
    ],
    "beta": {"h": 1},
    "z_order": 6,
}


def test_dr_vertex(tmp_path):
    f = tmp_path / "dr.json"
    f.write_text(json.dumps(DR_QUERY))
    code, out, _ = run("dr-vertex", "--query", str(f), "--convention", "z_small")
    obj = json.loads(out)
    assert code == 0
    assert obj["metadata"]["status"] == "conjectural"
    assert obj["invariants"]["0"] == "-24"
    code, out, _ = run("dr-vertex", "--query", str(f))
    assert set(json.loads(out)["invariants"].values()) == {"0"}


def test_pt_transform(tmp_path):
    f = tmp_path / "pt.json"
    f.write_text(json.dumps({
        "r": 2,
        "nu": 3,
        "primitive": {"1": {"lo": 0, "hi": 3, "coeffs": ["5", "6", "7"]}, "2": {"lo": 0, "hi": 2, "coeffs": ["11", "13"]}},
    }))
    code, out, _ = run("pt-transform", "--input", str(f))
    obj = json.loads(out)
    assert code == 0
    assert obj["series_route_agrees"] is True
    assert obj["result"]["coeffs"][2] == str(7 - 8 * 13)


def test_verify():
    code, out, _ = run("verify")
    assert code == 0 and json.loads(out)["passed"] is True


def test_deterministic_output():
    a = run("series", "theta", "--q-order", "3", "--z-order", "5")[1]
    b = run("series", "theta", "--q-order", "3", "--z-order", "5")[1]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mcfcalc", "invariant", "point-hodge", "--surface", "k3", "--genus", "0",
         "--points", "0", "--h", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == "24"
