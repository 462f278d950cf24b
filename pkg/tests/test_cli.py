import json
import subprocess
import sys

import pytest

from qtjantzen import cli, jantzen
from qtjantzen.errors import InsufficientPrecision


def _ok(*argv):
    code, out, err = cli.run(list(argv))
    assert code == 0, err
    return out


def _doc(*argv):
    doc = json.loads(_ok(*argv))
    assert doc["schema"] == 1
    return doc


def test_qcm_golden():
    doc = _doc("qcm", "--type", "A1", "--max-degree", "6")
    assert list(doc["ctilde"].values()) == [[1, 0, -1, 0, 1, 0]]


def test_klpoly_tsv_and_json():
    tsv = _ok("klpoly", "--type", "A1", "--monomial", "Y(1,0)Y(1,2)", "--format", "tsv")
    assert tsv == "monomial\tP\n1\tt\n"
    doc = _doc("klpoly", "--type", "A1", "--monomial", "Y(1,0)Y(1,2)")
    assert list(doc["P"]) == ["1"]


def test_jantzen_lattice_golden():
    doc = _doc("jantzen", "--type", "A1", "--seq", "3,1", "--engine", "lattice", "--verify")
    assert doc["graded_dims"] == {"0": 3, "1": 1}
    v = doc["verification"]
    assert v["bridge"] and v["precision_plus_4_agrees"]


def test_jantzen_torus_engine_matches_lattice():
    tor = _doc("jantzen", "--type", "A1", "--seq", "3,3,1,1", "--engine", "torus")
    lat = _doc("jantzen", "--type", "A1", "--seq", "3,3,1,1")
    assert tor["graded_dims"] == lat["graded_dims"] == {"0": 9, "1": 3, "3": 3, "4": 1}


def test_jantzen_rational_backend():
    doc = _doc("jantzen", "--seq", "1,3", "--backend", "rational")
    assert doc["graded_dims"] == {"-1": 1, "0": 3}


def test_unipotent_commands():
    doc = _doc("unipotent", "dual-canonical", "--type", "A2", "--word", "1,2,1", "--weight", "1,1",
               "--verify")
    assert set(doc["dual_canonical"]) == {"1,0,1", "0,1,0"}
    assert doc["verification"]["iota_invariant"]
    doc = _doc("unipotent", "mixed", "--word", "1,2,1", "--seq", "2,1,3", "--verify")
    assert all(doc["verification"].values())
    doc = _doc("unipotent", "mixed", "--word", "1,2,1", "--seq", "3,1", "--quiver", "1>2")
    assert set(doc["expansion"]) == {"1,0,1", "0,1,0"}


def test_suites_report_no_failures():
    assert _doc("assoc-suite", "--type", "A1", "--seed", "3", "--count", "5")["failures"] == []
    assert _doc("duality-suite", "--type", "A2", "--seed", "3", "--count", "5")["failures"] == []


def test_other_commands_run():
    _doc("ft", "--type", "A2", "--node", "1,0", "--verify")
    _doc("et", "--type", "A1", "--monomial", "Y(1,0)Y(1,2)")
    _doc("lt", "--type", "A1", "--monomial", "Y(1,0)Y(1,2)", "--verify")
    _doc("et-mixed", "--type", "A1", "--seq", "3,1")


def test_repeated_runs_are_identical():
    argv = ["assoc-suite", "--type", "A2", "--seed", "11", "--count", "3"]
    assert _ok(*argv) == _ok(*argv)
    argv = ["jantzen", "--seq", "5,3,1"]
    assert _ok(*argv) == _ok(*argv)


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["jantzen", "--seq", "2,1"],
    ["jantzen", "--type", "A2", "--seq", "3,1"],
    ["klpoly", "--type", "A1"],
    ["et", "--monomial", "Y(1,0)", "--format", "tsv"],
    ["unipotent", "mixed", "--word", "1,1"],
    ["unipotent", "mixed", "--word", "1,2,1", "--seq", "2,1", "--quiver", "2>1"],
    ["unipotent"],
    ["qcm", "--type", "Z9"],
])
def test_validation_errors_exit_2(argv):
    code, out, err = cli.run(argv)
    assert code == 2 and out == ""
    assert json.loads(err)["schema"] == 1


def test_precision_exhaustion_exits_3(monkeypatch):
    def exhausted(*_a, **_k):
        raise InsufficientPrecision("precision exhausted", 42)
    monkeypatch.setattr(jantzen, "jantzen_filtration", exhausted)
    code, out, err = cli.run(["jantzen", "--seq", "3,1"])
    assert code == 3
    assert json.loads(err) == {"schema": 1, "error": "InsufficientPrecision",
                               "message": "precision exhausted", "order": 42}


def test_config_file(tmp_path):
    good = tmp_path / "run.cfg"
    good.write_text("# lattice run\ntype = A1\nbackend = rational\n")
    doc = _doc("jantzen", "--seq", "3,1", "--config", str(good))
    assert doc["backend"].startswith("Q")
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert cli.run(["jantzen", "--seq", "3,1", "--config", str(bad)])[0] == 2
    assert cli.run(["jantzen", "--seq", "3,1", "--config", str(tmp_path / "missing")])[0] == 2


def test_env_precision(monkeypatch):
    monkeypatch.setenv("JANTZEN_PRECISION", "30")
    assert _doc("jantzen", "--seq", "3,1")["precision_used"] == 30
    monkeypatch.setenv("JANTZEN_PRECISION", "-1")
    assert cli.run(["jantzen", "--seq", "3,1"])[0] == 2


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "qtjantzen.cli", "qcm", "--max-degree", "4"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["command"] == "qcm"


def test_qcm_verify_torus_relation():
    doc = _doc("qcm", "--type", "A1", "--verify")
    rel, = doc["verification"]["torus_relations"]
    assert rel == {"x": "Y(1,2)", "y": "Y(1,0)", "exponent": -2, "holds": True}


def test_et_mixed_factors_give_m_n():
    doc = _doc("et-mixed", "--type", "A1", "--factors", "Y(1,2);Y(1,2);Y(1,0)")
    got = {e["simple"]: e["coeff"] for e in doc["m_n"]}
    assert got == {"Y(1,0)Y(1,2)^2": {"-4": "1"}, "Y(1,2)": {"0": "1"}}


def test_bridge_sweep():
    doc = _doc("jantzen", "--max-len", "2")
    assert doc["sweep"]["sequences"] == 20 and doc["sweep"]["bridge_failures"] == []
    assert cli.run(["jantzen", "--max-len", "2", "--engine", "torus"])[0] == 2
