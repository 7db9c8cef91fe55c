import io
import json

import pytest

from leibniz_lab import QQ, construct_cyclic, load_algebra
from leibniz_lab.algebra_file import AlgebraFileError, dumps_algebra, loads_algebra
from leibniz_lab.cli import BUDGET_ENV, REPORT_SCHEMA, resolve_budget, run_command

from conftest import ALGEBRAS


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("path", sorted(ALGEBRAS.glob("*.json")), ids=lambda p: p.name)
def test_shipped_files_validate(path):
    code, out, _ = run("validate", path)
    assert code == 0 and "Leibniz identity: PASS" in out


@pytest.mark.parametrize("path", sorted(ALGEBRAS.glob("*.json")), ids=lambda p: p.name)
def test_load_serialize_round_trip(path):
    text = path.read_text()
    assert dumps_algebra(loads_algebra(text)) == text


def test_analyze_example2_json(tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run("analyze", ALGEBRAS / "ex2.json", "--json", target)
    assert code == 0 and "certificate: OK" in out
    report = json.loads(target.read_text())
    assert report["schema"] == REPORT_SCHEMA
    assert report["flags"] == {"lie": False, "nilpotent": False, "solvable": True}
    assert report["certificate"]["dichotomy"] == "leib_in_N"
    assert report["input"].startswith("sha256:")


def test_analyze_failure_is_data(tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run("analyze", ALGEBRAS / "standard_gf7.json", "--json", target)
    assert code == 0 and "FAILED at stage irreducibility" in out
    report = json.loads(target.read_text())
    assert report["certificate"] is None
    assert report["certificate_failure"]["stage"] == "irreducibility"


def test_reports_are_byte_identical(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run("analyze", ALGEBRAS / "ex1_gf5.json", "--json", p, "--seed", 4, "--oracle")[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    report = json.loads(paths[0].read_text())
    assert report["oracle"]["minimality"]["status"] == "pass"


def test_oracle_minimality():
    code, out, _ = run("oracle", "minimality", ALGEBRAS / "ex1_gf5.json")
    assert code == 0 and "minimality: PASS" in out
    assert "subspaces enumerated: 8" in out and "dim 1:" in out


def test_oracle_other_queries():
    code, out, _ = run("oracle", "nilradical", ALGEBRAS / "standard_gf3.json")
    assert code == 0 and "nilradical: span{a0, a1}" in out
    code, out, _ = run("oracle", "frattini", ALGEBRAS / "standard_gf3.json")
    assert code == 0 and "Frattini ideal: 0" in out
    code, out, _ = run("oracle", "minimal-ideals", ALGEBRAS / "standard_gf3.json")
    assert code == 0 and "minimal ideals: 1" in out
    code, out, _ = run("oracle", "core", ALGEBRAS / "ex1_gf5.json", "--subalgebra", "1,-1")
    assert code == 0 and "agree: True" in out and "core (enumeration): 0" in out
    assert run("oracle", "core", ALGEBRAS / "ex1_gf5.json")[0] == 1


def test_oracle_refusals(monkeypatch):
    code, _, err = run("oracle", "minimality", ALGEBRAS / "ex1.json")
    assert code == 1 and "prime field" in err
    code, _, err = run("oracle", "minimality", ALGEBRAS / "ex1_gf5.json", "--budget", 7)
    assert code == 2 and "budget" in err
    monkeypatch.setenv(BUDGET_ENV, "7")
    assert run("oracle", "minimality", ALGEBRAS / "ex1_gf5.json")[0] == 2
    assert resolve_budget(100).max_subspaces == 100


def test_construct_round_trips(tmp_path):
    out_file = tmp_path / "std.json"
    code, _, _ = run("construct", "standard", "--field", "Q", "--coeffs", "2,0", "-o", out_file)
    assert code == 0
    assert out_file.read_text() == (ALGEBRAS / "standard_sqrt2.json").read_text()
    code, out, _ = run("construct", "cyclic", "--field", "Q", "--dim", 2, "--top", "0,1", "-o", "-")
    assert code == 0 and out == (ALGEBRAS / "ex1.json").read_text()
    code, out, _ = run("construct", "chain", "--field", "Q", "--j", 2, "--k", 3, "-o", "-")
    assert code == 0 and out == (ALGEBRAS / "ex2.json").read_text()


def test_construct_errors():
    assert run("construct", "standard", "--field", "Q", "-o", "-")[0] == 1
    assert run("construct", "standard", "--field", "Q", "--coeffs", "0,1", "-o", "-")[0] == 1
    assert run("construct", "cyclic", "--field", "Q", "--dim", 2, "--top", "1,0", "-o", "-")[0] == 1
    assert run("construct", "chain", "--field", "GF(3)", "--j", 1, "--k", 3, "-o", "-")[0] == 1
    assert run("construct", "standard", "--field", "R", "--coeffs", "1", "-o", "-")[0] == 1


def test_quotient_and_closure():
    code, out, _ = run("quotient", ALGEBRAS / "ex1.json", "--ideal", "0,1", "-o", "-")
    assert code == 0
    Q = loads_algebra(out)
    assert Q.dim == 1 and not Q.table
    assert run("quotient", ALGEBRAS / "ex1.json", "--ideal", "1,0", "-o", "-")[0] == 1
    code, out, _ = run("closure", ALGEBRAS / "counterexample.json", "--elements", "i,-1,0;0,1,i")
    assert code == 0 and "(dim 2)" in out
    code, out, _ = run("closure", ALGEBRAS / "ex1.json", "--elements", "1,0", "--ideal")
    assert code == 0 and "ideal closure (dim 2)" in out


def test_transplant(tmp_path):
    out_file = tmp_path / "t.json"
    assert run("transplant", ALGEBRAS / "ex1.json", "--to-gf", 5, "-o", out_file)[0] == 0
    assert out_file.read_text() == (ALGEBRAS / "ex1_gf5.json").read_text()
    code, _, err = run("transplant", ALGEBRAS / "counterexample.json", "--to-gf", 5, "-o", "-")
    assert code == 1 and "counterexample.json" in err
    assert run("transplant", ALGEBRAS / "ex1.json", "--to-gf", 4, "-o", "-")[0] == 1


def test_usage_and_io_errors(tmp_path):
    assert run()[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("validate", tmp_path / "missing.json")[0] == 1


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": "Q", "dim": 2,\n "products": [}')
    code, _, err = run("validate", bad)
    assert code == 1 and "bad.json:2:" in err
    text = (ALGEBRAS / "counterexample.json").read_text().replace('"Q(i)"', '"Q"')
    bad.write_text(text)
    with pytest.raises(AlgebraFileError) as exc:
        load_algebra(bad)
    assert "is not in Q" in str(exc.value)
    bad.write_text(json.dumps({"field": "Q", "dim": 3,
                               "products": [{"left": 5, "right": 0, "result": {"0": "1"}}]}))
    code, _, err = run("validate", bad)
    assert code == 1 and "range" in err


def test_leibniz_violation_reports_witness(tmp_path):
    bad = tmp_path / "perturbed.json"
    A = construct_cyclic(QQ, 2, (0, 1))
    data = json.loads(dumps_algebra(A))
    data["products"][1]["result"] = {"0": "1", "1": "1"}
    bad.write_text(json.dumps(data))
    code, _, err = run("validate", bad)
    assert code == 1 and "Leibniz" in err
