import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from lcas import algebra_file
from lcas.cli import run_command
from lcas.expr import ExprError, evaluate_expr, parse_expr, term_text
from lcas.lca import fixture, mutate
from lcas.poly import LAM
from strategies import polys

FIXTURES = ["vir", "cur_sl2", "rank2_LW", "solvable_d1", "abelian(2)"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name in FIXTURES:
        p = tmp_path / f"{name}.json"
        p.write_text(algebra_file.dumps(fixture(name)), encoding="utf-8")
        paths[name] = p
    return paths


# -- grammar ------------------------------------------------------------------


def test_grammar_examples():
    assert evaluate_expr("(del + 2*lam) * L", ["L"]) == fixture("vir").table[0][0]
    v = evaluate_expr("del^2*L - 3*W", ["L", "W"])
    assert v[0].to_text() == "del^2" and v[1].to_text() == "-3"


def test_syntax_error_location():
    with pytest.raises(ExprError) as e:
        parse_expr("del +")
    assert (e.value.line, e.value.column) == (1, 6)
    with pytest.raises(ExprError) as e:
        parse_expr("del\n  * * L")
    assert (e.value.line, e.value.column) == (2, 5)


@pytest.mark.parametrize(
    "text, fragment",
    [("x*L", "unknown identifier"), ("L^2", "power"), ("L*W", "multiplied"), ("del + L", "exactly one generator"), ("del L", "operator")],
)
def test_semantic_errors(text, fragment):
    with pytest.raises(ExprError, match=fragment):
        evaluate_expr(text, ["L", "W"])


@settings(max_examples=80, deadline=None)
@given(polys(("del", "lam"), max_exp=3, max_terms=4))
def test_printer_round_trip(p):
    if not p:
        return
    assert evaluate_expr(term_text(p, "W"), ["L", "W"]) == (p * 0, p)


# -- files --------------------------------------------------------------------


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name):
    code, text, _ = run("fixture", name)
    assert code == 0
    assert algebra_file.loads(text).table == fixture(name).table


def test_skew_conflict_rejected():
    data = json.loads(algebra_file.dumps(fixture("rank2_LW")))
    data["brackets"]["W,L"] = ["del*W"]
    with pytest.raises(algebra_file.AlgebraFileError):
        algebra_file.algebra_from_dict(data)
    data["brackets"]["W,L"] = ["-del*W"]
    assert algebra_file.algebra_from_dict(data).table == fixture("rank2_LW").table


@pytest.mark.parametrize("bad", ["del", "2L", "lam"])
def test_bad_generator_names(bad):
    with pytest.raises(algebra_file.AlgebraFileError):
        algebra_file.algebra_from_dict({"generators": [bad], "brackets": {}})


# -- commands -------------------------------------------------------------------


def test_check_pass_and_fail(files, tmp_path):
    assert run("check", files["vir"])[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(algebra_file.dumps(mutate(fixture("vir"), 0, 0, 0, LAM**2)), encoding="utf-8")
    code, text, _ = run("check", bad)
    assert code == 1 and "FAIL" in text


def test_solve_gder_vir(files):
    code, text, _ = run("solve", "gder", files["vir"], "--deg-del", 4, "--deg-lam", 3, "--json")
    assert code == 0
    rep = json.loads(text)
    assert {"kind", "bounds", "dimension", "basis", "projection_dimension"} <= rep.keys()
    assert rep["dimension"] == rep["projection_dimension"] == 8
    assert rep["bounds"]["max_del"] == 4
    for m in rep["basis"]:
        assert "del^2" not in m[0][0]


def test_solve_abg_flags_match_inline(files):
    a = run("solve", "abg", files["vir"], "--alpha", 2, "--beta", 1, "--gamma", 1, "--deg-del", 2, "--deg-lam", 2)
    b = run("solve", "abg(2,1,1)", files["vir"], "--deg-del", 2, "--deg-lam", 2)
    assert a == b and a[0] == 0 and "dimension: 3" in a[1]


def test_center_and_derived(files):
    code, text, _ = run("center", files["abelian(2)"], "--deg-del", 1, "--json")
    assert code == 0 and json.loads(text)["dimension"] == 4
    code, text, _ = run("derived", files["rank2_LW"])
    assert code == 0 and "complement: none" in text
    code, text, _ = run("derived", files["solvable_d1"], "--json")
    assert json.loads(text)["complement"] == ["a"]


def test_extend_then_check(files, tmp_path):
    code, text, _ = run("extend", files["vir"])
    assert code == 0
    ext = tmp_path / "vir_ext.json"
    ext.write_text(text, encoding="utf-8")
    assert algebra_file.load(ext).rank == 2
    assert run("check", ext)[0] == 0


def test_embed(files):
    code, text, _ = run("embed", files["vir"], "--deg-del", 2, "--deg-lam", 2)
    assert code == 0 and "cder check on extension: pass" in text
    code, text, _ = run("embed", files["rank2_LW"], "--deg-del", 1, "--deg-lam", 1, "--json")
    assert code == 3
    err = json.loads(text)["error"]
    assert err["code"] == 3 and err["type"] == "precondition" and "torsion" in err["message"]


def test_oracle_command(files):
    code, text, _ = run("oracle", "qc", files["cur_sl2"], "--deg-del", 1, "--deg-lam", 1, "--json")
    assert code == 0 and json.loads(text)["ok"] is True


def test_usage_errors(files, tmp_path):
    assert run("solve", "nonsense", files["vir"], "--deg-del", 1, "--deg-lam", 1)[0] == 2
    assert run("solve", "abg", files["vir"], "--alpha", 1, "--deg-del", 1, "--deg-lam", 1)[0] == 2
    assert run("solve", "cder", files["vir"], "--deg-del", -1, "--deg-lam", 1)[0] == 2
    assert run("bogus")[0] == 2
    assert run("check", tmp_path / "missing.json")[0] == 2
    broken = tmp_path / "broken.json"
    broken.write_text('{"generators": ["L"], "brackets": {"L,L": ["del +"]}}', encoding="utf-8")
    code, text, _ = run("check", broken, "--json")
    assert code == 2
    err = json.loads(text)["error"]
    assert err["type"] == "usage" and "column 6" in err["message"]


def test_solve_refuses_non_algebra(files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(algebra_file.dumps(mutate(fixture("vir"), 0, 0, 0, LAM**2)), encoding="utf-8")
    assert run("solve", "cder", bad, "--deg-del", 1, "--deg-lam", 1)[0] == 3


def test_output_is_deterministic(files):
    argv = ("solve", "qder", files["cur_sl2"], "--deg-del", 1, "--deg-lam", 1, "--tuples", "--json")
    assert run(*argv) == run(*argv)


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "lcas", "check", str(files["rank2_LW"])], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "jacobi identity: pass" in proc.stdout
