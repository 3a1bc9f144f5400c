import io
import json
import subprocess
import sys

import pytest

from heytingqv.algebra import chain, trivial, upset_algebra
from heytingqv.catalog import catalog, catalog_frame
from heytingqv.cli import run_command
from heytingqv.io import algebra_from_dict, export_dot, load, poset_from_dict, poset_to_dict, save
from heytingqv.morphisms import isomorphic


def run(*argv, env_budgets=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# ------------------------------------------------------------ file formats

def test_poset_round_trip(tmp_path):
    p = catalog_frame("C10p")
    save(p, tmp_path / "p.json")
    back = load(tmp_path / "p.json")
    assert (back.leq == p.leq).all() and back.labels == p.labels
    assert poset_from_dict(poset_to_dict(p)).covers == p.covers


def test_algebra_round_trip(tmp_path):
    a = catalog("C7p")
    save(a, tmp_path / "a.json")
    back = load(tmp_path / "a.json")
    assert (back.imp == a.imp).all() and back.top == a.top


def test_malformed_files(tmp_path):
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(ValueError):
        load(tmp_path / "bad.json")
    with pytest.raises(ValueError):
        algebra_from_dict({"n": 2})
    with pytest.raises(ValueError):
        algebra_from_dict({"n": 3, "bot": 0, "top": 1, "meet": [[0, 0], [0, 1]], "join": [[0, 1], [1, 1]],
                           "imp": [[1, 1], [0, 1]]})


def test_dot_export():
    dot = export_dot(chain(2))
    assert dot.startswith("digraph") and "rankdir=BT" in dot
    assert dot.count("->") == 1 and dot.count("label=") == 2
    t = export_dot(trivial())
    assert t.count("label=") == 1 and "->" not in t
    c5 = export_dot(catalog_frame("C5p"))
    assert c5.count("label=") == 4 and c5.count("->") == 4


# ------------------------------------------------------------ commands, exit 0

def test_alg_show():
    code, out, _ = run("alg", "show", "chain:4")
    assert code == 0 and "4 elements" in out and "covers: 0<1 1<2 2<3" in out


def test_alg_show_json_round_trips():
    code, out, _ = run("alg", "show", "catalog:C5p", "--json")
    d = json.loads(out)
    assert code == 0 and isomorphic(algebra_from_dict(d), catalog("C5p"))


@pytest.mark.parametrize("argv", [
    ["alg", "free", "chain:2", "1"], ["qvar", "free", "cyclic:3", "1"], ["alg", "product", "chain:2", "chain:3"],
])
def test_algebra_outputs_round_trip(argv, tmp_path):
    code, out, _ = run(*argv, "--json")
    assert code == 0
    (tmp_path / "x.json").write_text(out)
    assert load(tmp_path / "x.json").n == json.loads(out)["n"]


def test_file_address(tmp_path):
    save(catalog_frame("C5p"), tmp_path / "frame.json")
    code, out, _ = run("alg", "show", f"file:{tmp_path / 'frame.json'}")
    assert code == 0 and "6 elements" in out


def test_product_and_free_addresses():
    code, out, _ = run("alg", "show", "product:chain:2,chain:3", "--json")
    assert code == 0 and json.loads(out)["n"] == 6
    code, out, _ = run("alg", "show", "free:chain:2,1", "--json")
    assert code == 0 and json.loads(out)["n"] == 4


def test_logic_valid_witness_json():
    code, out, _ = run("logic", "valid", "catalog:C7", "(~~q -> q) \\/ ~~q \\/ ~q", "--json")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "refuted" and set(d["witness"]["valuation"]) == {"q"}


def test_logic_commands():
    assert run("logic", "valid", "chain:2", "p \\/ ~p")[1].strip() == "valid"
    code, out, _ = run("logic", "rule-valid", "chain:3", "~~p / p", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "refuted"
    code, out, _ = run("logic", "instance-check", "cyclic:7", "mints", "--sub", "p1=~~q", "--sub", "p2=~q",
                       "--sub", "r=~~q -> q", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "counterexample"
    code, out, _ = run("logic", "separates", "chain:3", "p \\/ ~p", "--gamma", "~p \\/ ~~p")
    assert code == 0 and out.strip() == "yes"


def test_rules_and_alg_queries():
    assert run("rules", "visser", "1")[0] == 0
    assert "/" in run("rules", "mints")[1]
    code, out, _ = run("alg", "homs", "chain:3", "chain:3", "--json")
    assert code == 0 and json.loads(out)["count"] == 2
    assert run("alg", "homs", "chain:4", "chain:3", "--injective")[1].startswith("0 injective")
    assert run("alg", "subalgebras", "chain:4")[0] == 0
    assert run("alg", "quotients", "chain:3")[0] == 0
    code, out, _ = run("alg", "subdirect", "product:chain:2,chain:3", "chain:2", "chain:3")
    assert code == 0 and out.startswith("yes")
    assert run("alg", "check", "cyclic:6")[0] == 0
    code, out, _ = run("alg", "export", "catalog:C5p", "--poset")
    assert code == 0 and out.count("->") == 6  # Hasse diagram of the 6-element algebra


def test_qvar_commands():
    code, out, _ = run("qvar", "member", "chain:3", "catalog:C5p", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "yes"
    code, out, _ = run("qvar", "tnp", "catalog:C7p", "--json")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "yes" and d["certificate"]["preimage"]["n"] == 11
    assert run("qvar", "irreducible", "chain:3", "chain:3")[1].startswith("yes")
    assert run("qvar", "primitive", "cyclic:4")[1].startswith("yes")
    assert run("qvar", "sc-primitive", "cyclic:2")[1].startswith("yes")
    assert run("qvar", "projective", "chain:2", "chain:3")[0] == 0


def test_jankov_commands():
    code, out, _ = run("jankov", "formula", "chain:3")
    assert code == 0 and "->" in out
    code, out, _ = run("jankov", "check", "catalog:C7p", "catalog:C10p", "--json")
    d = json.loads(out)
    assert code == 0 and d["agree"] and d["in_sh"] == "yes"


def test_repro_run(tmp_path):
    code, out, _ = run("repro", "run", "th_noleast", "--quiet", "--out", str(tmp_path / "r.json"))
    assert code == 0 and "0 red" in out
    assert json.loads((tmp_path / "r.json").read_text())["counts"]["red"] == 0


# ------------------------------------------------------------ exit 2

def test_exceeds_budget_exit_code():
    code, out, _ = run("qvar", "projective", "catalog:C10p", "catalog:C16", "--budget-power-cap", "1",
                       "--budget-term-cap", "10", "--budget-table-cap", "50", "--budget-free-cap", "50", "--json")
    assert code == 2 and json.loads(out)["verdict"] == "exceeds-budget"
    code, out, _ = run("alg", "free", "cyclic:7", "2", "--budget-free-cap", "100")
    assert code == 2 and out.startswith("exceeds-budget")
    assert run("alg", "homs", "chain:3", "chain:3", "--limit", "1")[0] == 2


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("HEYTINGQV_BUDGETS", "free_cap=100")
    assert run("alg", "free", "cyclic:7", "2")[0] == 2
    monkeypatch.setenv("HEYTINGQV_BUDGETS", "free_cap=nope")
    assert run("alg", "show", "chain:2")[0] == 1


def test_budgets_flag_and_global_position():
    assert run("--budgets", "free_cap=100", "alg", "free", "cyclic:7", "2")[0] == 2
    code, out, _ = run("--json", "alg", "show", "chain:2")
    assert code == 0 and json.loads(out)["n"] == 2


# ------------------------------------------------------------ exit 1

@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["alg"], ["alg", "show"], ["alg", "show", "chain:x"], ["alg", "show", "blob:3"],
    ["alg", "show", "catalog:C9p"], ["alg", "show", "file:/nonexistent.json"], ["logic", "valid", "chain:2", "p ->"],
    ["logic", "rule-valid", "chain:2", "p q"], ["logic", "instance-check", "chain:2", "mints", "--sub", "p1"],
    ["qvar", "irreducible", "chain:4", "chain:3"], ["jankov", "formula", "product:chain:2,chain:2"],
    ["qvar", "sc-primitive", "chain:4"], ["alg", "show", "chain:2", "--budget-free-cap", "0"],
    ["alg", "show", "chain:2", "--budgets", "nonsense=3"], ["repro", "run", "nosuch"],
    ["alg", "show", "product:chain:2"], ["alg", "show", "free:chain:2"],
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 1 and err.startswith("error:")


def test_malformed_input_file(tmp_path):
    (tmp_path / "m.json").write_text('{"n": 2, "bot": 0}')
    assert run("alg", "show", f"file:{tmp_path / 'm.json'}")[0] == 1
    (tmp_path / "bad.json").write_text(json.dumps({"n": 2, "bot": 0, "top": 1, "meet": [[0, 0], [0, 1]],
                                                   "join": [[0, 1], [1, 1]], "imp": [[1, 1], [1, 1]]}))
    assert run("alg", "check", f"file:{tmp_path / 'bad.json'}")[0] == 1


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "heytingqv", "alg", "show", "chain:2"], capture_output=True,
                         text=True)
    assert res.returncode == 0 and "2 elements" in res.stdout
