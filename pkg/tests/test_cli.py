import json
import shutil
import subprocess
from importlib.resources import files

import jsonschema
import pydot
import pytest

from tautilt.cli import main

SCHEMA = json.loads(files("tautilt").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "--builtin", "a3rad2")
    assert code == 0
    assert out.startswith("dim = 5, loop: no")


def test_basis_local2_table(capsys):
    code, out, _ = run(capsys, "basis", "--builtin", "local2", "--table")
    assert code == 0
    assert "dim = 2, loop: yes" in out
    assert "x . e1 = x" in out


def test_basis_json(capsys):
    code, out, _ = run(capsys, "basis", "--builtin", "kronecker", "--json")
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 4 and not data["has_loop"]


def test_basis_field_override(capsys):
    code, out, _ = run(capsys, "basis", "--builtin", "a3rad2", "--field", "3", "--json")
    assert json.loads(out)["field"] == 3


def test_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.alg"
    path.write_text('field = 2\nvertices = [1, 2\narrows = []\n')
    code, _, err = run(capsys, "basis", "--file", str(path))
    assert code == 2
    assert "line 3" in err


def test_unknown_builtin(capsys):
    code, _, err = run(capsys, "basis", "--builtin", "nope")
    assert code == 2 and "unknown builtin" in err


def test_missing_file(capsys):
    code, _, _ = run(capsys, "basis", "--file", "/nonexistent/x.alg")
    assert code == 2


def test_classify_a3rad2(capsys):
    code, out, _ = run(capsys, "classify", "--builtin", "a3rad2", "--max-dim", "1,1,1")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert code == 0
    fam = report["families"]
    assert fam["counts"]["tilting"] == 2 and fam["counts"]["tau_tilting"] == 3
    assert report["theorem"]["witness"] == "P1+P3+S1"
    assert report["theorem"]["verdict"] == "PASS"


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "--builtin", "a3rad2", "--text")
    assert code == 0
    assert "the class of tilting modules is {P1+P2+P3, P1+P2+S2}" in out


def test_classify_linear_a2_support(capsys):
    code, out, _ = run(capsys, "classify", "--builtin", "linear-a2")
    report = json.loads(out)
    assert code == 0 and report["families"]["counts"]["support_tau_tilting"] == 5


def test_classify_kronecker(capsys):
    code, out, _ = run(capsys, "classify", "--builtin", "kronecker")
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert code == 0
    assert report["families"]["status"] == "NOT COMPUTED"
    assert len(report["indecomposables"]) == 5
    assert report["warnings"]


def test_classify_file_default_bound(tmp_path, capsys):
    path = tmp_path / "a2.alg"
    path.write_text('vertices = [1, 2]\narrows = [["a", 1, 2]]\nrelations = []\n')
    code, out, _ = run(capsys, "classify", "--file", str(path))
    report = json.loads(out)
    assert code == 0
    assert report["bounds"]["dim_bound"] == {"1": 2, "2": 2}
    assert report["saturation"] == {"new_indecomposables": []}


def test_classify_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "classify", "--builtin", "linear-a2", "--out", str(target))
    assert code == 0 and out == ""
    jsonschema.validate(json.loads(target.read_text()), SCHEMA)
    assert [p.name for p in tmp_path.iterdir()] == ["r.json"]


def test_classify_cap_exceeded(capsys):
    code, _, err = run(capsys, "classify", "--builtin", "linear-a4", "--max-dim", "3",
                       "--cap", "100")
    assert code == 2
    assert "dimension vector" in err


def test_bad_max_dim(capsys):
    code, _, _ = run(capsys, "classify", "--builtin", "a3rad2", "--max-dim", "1,1")
    assert code == 2


def test_check_theorem_all(capsys):
    code, out, _ = run(capsys, "check-theorem", "--all")
    rows = out.strip().splitlines()[1:]
    assert code == 0
    assert len(rows) >= 8
    assert all(r.split()[-1] == "PASS" for r in rows)


def test_check_theorem_single_json(capsys):
    code, out, _ = run(capsys, "check-theorem", "local2", "--json")
    data = json.loads(out)
    assert code == 0
    assert data == [{"name": "local2", "hereditary": False, "loop": True,
                     "families_equal": True, "verdict": "PASS"}]


def test_check_theorem_needs_names(capsys):
    code, _, _ = run(capsys, "check-theorem")
    assert code == 2


@pytest.mark.parametrize("kind", ["compat", "families"])
def test_export_dot_round_trip(capsys, kind):
    code, out, _ = run(capsys, "export", "--builtin", "a3rad2", "--dot", kind)
    assert code == 0
    graphs = pydot.graph_from_dot_data(out)
    assert graphs and len(graphs) == 1
    g = graphs[0]
    if kind == "compat":
        labels = {n.get_label().strip('"') for n in g.get_nodes() if n.get_label()}
        assert labels == {"P1", "P2", "P3", "S1", "S2"}
        assert len(g.get_edges()) == 7
    else:
        assert g.get_type() == "digraph"
        assert len(g.get_edges()) == 2 + 12


def test_export_compat_marks_non_rigid(capsys):
    code, out, _ = run(capsys, "export", "--builtin", "local2", "--dot", "compat")
    assert code == 0
    assert "style=dashed" in out


def test_export_families_rejected_for_kronecker(capsys):
    code, _, err = run(capsys, "export", "--builtin", "kronecker", "--dot", "families")
    assert code == 2 and "not computed" in err


@pytest.mark.skipif(shutil.which("tautilt") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["tautilt", "basis", "--builtin", "a3rad2"], capture_output=True,
                         text=True)
    assert res.returncode == 0 and "dim = 5" in res.stdout
