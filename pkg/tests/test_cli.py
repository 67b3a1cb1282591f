import csv
import json
import subprocess
import sys

import pytest

from extsym import catalog, docio
from extsym.cli import main
from extsym.extensions import extract_cocycle
from strategies import triple


@pytest.fixture
def exported(tmp_path):
    def go(name):
        path = tmp_path / f"{name}.json"
        assert main(["export", name, "--out", str(path)]) == 0
        return str(path)
    return go


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", catalog.NAMES)
def test_validate(capsys, exported, name):
    code, out, _ = run(capsys, "validate", exported(name))
    assert code == 0
    assert "flavor:" in out and "[FAIL]" not in out


def test_validate_reports_failures(capsys, tmp_path):
    doc = docio.triple_to_json(triple("cahen_wallach_1"))
    doc["D"][0][0] = "1"
    path = tmp_path / "bad.json"
    path.write_text(docio.dumps(doc))
    code, out, _ = run(capsys, "validate", str(path), "--json")
    assert code == 1
    payload = json.loads(out)
    assert not payload["report"]["ok"]
    assert payload["flavor"] is None


def test_invariants_cw1(capsys, exported):
    code, out, _ = run(capsys, "invariants", exported("cahen_wallach_1"))
    assert code == 0
    assert "h = -2*sigma_X" in out
    assert "normal: yes (xi = 1/2*X)" in out
    assert "A_h nilpotency index 2" in out


def test_invariants_json_and_zero_h(capsys, exported):
    code, out, _ = run(capsys, "invariants", exported("flat3"), "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["mean_curvature_text"] == "0"
    assert payload["metric_radical_dim"] == 2
    assert payload["full"] is True and payload["normal"] is False


def test_invariants_refuses_invalid_triple(capsys, tmp_path):
    doc = docio.triple_to_json(triple("parabola"))
    doc["theta"][0][0] = "2"
    path = tmp_path / "bad.json"
    path.write_text(docio.dumps(doc))
    code, _, err = run(capsys, "invariants", str(path))
    assert code == 1 and "theta^2 = Id" in err


def test_orbit_csv_and_verify(capsys, exported, tmp_path):
    out_csv = tmp_path / "p.csv"
    code, out, _ = run(capsys, "orbit", exported("parabola"), "--verify", "--out", str(out_csv))
    assert code == 0
    assert "PASS" in out
    rows = list(csv.reader(out_csv.open()))
    assert rows[0] == ["word", "e2", "e3"]
    assert ["1:1/2", "-1/8", "-1/2"] in rows
    assert len(rows) == 1 + 7


def test_orbit_grid_and_limits(capsys, exported):
    code, out, err = run(capsys, "orbit", exported("flat3"), "--grid=-1,1/3,0.5", "--max-points", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    assert lines[1].startswith("1:-1;2:-1;3:-1,")
    assert "4 points" in err


def test_orbit_cw2_verify_floating(capsys, exported):
    code, out, err = run(capsys, "orbit", exported("cahen_wallach_2"), "--grid=-1,1", "--verify")
    assert code == 0 and "verify cahen_wallach_2" in err and "PASS" in err


def test_orbit_input_errors(capsys, exported):
    path = exported("cahen_wallach_1")
    assert run(capsys, "orbit", path, "--verify")[0] == 2
    assert run(capsys, "orbit", path, "--grid=a,b")[0] == 2
    assert run(capsys, "orbit", path, "--max-points", "0")[0] == 2


def test_cohomology(capsys, exported):
    code, out, _ = run(capsys, "cohomology", exported("parabola"), "--fiber", "1", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["dim_H2"] == payload["dim_Z2"] - payload["dim_B2"]
    code, out, _ = run(capsys, "cohomology", exported("flat3"))
    assert "dim H^2 restricted" in out and "GL(R)" in out


def test_extend_round_trip(capsys, tmp_path):
    t = triple("flat3")
    x = extract_cocycle(t)
    doc = docio.triple_to_json(x.quotient)
    doc["extension"] = docio.cocycle_to_json(x.cocycle, ["b1", "b2"])
    src = tmp_path / "base.json"
    src.write_text(docio.dumps(doc))
    out = tmp_path / "ext.json"
    assert run(capsys, "extend", str(src), "--out", str(out), "--name", "again")[0] == 0
    ext = docio.parse_triple(docio.load(str(out)))
    assert ext.name == "again" and ext.dim == 8
    assert run(capsys, "validate", str(out))[0] == 0


def test_extend_bad_cocycle(capsys, tmp_path, exported):
    base = exported("cahen_wallach_1")
    coc = tmp_path / "w.json"
    coc.write_text(json.dumps({"fiber_dim": 1, "cocycle": [{"i": 1, "j": 2, "fiber": 1, "value": "1"}]}))
    code, _, err = run(capsys, "extend", base, "--cocycle", str(coc))
    assert code == 1 and "[FAIL]" in err
    assert run(capsys, "extend", base)[0] == 2


def test_quadext(capsys, tmp_path):
    dd = catalog.cahen_wallach_1_dd()
    doc = {"name": "cw1", "quadext": docio.quadext_to_json(dd.data, {"xi": dd.algebra.vec(X=1)})}
    src = tmp_path / "q.json"
    src.write_text(docio.dumps(doc))
    code, _, err = run(capsys, "quadext", str(src))
    assert code == 1 and "D^3 = -D" in err
    doc["quadext"]["D"] = {"xi": [str(a) for a in dd.algebra.vec(X="1/2")]}
    src.write_text(docio.dumps(doc))
    code, out, _ = run(capsys, "quadext", str(src))
    assert code == 0
    assert json.loads(out)["name"] == "cw1"


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog", "cahen_wallach_1")
    assert code == 0 and "catalog fixtures: cahen_wallach_1" in out
    assert run(capsys, "catalog", "nope")[0] == 2


def test_usage_and_json_errors(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "line 1" in err


def test_console_script_entry_point(tmp_path):
    out = tmp_path / "p.json"
    res = subprocess.run([sys.executable, "-m", "extsym.cli", "export", "parabola", "--out", str(out)],
                         capture_output=True, text=True)
    assert res.returncode == 0
    res = subprocess.run([sys.executable, "-m", "extsym.cli", "invariants", str(out)], capture_output=True, text=True)
    assert res.returncode == 0 and "h = -e2" in res.stdout
