import json
import subprocess
import sys

import pytest

from quatlines.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_json(capsys):
    code, out, _ = run(capsys, "group", "h720", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["order"] == 720 and len(rep["classes"]) == 13
    assert rep["reflections"]["count"] == 40 and rep["reflections"]["root_lines"] == 20


def test_json_is_deterministic(capsys):
    a = run(capsys, "orbit", "h720", "(1, j)", "--json")[1]
    b = run(capsys, "orbit", "h720", "(1, j)", "--json")[1]
    assert a == b
    rep = json.loads(a)
    assert rep["n"] == 15 and rep["meets_special_bound"] and rep["designs"]["2"]["is_design"]


def test_design_check_exit_codes(capsys):
    assert run(capsys, "design-check", "w", "--group", "h720", "--t", "2")[0] == 0
    assert run(capsys, "design-check", "w", "--group", "h720", "--t", "3")[0] == 1


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "0", "1/3", "2/3", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["special_bound"] == "20" and rep["absolute_bound"] == "30"


def test_stabilizer(capsys):
    code, out, _ = run(capsys, "stabilizer", "h720", "w", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["stabilizer_order"] == 120
    assert rep["hstar_class"] == "binary_icosahedral" and rep["fs_indicator"] == -1
    assert rep["perp"]["distinct_from_line"]


def test_subgroups_and_fixed_lines(capsys, tmp_path):
    code, out, _ = run(capsys, "subgroups", "h24", "--reducible", "--save-dir", str(tmp_path), "--json")
    rep = json.loads(out)
    assert code == 0 and rep["maximal_reducible_orders"] == [8, 6]
    files = sorted(p.name for p in tmp_path.iterdir())
    assert "h24_8_1.json" in files
    code, out, _ = run(capsys, "fixed-lines", str(tmp_path / "h24_6_1.json"), "--restarts", "30",
                       "--parent", "h24", "--json")
    rep = json.loads(out)
    assert code == 0 and any(c["certified"] for c in rep["candidates"])


@pytest.mark.parametrize("argv", [
    ["orbit", "h99", "w"],
    ["orbit", "h720", "(1, q)"],
    ["orbit", "h720", "(0, 0)"],
    ["bounds", "1/2", "x"],
    ["group", "h720", "--cap", "0"],
    ["group", "h1440", "--cap", "100"],
    ["verify-paper", "--only", "nonexistent"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "stab", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["tool"] == "quatlines"
    assert all(c["name"].startswith("stab.") for c in doc["checks"])


def test_verify_failure_exit_1(capsys):
    code, _, err = run(capsys, "verify-paper", "--only", "design.thirty_coincide")
    assert code == 1 and "design.thirty_coincide" in err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "quatlines", "bounds", "2/5"], capture_output=True, text=True)
    assert r.returncode == 0 and "special bound: 6" in r.stdout
