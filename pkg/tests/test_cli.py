import json
import subprocess
import sys
from pathlib import Path

import pytest

from nrgit import __version__
from nrgit.cli import ANCHORS, main

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def rows(rep, criterion, obj=None):
    return [r for r in rep["verdicts"] if r["criterion"] == criterion and (obj is None or r["object"] == obj)]


def status(rep, criterion, obj):
    (r,) = rows(rep, criterion, obj)
    return r["status"]


def test_report_schema(capsys):
    code, rep = report(capsys, "torus-check", "--weights", "[[1,0],[0,1]]", "--point", "[1,1]", "--rho", "[1,1]")
    assert code == 0
    assert set(rep) == {"tool", "version", "command", "input_digest", "verdicts", "summary"}
    assert rep["version"] == __version__ and rep["command"] == "torus-check"
    for r in rep["verdicts"]:
        assert set(r) == {"object", "criterion", "anchor", "status", "witness", "reason"}
        assert r["anchor"] == ANCHORS[r["criterion"]]


def test_torus_check_documented_example(capsys):
    _, rep = report(capsys, "torus-check", "--weights", "[[1,0],[0,1]]", "--point", "[1,1]", "--rho", "[1,1]")
    assert status(rep, "rho_ss", "point[0]") is True
    assert status(rep, "rho_stable", "point[0]") is True
    assert status(rep, "halic_d", "point[0]") == 2


def test_torus_file_and_brute_force(capsys):
    _, rep = report(capsys, "torus-check", "--rep", FIX / "plane_torus.json", "--bound", 2)
    assert [r["status"] for r in rows(rep, "rho_ss")] == [True, False, True]
    assert [r["status"] for r in rows(rep, "hm_brute")] == [True, False, True]
    wit = rows(rep, "hm_brute", "point[1]")[0]["witness"]
    assert wit is not None


def test_halic_degree_uniform(capsys):
    code, rep = report(capsys, "halic-degree", "--rep", FIX / "plane_torus.json")
    assert code == 0
    assert status(rep, "halic_d", "point[1]") is None
    assert status(rep, "uniform_halic_d", "all") == 2


def test_graded_check(capsys):
    _, rep = report(capsys, "graded-check", "--rep", FIX / "conjugation_graded.json",
                    "--point", '[0,0,1,0]', "--rho", "-1")
    summ = status(rep, "grading_summary", "rep")
    assert (summ["omega_min"], summ["omega_next"]) == (-2, 0)
    assert status(rep, "equality_condition", "rep") is True
    assert status(rep, "uhat_semistable", "point") == "semistable"
    assert status(rep, "hm_rho_ss_uhat", "point") == "semistable"


def test_borel_demo(capsys):
    _, rep = report(capsys, "borel-demo", "--trials", 5)
    assert [r["status"] for r in rows(rep, "conj_ss")] == [True, False, True, False, True]
    assert status(rep, "conj_quotient", "M[2]") == ["5", "-2"]
    assert rep["summary"] == {"orbit_witnesses_found": 5, "orbit_pairs": 5}


def test_rationals_serialize_as_strings(capsys):
    _, rep = report(capsys, "borel-demo", "--point", '[["1/2", 0], [1, 0]]', "--trials", 1)
    assert status(rep, "conj_quotient", "M[0]") == ["1/2", "0"]


def test_quiver_check_documented_example(capsys):
    code, rep = report(capsys, "quiver-check", "--rep", FIX / "worked_example.json", "--rho", "[1,-1]",
                       "--assert", "nrgit_stable")
    assert code == 0
    assert status(rep, "nrgit_stable", "rep") is True
    assert status(rep, "qss_membership", "rep") is True


def test_assert_exit_code(capsys):
    args = ["quiver-check", "--rep", FIX / "worked_example_unstable.json", "--rho", "[1,-1]"]
    code, rep = report(capsys, *args)
    assert code == 0 and status(rep, "nrgit_stable", "rep") is False
    assert status(rep, "rudakov_stable", "rep") is True
    assert run(capsys, *args, "--assert", "nrgit_stable")[0] == 2
    assert run(capsys, *args, "--assert", "rudakov_stable")[0] == 0


def test_non_toric_rep_reports_null(capsys, tmp_path):
    p = tmp_path / "rep.json"
    p.write_text(json.dumps({
        "quiver": str(FIX / "worked_quiver.json"), "m": 0, "rank": {"v1": 2, "v2": 1},
        "mats": {"a1": [[["1", "0"]]], "a2": [[["1"], ["0"]]]}}))
    code, rep = report(capsys, "quiver-check", "--rep", p, "--rho", "[1,-2]")
    assert code == 0
    assert status(rep, "king_ss", "rep") is None
    assert status(rep, "aut_stab_dim", "rep") >= 1


def test_paper_regression(capsys):
    code, rep = report(capsys, "paper-regression")
    assert code == 0
    assert rep["summary"]["passed"] == rep["summary"]["total"] > 0
    assert all(r["status"] is True for r in rep["verdicts"])


def test_enumerate_worked_counts(capsys):
    _, rep = report(capsys, "quiver-enumerate", "--quiver", FIX / "worked_quiver.json",
                    "--m", 1, "--grid", "[0,1]", "--rho", "[1,-1]")
    s = rep["summary"]
    # alpha2 = 1 is the only nonzero choice; alpha1 is free in {0,1}, beta1 and beta2 too
    assert s["instances"] == 16
    assert s["nrgit"] == 1 * 2 * 2 * 2 == 8
    assert s["rudakov_not_nrgit"] > 0


def test_enumerate_empty_grid(capsys):
    code, rep = report(capsys, "quiver-enumerate", "--quiver", FIX / "worked_quiver.json", "--grid", "[]")
    assert code == 0 and rep["verdicts"] == [] and rep["summary"] == {}


def test_enumerate_non_generic_rho(capsys):
    _, rep = report(capsys, "quiver-enumerate", "--quiver", FIX / "path3_quiver.json",
                    "--m", 1, "--grid", "[0,1]", "--rho", "[0,-1,1]")
    assert rep["summary"]["king_ss_not_stable"] >= 1
    assert all(r["status"] is False for r in rows(rep, "generic"))


def test_enumerate_size_guard(capsys, tmp_path):
    p = tmp_path / "big.json"
    p.write_text(json.dumps({"vertices": [str(i) for i in range(7)], "arrows": []}))
    assert run(capsys, "quiver-enumerate", "--quiver", p)[0] == 1
    code, _, err = run(capsys, "quiver-enumerate", "--quiver", FIX / "path3_quiver.json", "--m", 5)
    assert code == 1 and "exceeds" in err


def test_byte_stable(capsys):
    args = ["borel-demo", "--seed", "abc", "--trials", 7]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]
    assert run(capsys, *args)[1] != run(capsys, "borel-demo", "--seed", "xyz", "--trials", 7)[1]


def test_timing_only_on_request(capsys):
    _, rep = report(capsys, "paper-regression", "--timing")
    assert rep["timing"]["seconds"] >= 0
    _, rep = report(capsys, "paper-regression")
    assert "timing" not in rep


def test_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, stdout, _ = run(capsys, "halic-degree", "--weights", "[[1,0],[0,1]]", "--point", "[1,1]",
                          "--rho", "[1,1]", "--out", out)
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["command"] == "halic-degree"


def test_pretty_table(capsys):
    code, out, _ = run(capsys, "torus-check", "--weights", "[[1,0],[0,1]]", "--point", "[1,1]", "--rho", "[1,1]",
                       "--pretty")
    assert code == 0
    assert out.splitlines()[0].split() == ["object", "criterion", "status", "reason"]
    assert "halic_d" in out


@pytest.mark.parametrize("text, where", [('{"a":\n', "2:1"), ('{"vertices": [1,\n  2,, 3]}', "2:5")])
def test_json_error_has_line_and_column(capsys, tmp_path, text, where):
    p = tmp_path / "bad.json"
    p.write_text(text)
    code, _, err = run(capsys, "quiver-enumerate", "--quiver", p)
    assert code == 1
    assert f"{p}:{where}:" in err


@pytest.mark.parametrize("argv", [
    ["torus-check"],
    ["torus-check", "--weights", "[[1,0]"],
    ["torus-check", "--weights", "[[1,0],[0,1]]", "--point", "[1]"],
    ["torus-check", "--weights", "[[1,0],[0,1]]", "--point", '["1/0", 1]'],
    ["halic-degree", "--weights", "[[1,0],[0,1]]", "--point", "[0,0]", "--rho", "[1,1]"],
    ["quiver-check"],
    ["quiver-check", "--rep", "/nonexistent.json"],
    ["graded-check", "--rep", str(FIX / "conjugation_graded.json"), "--point", "[1]"],
    ["borel-demo", "--trials", "0"],
    ["nonsense"],
])
def test_error_exit_code(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nrgit", "paper-regression", "--pretty"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "golden" in proc.stdout
