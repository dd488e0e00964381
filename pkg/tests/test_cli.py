from __future__ import annotations

import json

import pytest

from qmonodromy.cli import RunConfig, main, run


def _strip_times(report: dict) -> dict:
    for r in report["results"]:
        r.pop("wall-time")
    return report


def _run(tmp_path, *args):
    out = tmp_path / "report.json"
    code = main([*args, "--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_passing_run(tmp_path):
    code, rep = _run(tmp_path, "--checks", "rll,ybe,mer,casimir-centrality", "--reps", "fund", "--s", "1,1,1")
    assert code == 0
    assert rep["summary"]["failed"] == 0
    r = rep["results"][0]
    assert set(r) >= {"check-id", "representation", "grading", "order", "status", "first-failing-coefficient", "wall-time"}


def test_flip_sign_exits_1(tmp_path):
    code, rep = _run(tmp_path, "--checks", "rll,uvw,mer", "--reps", "fund", "--s", "1,1,1", "--flip-sign-debug")
    assert code == 1
    for r in rep["results"]:
        assert r["status"] == "fail" and r["first-failing-coefficient"]


@pytest.mark.parametrize("args", [
    ["--checks", "no-such-check"],
    ["--s", "0,0,0"],
    ["--s", "1,1"],
    ["--s", "a,b,c"],
    ["--s", "1,-1,-1"],
    ["--q", "1"],
    ["--q", "-1"],
    ["--q", "0"],
    ["--q", "pi"],
    ["--order", "0"],
    ["--reps", "tensor:5"],
    ["--reps", "adjoint"],
])
def test_configuration_errors_exit_2(tmp_path, args, capsys):
    code, _ = _run(tmp_path, *args)
    assert code == 2
    assert "configuration error" in capsys.readouterr().err


def test_report_is_deterministic():
    cfg = dict(checks=["rll", "sigma-family", "casimir-eigenvalues"], reps=["fund", "tensor:2"],
               gradings=[(1, 1, 1), (1, 0, 0)], order=3)
    a = json.dumps(_strip_times(run(RunConfig(**cfg))[1]), sort_keys=True)
    b = json.dumps(_strip_times(run(RunConfig(**cfg))[1]), sort_keys=True)
    c = json.dumps(_strip_times(run(RunConfig(**cfg, jobs=2))[1]), sort_keys=True)
    assert a == b == c


def test_negative_grading_entries_are_allowed(tmp_path):
    code, _ = _run(tmp_path, "--checks", "rll", "--reps", "fund", "--s", "2,-1,1")
    assert code == 0


def test_rational_mode(tmp_path):
    code, rep = _run(tmp_path, "--checks", "uvw,kt-factors", "--reps", "fund", "--q", "3/2")
    assert code == 0 and rep["config"]["q"] == "3/2"


def test_export_r(tmp_path):
    out = tmp_path / "r.json"
    assert main(["export", "R", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["entries"]) == 81
    assert sum(1 for e in data["entries"] if e["B"]) == 15 == data["nonzero-B"]
    assert data["K"]["11"] == {"num": [["2/3", "1"]], "den": [["0", "1"]]}


def test_export_casimir3(capsys):
    assert main(["export", "casimir3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["terms"]) == 1 and data["terms"][0]["word"] == ["Q(-2,-2,-2)"]


def test_export_f_series(capsys):
    assert main(["export", "F-series", "--order", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    c1, c2 = data["coefficients"]
    assert c1["numerator"] == "C1" and c1["denominator"]["num"] == [["-2", "1"], ["0", "1"], ["2", "1"]]
    assert c2["numerator"] == "C1^2 + 2*C2" and c2["denominator"]["num"] == [["-4", "2"], ["0", "2"], ["4", "2"]]


def test_export_latex(capsys):
    assert main(["export", "casimir3", "--format", "latex"]) == 0
    assert capsys.readouterr().out.strip() == "C^{(3)} = q^{-2G_1-2G_2-2G_3}"
    assert main(["export", "M", "--format", "latex"]) == 0
    tex = capsys.readouterr().out
    assert tex.startswith("\\begin{pmatrix}") and "\\tfrac{2}{3}G_1" in tex
    assert main(["export", "R", "--format", "latex"]) == 0
    assert "K_{11|11} &= q^{2/3}" in capsys.readouterr().out


def test_export_with_representation(capsys):
    assert main(["export", "Mbar", "--rep", "fund", "--order", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["representation"] == "fund" and set(data["evaluated"]) == {f"{a}{b}" for a in "123" for b in "123"}


def test_export_unknown_target():
    assert main(["export", "S-matrix"]) == 2
