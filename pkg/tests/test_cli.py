import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from rfbvp.cli import main
from rfbvp.io import read_solution_csv, read_weights_csv, solution_csv

SVG = "{http://www.w3.org/2000/svg}"


def test_solve_classical(tmp_path):
    out, js, svg = tmp_path / "s.csv", tmp_path / "s.json", tmp_path / "s.svg"
    code = main(
        ["solve", "--alpha", "2", "--theta", "0", "--N", "10", "--L", "0", "--R", "1",
         "--gl", "2", "--gr", "1", "--out", str(out), "--json", str(js), "--svg", str(svg)]
    )
    assert code == 0
    x, T = read_solution_csv(out)
    assert np.max(np.abs(T - (2 - x))) <= 1e-10
    payload = json.loads(js.read_text())
    assert set(payload) == {"manifest", "nodes", "values", "residual_inf"}
    assert payload["manifest"]["alpha"] == 2.0 and payload["manifest"]["command"] == "solve"
    assert len(ET.parse(svg).getroot().findall(f"{SVG}polyline")) == 1


def test_solve_to_stdout(capsys):
    assert main(["solve", "--alpha", "1.5", "--N", "4"]) == 0
    assert capsys.readouterr().out.startswith("x,T\n")


@pytest.mark.parametrize("alpha", ["1", "1.0000001", "0.9999999"])
def test_solve_singular_order(capsys, alpha):
    assert main(["solve", "--alpha", alpha, "--theta", "0"]) == 2
    err = capsys.readouterr().err
    assert "Riesz-Feller" in err and "singular" in err
    assert len(err.strip().splitlines()) == 1


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["solve", "--alpha", "0.5", "--theta", "0.7"], "theta"),
        (["solve", "--alpha", "1.5", "--N", "1"], "N >= 2"),
        (["solve", "--alpha", "1.5", "--L", "2", "--R", "1"], "R > L"),
    ],
)
def test_solve_validation_errors(capsys, argv, needle):
    assert main(argv) == 2
    assert needle in capsys.readouterr().err


def test_solve_fig4_regime(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["solve", "--alpha", "0.35", "--theta", "-0.055", "--N", "200", "--gl", "2", "--gr", "1", "--out", str(out)]) == 0
    x, T = read_solution_csv(out)
    assert np.max(np.abs(T - (2 - x))) > 0.05


def test_solve_json_differs_only_in_timestamp(tmp_path):
    runs = []
    for _ in range(2):
        js = tmp_path / "s.json"
        assert main(["solve", "--alpha", "0.7", "--theta", "0.2", "--N", "20", "--json", str(js)]) == 0
        runs.append(json.loads(js.read_text()))
    for r in runs:
        r["manifest"].pop("timestamp")
    assert runs[0] == runs[1]


def test_solution_csv_round_trip_from_cli(tmp_path):
    out = tmp_path / "s.csv"
    main(["solve", "--alpha", "1.3", "--theta", "0.4", "--N", "30", "--out", str(out)])
    x, T = read_solution_csv(out)
    assert solution_csv(x, T) == out.read_text()


def test_sweep_fig2(tmp_path):
    outdir = tmp_path / "fig2"
    assert main(["sweep", "--preset", "fig2", "--N", "200", "--out", str(outdir)]) == 0
    csvs = sorted(outdir.glob("*.csv"))
    assert len(csvs) == 8
    assert len(list(outdir.glob("*.svg"))) == 1
    x, T = read_solution_csv(next(p for p in csvs if "alpha2_" in p.name))
    assert np.max(np.abs(T - (2 - x))) <= 1e-9
    root = ET.parse(outdir / "sweep.svg").getroot()
    assert len(root.findall(f"{SVG}polyline")) == 8


def test_sweep_fig3_theta_zero_is_mirror_symmetric(tmp_path):
    outdir = tmp_path / "fig3"
    assert main(["sweep", "--preset", "fig3", "--N", "200", "--out", str(outdir)]) == 0
    csvs = sorted(outdir.glob("*.csv"))
    assert len(csvs) == 7
    # theta = 0 with (gL, gR) = (2, 1): reversing and swapping boundary data is a reflection
    _, T = read_solution_csv(next(p for p in csvs if p.name.endswith("theta0.csv")))
    assert np.max(np.abs((T - 1.5)[::-1] + (T - 1.5))) <= 1e-9


def test_sweep_lists_and_json(tmp_path):
    js = tmp_path / "sw.json"
    code = main(["sweep", "--alpha", "0.5", "1.5", "--theta", "0", "0.25", "--N", "20",
                 "--out", str(tmp_path / "o"), "--json", str(js)])
    assert code == 0
    payload = json.loads(js.read_text())
    assert len(payload["profiles"]) == 4 and "manifest" in payload


def test_sweep_rejects_singular(tmp_path, capsys):
    assert main(["sweep", "--alpha", "1", "--theta", "0", "--out", str(tmp_path / "o")]) == 2
    assert "singular" in capsys.readouterr().err
    assert not (tmp_path / "o").exists()


def test_sweep_needs_parameters(capsys):
    assert main(["sweep"]) == 2


def test_weights_classical(tmp_path):
    out = tmp_path / "w.csv"
    assert main(["weights", "--alpha", "2", "--theta", "0", "--kmax", "5", "--out", str(out)]) == 0
    k, w, *_ = read_weights_csv(out)
    np.testing.assert_array_equal(w, np.where(k == 0, -2, np.where(np.abs(k) == 1, 1, 0)))


def test_weights_symmetric(tmp_path):
    out = tmp_path / "w.csv"
    main(["weights", "--alpha", "1.5", "--theta", "0", "--kmax", "10", "--out", str(out)])
    _, w, *_ = read_weights_csv(out)
    np.testing.assert_array_equal(w, w[::-1])


def test_weights_mirror_between_runs(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["weights", "--alpha", "0.5", "--theta", "0.25", "--kmax", "10", "--out", str(a)])
    main(["weights", "--alpha", "0.5", "--theta", "-0.25", "--kmax", "10", "--out", str(b)])
    *_, sR_a = read_weights_csv(a)
    _, _, _, sL_b, _ = read_weights_csv(b)
    np.testing.assert_array_equal(sR_a, sL_b)


def test_weights_validation(capsys):
    assert main(["weights", "--alpha", "1", "--kmax", "5"]) == 2
    assert main(["weights", "--alpha", "1.5", "--kmax", "1"]) == 2


def test_verify_reduction(tmp_path, capsys):
    js = tmp_path / "v.json"
    assert main(["verify", "reduction", "--json", str(js)]) == 0
    payload = json.loads(js.read_text())
    assert payload["checks"][0]["passed"] is True
    assert "manifest" in payload
    assert capsys.readouterr().out.startswith("PASS")


def test_verify_reduction_failure_exit_code():
    assert main(["verify", "reduction", "--lambda2", "0.5"]) == 1


def test_verify_convergence(capsys):
    assert main(["verify", "convergence", "--alpha", "1.5", "--theta", "0"]) == 0


def test_verify_symmetry_single():
    assert main(["verify", "symmetry", "--alpha", "0.5", "--theta", "0.25", "--N", "32", "--gl", "0", "--gr", "1"]) == 0


def test_verify_tails_single_reduced_truncation():
    assert main(["verify", "tails", "--alpha", "1.5", "--theta", "0.25", "--K", "100000"]) == 0


def test_verify_bad_params():
    assert main(["verify", "symmetry", "--alpha", "1"]) == 2


def _profile_from_solve(tmp_path, alpha, theta):
    out = tmp_path / "solve.csv"
    assert main(["solve", "--alpha", str(alpha), "--theta", str(theta), "--N", "200",
                 "--gl", "2", "--gr", "1", "--out", str(out)]) == 0
    x, T = read_solution_csv(out)
    idx = np.arange(0, 201, 10)
    data = tmp_path / "profile.csv"
    data.write_text("x,T_obs\n" + "".join(f"{a:.17g},{b:.17g}\n" for a, b in zip(x[idx], T[idx])))
    return data


def test_fit_recovers_synthetic(tmp_path, capsys):
    data = _profile_from_solve(tmp_path, 0.35, -0.055)
    js, svg = tmp_path / "fit.json", tmp_path / "fit.svg"
    assert main(["fit", "--data", str(data), "--json", str(js), "--svg", str(svg)]) == 0
    res = json.loads(js.read_text())
    assert abs(res["alpha_star"] - 0.35) <= 0.01 and abs(res["theta_star"] + 0.055) <= 0.01
    assert {"alpha_star", "theta_star", "sse", "iterations", "converged", "manifest"} <= set(res)
    root = ET.parse(svg).getroot()
    assert len(root.findall(f"{SVG}polyline")) == 1
    assert json.loads(capsys.readouterr().out)["alpha_star"] == res["alpha_star"]


def test_fit_linear(tmp_path, capsys):
    data = tmp_path / "lin.csv"
    x = np.linspace(0, 1, 11)
    data.write_text("x,T_obs\n" + "".join(f"{a:.17g},{2 - a:.17g}\n" for a in x))
    assert main(["fit", "--data", str(data)]) == 0
    assert json.loads(capsys.readouterr().out)["alpha_star"] >= 1.9


def test_fit_unsorted(tmp_path):
    data = tmp_path / "bad.csv"
    data.write_text("x,T_obs\n0,2\n0.6,1.5\n0.4,1.4\n1,1\n")
    assert main(["fit", "--data", str(data)]) == 2


def test_fit_missing_file(tmp_path):
    assert main(["fit", "--data", str(tmp_path / "nope.csv")]) == 2


def test_fit_no_feasible_point(tmp_path, monkeypatch, capsys):
    import sys

    fitmod = sys.modules["rfbvp.fit"]
    monkeypatch.setattr(fitmod, "loss", lambda *a, **k: float("inf"))
    data = tmp_path / "p.csv"
    data.write_text("x,T_obs\n0,2\n0.5,1.5\n1,1\n")
    assert main(["fit", "--data", str(data)]) == 4


def test_verify_all_over_pinned_sweep(tmp_path):
    js = tmp_path / "all.json"
    assert main(["verify", "all", "--K", "100000", "--json", str(js)]) == 0
    checks = json.loads(js.read_text())["checks"]
    names = [c["check"] for c in checks]
    assert names.count("tails") == 19 and names.count("symmetry") == 19
    assert names.count("reduction") == 1 and names.count("convergence") == 2
    assert all(c["passed"] for c in checks)
