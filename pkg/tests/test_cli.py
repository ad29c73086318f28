"""CLI surface: argument contract, exit codes, file formats, determinism."""

import json

import numpy as np
import pytest

from suitachain import Disc, Ellipse, save_domain
from suitachain.cli import main


@pytest.fixture()
def disc_spec(tmp_path):
    path = tmp_path / "disc.json"
    save_domain(Disc(0.0, 1.0), path)
    return str(path)


@pytest.fixture()
def ellipse_spec(tmp_path):
    path = tmp_path / "ellipse.json"
    save_domain(Ellipse(0.0, 2.0, 1.0), path)
    return str(path)


def read_csv_rows(path):
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    return lines[0].split(","), [l.split(",") for l in lines[1:]]


# ---------------------------------------------------------------------------
# analyze


def test_analyze_writes_reports(disc_spec, tmp_path):
    out = tmp_path / "out"
    code = main(["analyze", "--spec", disc_spec, "--points", "0.5,0.1-0.2j",
                 "--t-grid=-2.5,-0.5,4", "--out", str(out)])
    assert code == 0
    for i in (0, 1):
        doc = json.loads((out / f"chain_point_{i:02d}.json").read_text())
        # flat layout: chain fields at top level next to schema and audit
        assert doc["schema"] == "suitachain-chain/1"
        assert doc["verdict"] in ("disc-centered-at-z",
                                  "biholomorphic-to-disc-evidence",
                                  "no-equality", "inconclusive")
        assert set(doc["values"]) == {"delta_inv_sq", "pi_bergman", "cap_sq",
                                      "f_t1", "f_t2", "pi_over_vol"}
        assert doc["t1"] == -2.5 and doc["t2"] == -0.5
        assert "config_hash" in doc["audit"] and "version" in doc["audit"]
        csv = (out / f"profile_point_{i:02d}.csv").read_text().splitlines()
        header = [l for l in csv if not l.startswith("#")][0]
        assert header == "t,vol,sigma,flux,f,dvol_dt,vol_mc,vol_mc_stderr"
    # off-center disc point must close the Suita link
    doc = json.loads((out / "chain_point_00.json").read_text())
    assert doc["verdict"] == "biholomorphic-to-disc-evidence"


def test_analyze_deterministic(disc_spec, tmp_path):
    outs = []
    for sub in ("a", "b"):
        out = tmp_path / sub
        assert main(["analyze", "--spec", disc_spec, "--points", "0.5",
                     "--t-grid=-2.0,-1.0,2", "--out", str(out)]) == 0
        outs.append((out / "chain_point_00.json").read_bytes()
                    + (out / "profile_point_00.csv").read_bytes())
    assert outs[0] == outs[1]


def test_analyze_out_env_fallback(disc_spec, tmp_path, monkeypatch):
    target = tmp_path / "env_out"
    monkeypatch.setenv("SUITACHAIN_OUT", str(target))
    assert main(["analyze", "--spec", disc_spec, "--points", "0.0",
                 "--t-grid=-2.0,-1.0,2"]) == 0
    assert (target / "chain_point_00.json").exists()


# ---------------------------------------------------------------------------
# exit codes


def test_malformed_spec_file_is_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = main(["analyze", "--spec", str(bad), "--points", "0.0"])
    assert code == 2
    assert "spec error" in capsys.readouterr().err


def test_unknown_kind_is_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "heptagon"}')
    assert main(["analyze", "--spec", str(bad), "--points", "0.0"]) == 2


def test_missing_spec_is_exit_2(capsys):
    assert main(["analyze", "--points", "0.0"]) == 2
    assert "spec" in capsys.readouterr().err


def test_empty_points_is_exit_2(disc_spec):
    assert main(["analyze", "--spec", disc_spec, "--points", ","]) == 2


def test_unparsable_point_is_exit_2(disc_spec):
    assert main(["analyze", "--spec", disc_spec, "--points", "0.5,zebra"]) == 2


def test_bad_t_grid_is_exit_2(disc_spec):
    for grid in ("-1.0,-2.0,4", "-2.0,0.0,4", "-2.0,-1.0,1", "oops"):
        assert main(["analyze", "--spec", disc_spec, "--points", "0.0",
                     f"--t-grid={grid}"]) == 2


def test_outside_point_is_solver_fault(disc_spec, tmp_path, capsys):
    code = main(["analyze", "--spec", disc_spec, "--points", "1.5",
                 "--out", str(tmp_path / "o")])
    assert code == 3
    assert "solver fault" in capsys.readouterr().err


def test_degraded_validate_is_exit_5(tmp_path, capsys):
    # 16 collocation nodes cannot meet the defect tolerance; validate must
    # fail loudly and name the failing check
    code = main(["validate", "--collocation", "16", "--out", str(tmp_path / "v")])
    assert code == 5
    captured = capsys.readouterr()
    assert "validate failed: boundary-defect" in captured.err
    assert "FAIL boundary-defect" in captured.out
    report = json.loads((tmp_path / "v" / "validate_report.json").read_text())
    assert report["schema"] == "suitachain-validate/1"
    assert report["passed"] is False
    by_name = {c["name"]: c for c in report["checks"]}
    assert by_name["boundary-defect"]["passed"] is False
    assert by_name["multidim-closed-forms"]["ndim"] == 2
    # closed-form checks are solver-independent and still pass
    assert by_name["scale-covariance"]["passed"] is True


# ---------------------------------------------------------------------------
# sweep


def test_sweep_disc_radial(disc_spec, tmp_path):
    out = tmp_path / "sweep"
    code = main(["sweep", "--spec", disc_spec,
                 "--points", "0.0,0.15,0.3,0.45,0.6",
                 "--t-grid=-2.0,-1.0,2", "--out", str(out)])
    assert code == 0
    header, rows = read_csv_rows(out / "sweep.csv")
    assert header[:4] == ["point_re", "point_im", "t1", "t2"]
    assert header[-1] == "verdict"
    assert len(rows) == 5  # one row per point on a two-level grid
    for row in rows:
        pi_k, cap_sq = float(row[5]), float(row[6])
        assert pi_k == pytest.approx(cap_sq, rel=1e-8)  # Suita equality on a disc
        assert row[-1] == ("disc-centered-at-z" if float(row[0]) == 0.0
                           else "biholomorphic-to-disc-evidence")


def test_sweep_level_grid_f_monotone(ellipse_spec, tmp_path):
    out = tmp_path / "sweep"
    code = main(["sweep", "--spec", ellipse_spec, "--points", "0.0",
                 "--t-grid=-3.0,-0.3,20", "--out", str(out)])
    assert code == 0
    header, rows = read_csv_rows(out / "sweep.csv")
    assert len(rows) == 19  # adjacent level pairs
    f_t1 = np.array([float(r[header.index("f_t1")]) for r in rows])
    assert np.all(np.diff(f_t1) <= 1e-12)
    t1 = np.array([float(r[2]) for r in rows])
    assert np.all(np.diff(t1) > 0)


def test_sweep_empty_points_is_exit_2(disc_spec):
    assert main(["sweep", "--spec", disc_spec, "--points", " "]) == 2
