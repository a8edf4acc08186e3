import json
import subprocess
import sys

import numpy as np
import pytest

from gmx.bench import (
    CSV_HEADER,
    bench_timing,
    make_state,
    run_manifest,
    sweep_dicke,
    sweep_ds,
    write_csv,
)
from gmx.optim import OptimConfig
from gmx.states import save_json
from gmx.xform import gm_lower_bound_x
from helpers import ghz

CFG = OptimConfig(restarts=2, seed=9)


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "gmx.cli", *args],
        capture_output=True, text=True, timeout=600,
    )


def test_sweep_ds_row_shape_and_determinism(tmp_path):
    records = sweep_ds(3, 10, CFG)
    assert len(records) == 10
    for rec in records:
        assert rec.family == "ds"
        assert 0.0 <= rec.parameter <= 1.0
        assert np.isfinite(rec.c_x) and np.isfinite(rec.f_min)
        assert rec.c_x >= 0.0
        assert rec.c_phi is None and rec.time_phi_s is None
    again = sweep_ds(3, 10, CFG)
    assert [r.c_x for r in records] == [r.c_x for r in again]
    assert [r.f_min for r in records] == [r.f_min for r in again]

    out = tmp_path / "ds.csv"
    write_csv(records, out)
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 11
    # optional columns serialize as empty strings
    assert lines[1].split(",")[5] == ""


def test_sweep_dicke_with_phi_columns():
    records = sweep_dicke(2, [0.5, 1.65], CFG, include_phi=True)
    for rec in records:
        assert rec.c_phi is not None and rec.time_phi_s is not None
        assert abs(rec.c_phi - rec.c_x) < 1e-9  # two-qubit saturation
    assert records[0].c_x == 0.0  # below the entanglement threshold


def test_sweep_rejects_out_of_range():
    with pytest.raises(ValueError):
        sweep_ds(8, 5, CFG)
    with pytest.raises(ValueError):
        sweep_dicke(3, [-1.0], CFG)


def test_make_state_families():
    assert make_state("ds", 3, 0.5).n_qubits == 3
    assert make_state("dicke", 2, 1.0).n_qubits == 2
    with pytest.raises(ValueError):
        make_state("ghz", 3, 0.5)


def test_bench_timing_two_qubit_mixture():
    threshold = gm_lower_bound_x(make_state("ds", 2, 0.3))
    summary = bench_timing("ds", 2, 0.3, "x", reps=3, cfg=OptimConfig(restarts=1, seed=1),
                           threshold=threshold)
    assert summary.repetitions == 3
    assert summary.total_attempts >= 3
    assert summary.complete
    mn, q1, med, q3, mx = summary.five_number
    assert mn <= q1 <= med <= q3 <= mx
    assert mx < 1.0  # sub-second on any machine for two qubits
    assert len(summary.times) == 3


def test_bench_timing_budget_marks_incomplete():
    # impossible threshold forces the budget path
    summary = bench_timing("ds", 2, 0.5, "x", reps=1, cfg=OptimConfig(restarts=1, seed=2),
                           threshold=0.999, budget=0.01)
    assert not summary.complete


def test_run_manifest_keys():
    doc = run_manifest(CFG, extra={"command": "test"})
    for key in ("seed", "tol_x", "tol_fun", "restarts", "prng", "line_search", "build", "command"):
        assert key in doc


def test_cli_estimate_ghz(tmp_path):
    state_file = tmp_path / "ghz.json"
    save_json(ghz(3), state_file)
    proc = run_cli("estimate", "--state", str(state_file), "--method", "both",
                   "--restarts", "2", "--seed", "4")
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    assert doc["gm_lower_bound_x"] == pytest.approx(1.0, abs=1e-12)
    assert doc["x_heuristic"]["estimate"] == pytest.approx(1.0, abs=1e-9)
    assert doc["phi_scheme"]["estimate"] == pytest.approx(1.0, abs=1e-9)


def test_cli_sweep_writes_csv_and_manifest(tmp_path):
    out = tmp_path / "sweep.csv"
    proc = run_cli("sweep-dicke", "--n", "2", "--gamma-min", "0.5", "--gamma-max", "3.0",
                   "--points", "4", "--seed", "11", "--restarts", "2", "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 5
    manifest = json.loads((tmp_path / "sweep.manifest.json").read_text())
    assert manifest["seed"] == 11
    assert manifest["command"] == "sweep-dicke"


def test_cli_bench_outputs_summary(tmp_path):
    manifest = tmp_path / "bench.manifest.json"
    proc = run_cli("bench", "--family", "ds", "--n", "2", "--param", "0.3",
                   "--method", "x", "--reps", "2", "--seed", "3", "--out", str(manifest))
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    assert doc["repetitions"] == 2
    assert doc["five_number_s"][0] <= doc["median_s"] <= doc["five_number_s"][-1]
    recorded = json.loads(manifest.read_text())
    assert recorded["times_s"] and recorded["median_s"] == doc["median_s"]


def test_cli_verify_passes():
    proc = run_cli("verify")
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "[PASS]" in proc.stdout
    assert "[FAIL]" not in proc.stdout


def test_cli_gmx_tol_env(tmp_path):
    import os

    out = tmp_path / "s.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "gmx.cli", "sweep-ds", "--n", "2", "--points", "3",
         "--restarts", "1", "--out", str(out)],
        capture_output=True, text=True, timeout=300,
        env={**os.environ, "GMX_TOL": "1e-9"},
    )
    assert proc.returncode == 0, proc.stderr
    manifest = json.loads((tmp_path / "s.manifest.json").read_text())
    assert manifest["tol_x"] == 1e-9
    assert manifest["tol_fun"] == 1e-9
