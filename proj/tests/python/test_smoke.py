"""Smoke tests for the extension module and the command-line tool."""

import json
import math
import os
import subprocess

import pytest

import _pathspin as ps

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def test_version():
    assert ps.__version__ == "0.1.0"


def test_singlet_and_preparation():
    singlet = ps.make_singlet()
    assert abs(singlet[1] - INV_SQRT2) < 1e-12
    assert abs(singlet[2] + INV_SQRT2) < 1e-12

    phi_plus = ps.prepare_bs1_sf([1.0, 0.0])
    assert abs(abs(phi_plus[1]) - INV_SQRT2) < 1e-12
    assert abs(abs(phi_plus[2]) - INV_SQRT2) < 1e-12
    assert abs(ps.concurrence(phi_plus) - 1.0) < 1e-12

    chi_plus = ps.prepare_bs1_sf([INV_SQRT2, INV_SQRT2])
    assert ps.concurrence(chi_plus) < 1e-12


def test_correlations_and_bounds():
    phi_plus = [0.0, INV_SQRT2, INV_SQRT2, 0.0]
    assert abs(ps.correlation(phi_plus, 1.0, 0.0, spin=(0, 0, 1)) + 1.0) < 1e-12
    assert abs(ps.tsirelson_max(phi_plus) - 2.0 * math.sqrt(2.0)) < 1e-9

    theta1, theta2 = 3.0 * math.pi / 8.0, 5.0 * math.pi / 8.0
    v = ps.nri_value(
        phi_plus,
        (math.cos(theta1), math.sin(theta1), 0.0),
        (math.cos(theta2), math.sin(theta2), 0.0),
        b1=(0, 0, 1),
        b2=(0, 1, 0),
    )
    assert abs(v["s"] - 2.0 * math.sqrt(2.0)) < 1e-9

    opt = ps.optimize_settings(phi_plus, "free-spin")
    assert abs(abs(opt["s"]) - 2.0 * math.sqrt(2.0)) < 1e-6


def test_enumeration_and_sampling():
    table = ps.enumerate_noncontextual()
    assert len(table) == 16
    assert all(v in (-2, 2) for _, v in table)

    counts = ps.sample_counts((0.25, 0.25, 0.25, 0.25), seed=1, shots=1000)
    assert counts["total"] == 1000
    assert counts["n3p"] + counts["n3m"] + counts["n4p"] + counts["n4m"] == 1000

    with pytest.raises(ValueError):
        ps.sample_counts((0.25, 0.25, 0.25, 0.25), seed=1, shots=0)
    with pytest.raises(ArithmeticError):
        ps.sample_counts((0.5, 0.5, 0.5, 0.5), seed=1, shots=10)


def test_scenario_report():
    report = json.loads(
        ps.run_scenario(os.environ["PATHSPIN_FIXTURE"], seed=7, shots=2000)
    )
    assert report["seed"] == 7
    assert report["wing1_setting"] == "A"
    assert len(report["subensembles"]) == 2
    for sub in report["subensembles"]:
        assert abs(sub["concurrence"] - 1.0) < 1e-9


def run_cli(*args):
    return subprocess.run(
        [os.environ["PATHSPIN_CLI"], *args],
        capture_output=True,
        text=True,
    )


def test_cli_run_ok():
    proc = run_cli("run", os.environ["PATHSPIN_FIXTURE"], "--shots", "1000")
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    assert report["shots"] == 1000


def test_cli_enumerate():
    proc = run_cli("enumerate-hv")
    assert proc.returncode == 0
    assert "max |S| over noncontextual models = 2" in proc.stdout


def test_cli_parse_error(tmp_path):
    bad = tmp_path / "bad.apparatus"
    bad.write_text("[source]\nwing1_setting = Q\n")
    proc = run_cli("run", str(bad))
    assert proc.returncode == 2
    assert "line 2" in proc.stderr


def test_cli_validation_error(tmp_path):
    bad = tmp_path / "nobs1.apparatus"
    bad.write_text("[source]\nwing1_setting = A\n[pipeline]\nmirror\n")
    proc = run_cli("run", str(bad))
    assert proc.returncode == 3
    assert "BS1" in proc.stderr
