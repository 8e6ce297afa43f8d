"""
Tests for the gaussfactor command line
File: test_cli.py
"""

import json
import os
import sys

import pytest

# Add the package directory to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from gaussfactor.config import settings
from gaussfactor.main import run

N_FLAGSHIP = "157573"
N_LARGE = "1062885837863046188098307"
P_LARGE = "790645490053"


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_factor_pattern(capsys):
    code, out, _ = invoke(capsys, "factor", "--n", N_FLAGSHIP, "--m", "10")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "ell,re,im,magnitude,is_factor"
    assert len(lines) == 398
    assert "17,1.000000000000,0.000000000000,1.000000000000,true" in lines


def test_factor_output_is_reproducible(capsys):
    _, first, _ = invoke(capsys, "factor", "--n", N_FLAGSHIP, "--m", "10", "--workers", "1")
    _, second, _ = invoke(capsys, "factor", "--n", N_FLAGSHIP, "--m", "10", "--workers", "4")
    assert first == second


def test_factor_report(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, _, _ = invoke(capsys, "factor", "--n", N_FLAGSHIP, "--m", "10", "--report", str(report_path))
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["detected"] == [13, 17, 23, 31, 221, 299, 391]
    assert report["false_positives"] == []


def test_factor_damped_variant(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, out, _ = invoke(
        capsys, "factor", "--n", N_FLAGSHIP, "--m", "10",
        "--variant", "damped", "--gamma", "0.2", "--report", str(report_path),
    )
    assert code == 0
    assert "17,0.445" in out
    assert json.loads(report_path.read_text())["missed"] == []


def test_factor_json_to_file(capsys, tmp_path):
    out_path = tmp_path / "pattern.json"
    code, out, _ = invoke(capsys, "factor", "--n", "15", "--m", "5", "--format", "json", "--out", str(out_path))
    assert code == 0
    assert out == ""
    assert json.loads(out_path.read_text())["ell"] == [1, 2, 3, 4]


def test_simulate_trace(capsys):
    code, out, _ = invoke(capsys, "simulate", "--n", N_FLAGSHIP, "--ell", "18", "--m", "10")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "m,s_m"
    assert len(lines) == 12
    assert lines[4] == "3,-1.000000000000"


def test_simulate_damped_trace(capsys):
    code, out, _ = invoke(
        capsys, "simulate", "--n", N_FLAGSHIP, "--ell", "17", "--m", "10", "--damped", "--gamma", "0.2",
    )
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "m,s_m,damped_s_m"
    assert lines[-1] == "10,1.000000000000,0.135335283237"


def test_neighborhood_scan(capsys):
    code, out, _ = invoke(
        capsys, "neighborhood", "--n", N_LARGE, "--center", P_LARGE, "--halfwidth", "10", "--m", "200",
    )
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 22
    assert f"{P_LARGE},1.000000000000,0.000000000000,1.000000000000,true" in lines


def test_neighborhood_report_beyond_float_range(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, _, _ = invoke(
        capsys, "neighborhood", "--n", str(10**400 + 1), "--center", "100", "--halfwidth", "5",
        "--m", "4", "--report", str(report_path),
    )
    report = json.loads(report_path.read_text())
    assert code == 0
    assert report["missed"] == []
    assert report["resource_estimate"] == pytest.approx(1e200, rel=1e-9)


def test_neighborhood_report_beyond_sqrt_range(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, _, _ = invoke(
        capsys, "neighborhood", "--n", str(10**700), "--center", "100", "--halfwidth", "5",
        "--m", "4", "--report", str(report_path),
    )
    assert code == 0
    assert json.loads(report_path.read_text())["resource_estimate"] is None


def test_contrast_curve(capsys):
    code, out, _ = invoke(capsys, "contrast", "--n", N_FLAGSHIP, "--m-values", "10,2")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "M,V"
    assert [line.split(",")[0] for line in lines[1:]] == ["2", "10"]
    assert float(lines[2].split(",")[1]) > float(lines[1].split(",")[1])


def test_verify_equivalence(capsys):
    code, out, _ = invoke(capsys, "verify", "equivalence")
    payload = json.loads(out)
    assert code == 0
    assert payload["passed"] is True
    assert payload["max_deviation"] < 1e-9


def test_verify_damping(capsys):
    code, out, _ = invoke(capsys, "verify", "damping", "--gamma", "0.2")
    payload = json.loads(out)
    assert code == 0
    assert payload["details"]["decay_ratio"] == pytest.approx(0.1353352832, abs=1e-9)


@pytest.mark.parametrize("variant", ["C", "damped", "echo"])
def test_contrast_curve_variants(capsys, variant):
    code, out, _ = invoke(
        capsys, "contrast", "--n", N_FLAGSHIP, "--m-values", "2,10", "--variant", variant, "--gamma", "0.2",
    )
    lines = out.splitlines()
    assert code == 0
    assert [line.split(",")[0] for line in lines[1:]] == ["2", "10"]
    assert all(0.0 <= float(line.split(",")[1]) <= 1.0 for line in lines[1:])


def test_verify_damping_picks_divisor_of_n(capsys):
    code, out, _ = invoke(capsys, "verify", "damping", "--n", "1000003", "--gamma", "0.2")
    payload = json.loads(out)
    assert code == 0
    assert payload["passed"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["factor", "--n", "abc", "--m", "10"],
        ["factor", "--n", "1", "--m", "10"],
        ["factor", "--n", N_FLAGSHIP, "--m", "-1"],
        ["factor", "--n", N_FLAGSHIP, "--m", "10", "--variant", "B"],
        ["simulate", "--n", N_FLAGSHIP, "--ell", "0", "--m", "10"],
        ["simulate", "--n", N_FLAGSHIP, "--ell", "18", "--m", "10", "--epsilon", "0.5"],
        ["neighborhood", "--n", N_FLAGSHIP, "--center", "5", "--halfwidth", "10", "--m", "10"],
        ["contrast", "--n", N_FLAGSHIP, "--m-values", "0,2"],
        ["verify", "bogus"],
        ["verify", "telescoping", "--n", N_FLAGSHIP],
        ["verify", "telescoping", "--m", "5"],
        ["verify", "equivalence", "--gamma", "0.2"],
        ["contrast", "--n", N_FLAGSHIP, "--m-values", "2,10", "--variant", "B"],
    ],
)
def test_invalid_input_exit_code(capsys, argv):
    code, out, _ = invoke(capsys, *argv)
    assert code == 2
    assert out == ""


def test_refused_scan_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(settings, "MAX_FULL_SCAN_N0", 100)
    code, out, err = invoke(capsys, "factor", "--n", N_FLAGSHIP, "--m", "10")
    assert code == 3
    assert out == ""
    assert "error:" in err

    code, out, _ = invoke(capsys, "factor", "--n", N_FLAGSHIP, "--m", "10", "--force")
    assert code == 0
    assert len(out.splitlines()) == 398


def test_version(capsys):
    code, out, _ = invoke(capsys, "--version")
    assert code == 0
    assert settings.VERSION in out
