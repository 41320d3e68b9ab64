import os
import subprocess

import pytest

import corona

CONFIGS = os.environ.get("CORONA_CONFIGS", os.path.join(os.path.dirname(__file__), "..", "..", "configs"))
BIN = os.environ.get("CORONA_BIN")


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


@pytest.mark.skipif(BIN is None, reason="CORONA_BIN not set")
def test_exit_codes(tmp_path):
    worked = os.path.join(CONFIGS, "worked_third.json")
    assert run("check", "--config", worked).returncode == 0
    assert run("check", "--config", os.path.join(CONFIGS, "double_zero.json")).returncode == 1
    assert run("check").returncode == 2
    assert run("bogus").returncode == 2
    assert run("solve", "--config", os.path.join(CONFIGS, "missing.json")).returncode == 2

    sol = tmp_path / "w.solution.json"
    assert run("solve", "--config", worked, "--out", str(sol)).returncode == 0
    assert (tmp_path / "w.solution.report.json").exists()
    verify = run("verify", "--solution", str(sol), "--z-samples", "6", "--s-samples", "4")
    assert verify.returncode == 0, verify.stdout + verify.stderr
    assert "verdict: pass" in verify.stdout

    csv = tmp_path / "w.csv"
    assert run("eval-grid", "--solution", str(sol), "--out", str(csv), "--z-samples", "3", "--s-samples", "2").returncode == 0
    lines = csv.read_bytes().split(b"\n")
    assert lines[0] == b"re_z,im_z,s1,k,re_g,im_g,abs_phi"
    assert len(lines) == 1 + 9 * 2 * 2 + 1

    bad = run("verify", "--solution", os.path.join(CONFIGS, "corrupted.solution.json"))
    assert bad.returncode == 1
    assert "FAIL residual" in bad.stdout


def test_in_process_cli():
    code, out, err = corona.run_cli(["check", "--config", os.path.join(CONFIGS, "common_zero.json")])
    assert code == 1
    assert "NOT certified" in out
    code, _, err = corona.run_cli(["verify"])
    assert code == 2
