import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from fracgeo.cli import main

SRC_DIR = str(Path(__file__).resolve().parent.parent / "src")


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_keyed_output(text):
    values = {}
    for line in text.splitlines():
        if " = " in line:
            key, _, raw = line.partition(" = ")
            values[key.strip()] = raw.strip()
    return values


class TestIntegrateCommand:
    def test_fractional_value(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "integrate", "--kind", "rl", "--alpha", "0.5", "--f", "1", "--a", "0", "--t", "1",
        )
        assert code == 0
        values = parse_keyed_output(out)
        assert float(values["value"]) == pytest.approx(1.128379167, rel=1e-9)
        assert "error_estimate" in values and "panels" in values

    def test_ten_significant_digits(self, capsys):
        code, out, _ = run_cli(
            capsys, "integrate", "--kind", "riemann", "--f", "exp(t)", "--a", "0", "--b", "1"
        )
        assert code == 0
        printed = parse_keyed_output(out)["value"]
        assert printed == format(float(printed), ".10g")

    def test_usage_error_negative_alpha(self, capsys):
        code, _, err = run_cli(
            capsys, "integrate", "--kind", "rl", "--alpha", "-1", "--f", "1", "--t", "1"
        )
        assert code == 2
        assert "--alpha" in err
        assert "usage:" in err

    def test_usage_error_missing_b(self, capsys):
        code, _, err = run_cli(capsys, "integrate", "--kind", "riemann", "--f", "t")
        assert code == 2

    def test_math_error_exit_code(self, capsys):
        # log(t) is undefined on part of [0, 1]; evaluation fails -> exit 1
        code, _, err = run_cli(
            capsys, "integrate", "--kind", "riemann", "--f", "log(0-t)", "--a", "0", "--b", "1"
        )
        assert code == 1
        assert "error:" in err

    def test_syntax_error_is_usage_error(self, capsys):
        code, _, err = run_cli(
            capsys, "integrate", "--kind", "riemann", "--f", "t^^2", "--a", "0", "--b", "1"
        )
        assert code == 2
        assert "--f" in err and "byte offset 2" in err


class TestDeriveCommand:
    def test_fractal_classical_limit(self, capsys):
        code, out, _ = run_cli(
            capsys, "derive", "--kind", "fractal", "--alpha", "1", "--f", "t^2", "--t", "3"
        )
        assert code == 0
        values = parse_keyed_output(out)
        assert float(values["value"]) == pytest.approx(6.0, rel=1e-8)
        assert values["converged"] == "true"

    def test_flat_generator_exits_one(self, capsys):
        code, _, err = run_cli(
            capsys, "derive", "--kind", "stieltjes", "--f", "t", "--g", "0*t", "--t", "1"
        )
        assert code == 1


class TestSceneCommand:
    def test_human_summary(self, capsys):
        code, out, _ = run_cli(
            capsys, "scene", "--f", "t", "--g", "t", "--a", "0", "--b", "1", "--n", "64"
        )
        assert code == 0
        values = parse_keyed_output(out)
        assert float(values["area_ty"]) == pytest.approx(0.5, rel=1e-5)

    def test_json_output(self, tmp_path, capsys):
        out_path = tmp_path / "scene.json"
        code, _, _ = run_cli(
            capsys,
            "scene", "--f", "t", "--g", "t^2", "--a", "0", "--b", "1",
            "--n", "16", "--out", str(out_path),
        )
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert doc["meta"]["n"] == 16
        assert len(doc["fence"]) == 17

    def test_obj_output(self, tmp_path, capsys):
        out_path = tmp_path / "scene.obj"
        code, _, _ = run_cli(
            capsys,
            "scene", "--f", "t", "--g", "t", "--a", "0", "--b", "1",
            "--n", "8", "--out", str(out_path),
        )
        assert code == 0
        data = out_path.read_bytes()
        assert b"\r" not in data
        assert data.startswith(b"o fence\n")

    def test_csv_extension_rejected_for_scene(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys,
            "scene", "--f", "t", "--g", "t", "--a", "0", "--b", "1",
            "--out", str(tmp_path / "scene.csv"),
        )
        assert code == 2
        assert "--out" in err


class TestAnimateCommand:
    def test_csv_output(self, tmp_path, capsys):
        out_path = tmp_path / "areas.csv"
        code, _, _ = run_cli(
            capsys,
            "animate", "--f", "1", "--alpha", "1", "--a", "0", "--b", "1",
            "--frames", "4", "--n", "32", "--tol-rel", "1e-6",
            "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "frame,t,area_ty,area_tau_y,rl_value"
        assert len(lines) == 5

    def test_byte_identical_reruns(self, tmp_path, capsys):
        args = (
            "animate", "--f", "t", "--alpha", "0.5", "--a", "0", "--b", "1",
            "--frames", "3", "--n", "16", "--tol-rel", "1e-6",
        )
        first = tmp_path / "one.json"
        second = tmp_path / "two.json"
        assert run_cli(capsys, *args, "--out", str(first))[0] == 0
        assert run_cli(capsys, *args, "--out", str(second))[0] == 0
        assert first.read_bytes() == second.read_bytes()


class TestVerifyCommand:
    def test_quick_table(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--quick")
        assert code == 0
        assert "formulation equivalence" in out
        assert "result: PASS" in out


class TestSubprocessEntry:
    def test_module_invocation(self):
        env = dict(os.environ, PYTHONPATH=SRC_DIR)
        completed = subprocess.run(
            [sys.executable, "-m", "fracgeo", "derive", "--kind", "classical",
             "--f", "t^2", "--t", "3"],
            capture_output=True,
            text=True,
            env=env,
        )
        assert completed.returncode == 0
        assert "value = 6" in completed.stdout

    def test_unknown_flag_exits_two(self):
        env = dict(os.environ, PYTHONPATH=SRC_DIR)
        completed = subprocess.run(
            [sys.executable, "-m", "fracgeo", "integrate", "--bogus"],
            capture_output=True,
            text=True,
            env=env,
        )
        assert completed.returncode == 2
