"""Command-line interface: formats, exit codes, determinism, round trips."""

import json
from fractions import Fraction

import pytest

from fockmin import cli, fock


def run_capture(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBlockCommand:
    def test_printed_matrix(self, capsys):
        code, out, _ = run_capture(capsys, ["block", "--j", "5", "--format", "json"])
        assert code == 0
        data = json.loads(out)
        # entry (0,0) equals (3/8)*45 as printed
        assert Fraction(data["entries"][0][0]) == Fraction(135, 8)
        assert Fraction(data["entries"][0][1]) == Fraction(-105, 8)

    def test_reduced_block_marks_border(self, capsys):
        code, out, _ = run_capture(
            capsys, ["block", "--j", "4", "--reduced", "--format", "json"]
        )
        assert code == 0
        data = json.loads(out)
        assert data["entries"][0][2].endswith("·√2")

    def test_pretty_output(self, capsys):
        code, out, _ = run_capture(capsys, ["block", "--j", "1"])
        assert code == 0
        assert "-1/8" in out


class TestCertifyCommand:
    def test_pass_lines_and_exit_code(self, capsys):
        code, out, _ = run_capture(capsys, ["certify", "--max-j", "40"])
        assert code == 0
        lines = [l for l in out.strip().split("\n")]
        assert len(lines) == 35  # j = 6..40
        assert all(" pass " in l for l in lines)


class TestCatalogRoundTrip:
    def test_catalog_then_functionals(self, capsys, tmp_path):
        path = str(tmp_path / "psi.json")
        code, _, _ = run_capture(
            capsys,
            ["catalog", "--wave", "psi_b", "--b", "1.0", "--trunc", "64", "--out", path],
        )
        assert code == 0
        code, out, _ = run_capture(
            capsys, ["functionals", "--in", path, "--mu", "0.3", "--format", "json"]
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["M"] == pytest.approx(1.0, abs=1e-12)
        assert abs(complex(*rep["Q"])) <= 1e-12
        assert rep["G"] == pytest.approx(0.95, abs=1e-12)

    def test_zeros_subcommand(self, capsys, tmp_path):
        path = str(tmp_path / "psi.json")
        run_capture(
            capsys,
            ["catalog", "--wave", "psi_b", "--b", "1.0", "--trunc", "64", "--out", path],
        )
        code, out, _ = run_capture(
            capsys, ["zeros", "--in", path, "--R", "2.0", "--format", "json"]
        )
        assert code == 0
        data = json.loads(out)
        assert data["count"] == 1
        assert data["roots"][0][0] == pytest.approx(1.5, abs=1e-9)


class TestMinimizeCommand:
    def test_minimize_json(self, capsys):
        code, out, _ = run_capture(
            capsys,
            [
                "minimize",
                "--mu",
                "0.8",
                "--trunc",
                "16",
                "--restarts",
                "2",
                "--format",
                "json",
            ],
        )
        assert code == 0
        data = json.loads(out)
        assert data["class"] == "phi0"
        assert data["G"] == pytest.approx(1.0, abs=1e-8)

    def test_scan_csv_deterministic(self, capsys, tmp_path):
        argv = [
            "scan",
            "--from",
            "0.6",
            "--to",
            "0.8",
            "--step",
            "0.1",
            "--trunc",
            "16",
            "--restarts",
            "2",
        ]
        code, out1, _ = run_capture(capsys, argv)
        assert code == 0
        code, out2, _ = run_capture(capsys, argv)
        assert out1 == out2
        lines = out1.strip().split("\n")
        assert lines[0].startswith("mu,G_min")
        assert len(lines) == 4

    def test_semiclassical_pretty(self, capsys):
        code, out, _ = run_capture(
            capsys, ["semiclassical", "--Na", "12.5", "--h", "0.4"]
        )
        assert code == 0
        assert "regime" in out


class TestErrorPaths:
    def test_usage_error_exits_one(self, capsys):
        assert cli.run(["block"]) == 1
        assert cli.run(["no-such-command"]) == 1
        assert cli.run([]) == 1

    def test_unknown_flag_rejected(self, capsys):
        assert cli.run(["block", "--j", "3", "--bogus"]) == 1

    def test_bad_mu_is_usage_error(self, capsys):
        assert cli.run(["minimize", "--mu", "-1.0", "--trunc", "16"]) == 1

    def test_bad_coefficient_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"truncation": 2, "coeffs": [[1, 0]]}')
        assert cli.run(["functionals", "--in", str(path), "--mu", "0.5"]) == 1
