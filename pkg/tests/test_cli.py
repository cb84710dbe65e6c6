import math
import re
import subprocess
import sys

import numpy as np
import pytest

from lgbeams import fidelity
from lgbeams.cli import main
from lgbeams.fileio import read_field, read_pgm


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def eval_file(capsys, tmp_path, l, p, name="mode.lgf", n=128, **extra):
    path = tmp_path / name
    argv = ["eval", "--l", str(l), "--p", str(p), "--k", "2", "--b", "1",
            "--z", "0", "--n", str(n), "--out", str(path)]
    for key, value in extra.items():
        argv += [f"--{key}", str(value)]
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return path, out


def parse_kv(out):
    return dict(pair.split("=") for pair in re.findall(r"\S+=\S+", out))


class TestEval:
    def test_writes_field_and_reports_norm_and_oam(self, capsys, tmp_path):
        path, out = eval_file(capsys, tmp_path, 1, 0, n=256)
        values = parse_kv(out)
        assert abs(float(values["norm"]) - 1.0) < 1e-6
        assert abs(float(values["oam"]) - 1.0) < 1e-6
        assert read_field(path).grid.n == 256

    def test_fundamental_has_zero_oam(self, capsys, tmp_path):
        _, out = eval_file(capsys, tmp_path, 0, 0)
        assert abs(float(parse_kv(out)["oam"])) < 1e-8

    def test_missing_out_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["eval", "--l", "0", "--p", "0", "--k", "2", "--b", "1"])
        assert info.value.code == 2

    def test_bad_params_exit_2(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "eval", "--l", "0", "--p", "0",
                               "--k", "-2", "--b", "1",
                               "--out", str(tmp_path / "x.lgf"))
        assert code == 2
        assert "wavenumber" in err


class TestPropagate:
    def test_zero_step_round_trip(self, capsys, tmp_path):
        src, _ = eval_file(capsys, tmp_path, 1, 0)
        dst = tmp_path / "out.lgf"
        code, out, _ = run_cli(capsys, "propagate", "--in", str(src),
                               "--dz", "0", "--out", str(dst))
        assert code == 0
        assert fidelity(read_field(dst), read_field(src)) >= 1.0 - 1e-12

    def test_reports_on_axis_ratio(self, capsys, tmp_path):
        src, _ = eval_file(capsys, tmp_path, 0, 0, n=256)
        dst = tmp_path / "out.lgf"
        code, out, _ = run_cli(capsys, "propagate", "--in", str(src),
                               "--dz", "1", "--out", str(dst))
        assert code == 0
        values = parse_kv(out)
        assert abs(float(values["norm_out"]) - float(values["norm_in"])) < 1e-9
        assert abs(float(values["on_axis_ratio"]) - 1 / math.sqrt(2)) < 1e-4

    def test_steps_compose(self, capsys, tmp_path):
        src, _ = eval_file(capsys, tmp_path, 0, 0, n=256)
        one, two = tmp_path / "one.lgf", tmp_path / "two.lgf"
        run_cli(capsys, "propagate", "--in", str(src), "--dz", "1.0",
                "--out", str(one))
        run_cli(capsys, "propagate", "--in", str(src), "--dz", "0.5",
                "--steps", "2", "--out", str(two))
        assert np.max(np.abs(read_field(one).samples
                             - read_field(two).samples)) < 1e-10

    def test_guard_exit_code(self, capsys, tmp_path):
        src, _ = eval_file(capsys, tmp_path, 0, 0, n=64, extent=2.0)
        code, _, err = run_cli(capsys, "propagate", "--in", str(src),
                               "--dz", "0.5", "--out", str(tmp_path / "o.lgf"))
        assert code == 4
        assert "edge" in err

    def test_missing_input_exit_3(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "propagate", "--in",
                               str(tmp_path / "absent.lgf"), "--dz", "1",
                               "--out", str(tmp_path / "o.lgf"))
        assert code == 3


class TestDecompose:
    def test_single_mode_dominates(self, capsys, tmp_path):
        src, _ = eval_file(capsys, tmp_path, 1, 0)
        code, out, _ = run_cli(capsys, "decompose", "--in", str(src),
                               "--lmax", "2", "--pmax", "2")
        assert code == 0
        rows = {}
        for line in out.splitlines():
            m = re.match(r"\s*(-?\d+)\s+(\d+)\s+(\S+)\s+(\S+)\s+(\S+)$", line)
            if m:
                rows[(int(m.group(1)), int(m.group(2)))] = float(m.group(5))
        assert rows[(1, 0)] >= 0.999
        assert all(v <= 1e-6 for key, v in rows.items() if key != (1, 0))
        assert "oam_mean=" in out
        assert abs(float(parse_kv(out)["oam_mean"]) - 1.0) < 1e-6

    def test_csv_export(self, capsys, tmp_path):
        src, _ = eval_file(capsys, tmp_path, 0, 0)
        csv_path = tmp_path / "spec.csv"
        code, _, _ = run_cli(capsys, "decompose", "--in", str(src),
                             "--lmax", "1", "--pmax", "1",
                             "--csv", str(csv_path))
        assert code == 0
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "l,p,re,im,power"
        assert len(lines) == 1 + 3 * 2

    def test_negative_window_exit_2(self, capsys, tmp_path):
        src, _ = eval_file(capsys, tmp_path, 0, 0)
        code, _, _ = run_cli(capsys, "decompose", "--in", str(src),
                             "--lmax", "-1", "--pmax", "2")
        assert code == 2


class TestRender:
    def test_vortex_intensity_ring(self, capsys, tmp_path):
        src, _ = eval_file(capsys, tmp_path, 1, 0)
        out = tmp_path / "img.pgm"
        code, _, _ = run_cli(capsys, "render", "--in", str(src),
                             "--what", "intensity", "--out", str(out))
        assert code == 0
        img = read_pgm(out)
        n = img.shape[0]
        # cell-centered grid: the axis falls between the four central
        # pixels, which sit in the dark vortex core
        core = int(img[n // 2 - 1:n // 2 + 1, n // 2 - 1:n // 2 + 1].max())
        assert core < 0.05 * 65535
        assert img.max() == 65535                # bright ring

    def test_phase_cycle_count(self, capsys, tmp_path):
        src, _ = eval_file(capsys, tmp_path, 2, 0)
        out = tmp_path / "phase.pgm"
        code, _, _ = run_cli(capsys, "render", "--in", str(src),
                             "--what", "phase", "--out", str(out))
        assert code == 0
        from test_fileio import _count_cycles
        assert _count_cycles(read_pgm(out)) == 2

    def test_requires_pgm_suffix(self, capsys, tmp_path):
        src, _ = eval_file(capsys, tmp_path, 0, 0)
        code, _, err = run_cli(capsys, "render", "--in", str(src),
                               "--what", "phase", "--out",
                               str(tmp_path / "img.png"))
        assert code == 2


SMALL_RIG = ["--n", "96", "--lmax", "1", "--pmax", "1"]


class TestVerify:
    def test_annihilation_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "annihilation", *SMALL_RIG)
        assert code == 0
        assert "pass" in out and "FAIL" not in out

    def test_indexmap_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "indexmap", *SMALL_RIG)
        assert code == 0
        assert "6/6 checks passed" in out  # (2 lmax + 1)(pmax + 1) rows

    def test_tables_are_deterministic(self, capsys):
        _, first, _ = run_cli(capsys, "verify", "discrepancy", *SMALL_RIG)
        _, second, _ = run_cli(capsys, "verify", "discrepancy", *SMALL_RIG)
        assert first == second

    def test_all_runs_every_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "all", "--n", "128",
                               "--lmax", "1", "--pmax", "1")
        assert code == 0
        assert out.count("suite:") == 11

    def test_failing_suite_exits_1(self, capsys):
        # a 16-sample grid cannot resolve the mode window to 1e-6
        code, out, _ = run_cli(capsys, "verify", "orthonormality",
                               "--n", "16", "--lmax", "3", "--pmax", "3")
        assert code == 1
        assert "FAIL" in out

    def test_unknown_suite_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["verify", "spectrogram"])
        assert info.value.code == 2


def test_console_entry_point(tmp_path):
    out = tmp_path / "m.lgf"
    proc = subprocess.run(
        [sys.executable, "-m", "lgbeams.cli", "eval", "--l", "0", "--p", "0",
         "--k", "2", "--b", "1", "--n", "64", "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "norm=" in proc.stdout
    assert out.exists()
