import json
import math

import numpy as np
import pytest

from periframe import FourierSeq, save_fourier
from periframe.cli import main
from conftest import random_trig_poly


def run_cli(args):
    return main(list(args))


class TestUcTable:
    def test_csv_columns_and_values(self, tmp_path):
        out = tmp_path / "table.csv"
        code = run_cli(["--out", str(out), "uc-table", "--a", "100,1000", "--j", "10",
                        "--target", "wavelet"])
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "a,j,target,uc,var_a,var_f,norm_sq"
        assert len(lines) == 3
        uc1 = float(lines[1].split(",")[3])
        uc2 = float(lines[2].split(",")[3])
        assert uc1 == pytest.approx(0.500113046, abs=1e-8)
        assert uc2 == pytest.approx(0.500011364, abs=1e-8)

    def test_large_level_cells(self, tmp_path):
        out = tmp_path / "big.csv"
        code = run_cli(["--out", str(out), "uc-table", "--a", "1.1",
                        "--j", "1000000,2000000", "--target", "wavelet"])
        assert code == 0
        rows = out.read_text().strip().split("\n")[1:]
        ucs = [float(r.split(",")[3]) for r in rows]
        assert ucs[0] == pytest.approx(1.497, abs=2e-3)
        assert ucs[1] == pytest.approx(1.498, abs=2e-3)

    def test_json_format(self, tmp_path):
        out = tmp_path / "table.json"
        code = run_cli(["--format", "json", "--out", str(out), "uc-table",
                        "--a", "2", "--j", "5", "--target", "scaling"])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload[0]["a"] == 2.0 and payload[0]["j"] == 5
        assert set(payload[0]) >= {"uc", "var_a", "var_f", "tau", "norm_sq"}

    def test_bit_stable_output(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["uc-table", "--a", "1.5,2,3", "--j", "2,6,11", "--target", "wavelet"]
        assert run_cli(["--out", str(out1)] + args) == 0
        assert run_cli(["--out", str(out2), "--threads", "3"] + args) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_validation_exit_codes(self, tmp_path):
        assert run_cli(["uc-table", "--a", "0.5", "--j", "3"]) == 1
        assert run_cli(["uc-table", "--a", "2", "--j", ""]) == 1
        assert run_cli(["uc-table", "--a", "2", "--j", "2.5"]) == 1

    def test_unwritable_path_exit_two(self):
        assert run_cli(["--out", "/nonexistent-dir/t.csv", "uc-table",
                        "--a", "2", "--j", "3"]) == 2

    def test_epsilon_flag_barely_moves_uc(self, tmp_path):
        outs = []
        for eps, name in (("1e-16", "t1.csv"), ("1e-18", "t2.csv")):
            out = tmp_path / name
            assert run_cli(["--epsilon", eps, "--out", str(out), "uc-table",
                            "--a", "2", "--j", "1000", "--target", "wavelet"]) == 0
            outs.append(float(out.read_text().strip().split("\n")[1].split(",")[3]))
        assert abs(outs[0] - outs[1]) / outs[0] < 1e-9


class TestVerify:
    def test_clean_run_exits_zero(self, capsys):
        assert run_cli(["verify", "--a", "2", "--jmax", "8", "--tol", "1e-9"]) == 0
        assert "OK" in capsys.readouterr().out

    def test_invalid_parameter_exits_one(self):
        assert run_cli(["verify", "--a", "1.0", "--jmax", "4"]) == 1

    def test_injected_defect_exits_three(self, capsys):
        assert run_cli(["verify", "--a", "2", "--jmax", "3", "--tol", "1e-9",
                        "--inject-defect", "1e-6"]) == 3
        assert "FAIL" in capsys.readouterr().out


class TestTransform:
    def test_analyze_writes_decomposition(self, tmp_path, rng):
        f = random_trig_poly(rng, 8)
        src = tmp_path / "sig.json"
        save_fourier(f, src)
        out = tmp_path / "deco.json"
        code = run_cli(["--out", str(out), "transform", "--input", str(src),
                        "--a", "2", "--J", "6", "--mode", "analyze"])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["J"] == 6 and len(payload["levels"]) == 6
        assert len(payload["levels"][3]["values"]) == 8

    def test_roundtrip_reports_error(self, tmp_path, rng, capsys):
        f = random_trig_poly(rng, 16)
        src = tmp_path / "sig.json"
        save_fourier(f, src)
        out = tmp_path / "deco.json"
        code = run_cli(["--out", str(out), "transform", "--input", str(src),
                        "--a", "2", "--J", "10", "--mode", "roundtrip"])
        assert code == 0
        text = capsys.readouterr().out
        assert "round-trip error" in text
        payload = json.loads(out.read_text())
        reported = payload["relative_l2_error"]
        from periframe import roundtrip_error

        assert reported == pytest.approx(roundtrip_error(f, 2.0, 10), rel=1e-12)

    def test_malformed_json_exits_two(self, tmp_path, capsys):
        src = tmp_path / "bad.json"
        src.write_text('{"kmin": 0, "coeffs": [[1.0,')
        assert run_cli(["transform", "--input", str(src), "--a", "2", "--J", "4"]) == 2
        assert "line 1" in capsys.readouterr().err

    def test_missing_file_exits_two(self, tmp_path):
        assert run_cli(["transform", "--input", str(tmp_path / "nope.json"),
                        "--a", "2", "--J", "4"]) == 2

    def test_constant_input_gives_flat_wavelet_rows(self, tmp_path):
        src = tmp_path / "const.json"
        save_fourier(FourierSeq(0, [1.0]), src)
        out = tmp_path / "deco.json"
        assert run_cli(["--out", str(out), "transform", "--input", str(src),
                        "--a", "2", "--J", "8", "--mode", "analyze"]) == 0
        payload = json.loads(out.read_text())
        for level in payload["levels"]:
            mags = [math.hypot(re, im) for re, im in level["values"]]
            assert max(mags) - min(mags) < 1e-12 * (1 + max(mags))


class TestAsym:
    def test_ratios_near_one_at_large_level(self, capsys):
        assert run_cli(["asym", "--j", "10000", "--a", "2"]) == 0
        out = capsys.readouterr().out
        rows = {line.split()[0]: line.split() for line in out.strip().split("\n")[2:]}
        for key in ("norm", "dnorm", "tau[h->0]"):
            assert abs(float(rows[key][3]) - 1.0) < 1e-3

    def test_q_branch_for_large_a(self, capsys):
        assert run_cli(["asym", "--j", "5", "--a", "1000000"]) == 0
        out = capsys.readouterr().out
        rows = {line.split()[0]: line.split() for line in out.strip().split("\n")[2:]}
        assert abs(float(rows["tau[q->0]"][3]) - 1.0) < 1e-3

    def test_survives_poor_asymptotic_regime(self, capsys):
        assert run_cli(["asym", "--j", "1", "--a", "1.01"]) == 0
        assert "ratio" in capsys.readouterr().out


class TestTheta:
    def test_paths_agree(self, capsys):
        assert run_cli(["theta", "--alpha", "2", "--beta", "2", "--gamma", "1",
                        "--b", "0.05", "--m", "2"]) == 0
        out = capsys.readouterr().out
        direct = float(out.split("\n")[0].split("=")[1])
        poisson = float(out.split("\n")[1].split("=")[1])
        assert direct == pytest.approx(poisson, rel=1e-12)

    def test_invalid_b_exits_one(self):
        assert run_cli(["theta", "--alpha", "1", "--b", "9"]) == 1


class TestEval:
    def test_csv_grid(self, tmp_path):
        out = tmp_path / "grid.csv"
        code = run_cli(["--out", str(out), "eval", "--kind", "wavelet",
                        "--a", "2", "--j", "3", "--grid", "32"])
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "n,re,im"
        assert len(lines) == 33

    def test_grid_matches_library(self, tmp_path):
        from periframe import FrameParams, build_scaling_seq, evaluate_grid

        out = tmp_path / "grid.csv"
        assert run_cli(["--out", str(out), "eval", "--kind", "scaling",
                        "--a", "2", "--j", "4", "--grid", "16"]) == 0
        rows = [line.split(",") for line in out.read_text().strip().split("\n")[1:]]
        got = np.array([float(r[1]) + 1j * float(r[2]) for r in rows])
        expected = evaluate_grid(build_scaling_seq(FrameParams(2.0, 4)), 16).samples
        np.testing.assert_allclose(got, expected, rtol=0, atol=1e-16)

    def test_bad_grid_exits_one(self):
        assert run_cli(["eval", "--kind", "scaling", "--a", "2", "--j", "3",
                        "--grid", "0"]) == 1


def test_environment_epsilon_honored_and_flag_wins(monkeypatch, tmp_path):
    from periframe import cli

    monkeypatch.setenv(cli.EPSILON_ENV_VAR, "1e-12")
    assert cli._default_epsilon() == 1e-12
    monkeypatch.setenv(cli.EPSILON_ENV_VAR, "not-a-number")
    assert cli._default_epsilon() == 1e-16
    monkeypatch.setenv(cli.EPSILON_ENV_VAR, "1e-12")
    out = tmp_path / "t.csv"
    # flag wins over the environment setting
    assert run_cli(["--epsilon", "1e-16", "--out", str(out), "uc-table",
                    "--a", "2", "--j", "4", "--target", "scaling"]) == 0
