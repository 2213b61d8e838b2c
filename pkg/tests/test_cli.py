import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from trivol import cli, formula
from trivol.cli import CSV_HEADER, main

SCHEMA = json.loads((Path(__file__).parents[1] / "schemas" / "envelope-v1.json").read_text())
WORKED = ["--bounds", "3,7", "-2,4", "-3,-1"]
UNIT = ["--bounds", "-1,1", "-1,1", "-1,1"]
CASE5 = ["--cl", "1/2,1", "-3/4,3/2", "5/4,5/2"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    env = json.loads(out)
    jsonschema.validate(env, SCHEMA)
    return code, env


class TestVolume:
    def test_worked_example(self, capsys):
        code, env = run_json(capsys, "volume", *WORKED)
        assert code == 0
        assert env["volume"] == "960/1" and env["case"] == 2
        assert env["normalization"] == {"signs": [1, 1, -1], "permutation": [3, 1, 2]}
        assert env["ratios"] == ["1/3", "2/1", "5/2"]
        assert env["volume_f64"] == "960"
        assert env["input"]["raw"]["bounds"][2] == ["-3/1", "-1/1"]

    def test_symmetric_box(self, capsys):
        code, env = run_json(capsys, "volume", *UNIT)
        assert code == 0 and env["volume"] == "32/3" and env["case"] == 6

    def test_center_half_length_input(self, capsys):
        _, env = run_json(capsys, "volume", "--cl", "5,2", "1,3", "-2,1")
        assert env["volume"] == "960/1"

    def test_domain_file_and_stdin(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "d.json"
        path.write_text('{"bounds": [[3, 7], [-2, 4], [-3, -1]]}')
        _, env = run_json(capsys, "volume", "--domain", str(path))
        assert env["volume"] == "960/1"
        monkeypatch.setattr(sys, "stdin", io.StringIO(path.read_text()))
        _, env = run_json(capsys, "volume", "--domain", "-")
        assert env["volume"] == "960/1"

    def test_compact_json(self, capsys):
        _, out, _ = run(capsys, "volume", "--json", *WORKED)
        assert out.count("\n") == 1 and json.loads(out)["volume"] == "960/1"

    @pytest.mark.parametrize(
        "argv",
        [
            ["volume", "--bounds", "1,1", "0,1", "0,1"],
            ["volume", "--bounds", "2,1", "0,1", "0,1"],
            ["volume", "--bounds", "a,b", "0,1", "0,1"],
            ["volume", "--bounds", "0,1", "0,1"],
            ["volume"],
            ["volume", *UNIT, "--cl", "0,1", "0,1", "0,1"],
            ["volume", "--domain", "/nonexistent/d.json"],
            ["volume", "--cl", "0,0", "0,1", "0,1"],
            ["frobnicate"],
        ],
    )
    def test_usage_errors_exit_2(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and err

    def test_bad_mode_env(self, capsys, monkeypatch):
        monkeypatch.setenv("TRIVOL_MODE", "fuzzy")
        assert run(capsys, "volume", *UNIT)[0] == 2

    def test_float_mode_env(self, capsys, monkeypatch):
        monkeypatch.setenv("TRIVOL_MODE", "float")
        _, env = run_json(capsys, "volume", *UNIT)
        assert env["mode"] == "float" and env["volume"] == "32/3"


class TestBreakdown:
    def test_worked_example(self, capsys):
        _, env = run_json(capsys, "breakdown", *WORKED)
        got = {k: env[k] for k in ("vol_q", "vol_r", "v_qqr", "v_qrr", "assembled", "closed_form")}
        assert got == {"vol_q": "72/1", "vol_r": "168/1", "v_qqr": "360/1", "v_qrr": "360/1",
                       "assembled": "960/1", "closed_form": "960/1"}
        assert env["subcases"] == {"qqr": 2, "qrr": 2, "volq": 1}
        assert [e["vertex"] for e in env["z_qqr"]["entries"]][0] == 8

    def test_symmetric_box(self, capsys):
        _, env = run_json(capsys, "breakdown", *UNIT)
        assert (env["vol_q"], env["vol_r"], env["v_qqr"], env["v_qrr"], env["assembled"]) == (
            "8/3", "8/3", "8/1", "8/1", "32/3")
        assert env["z_qqr"]["sign"] == -1

    @pytest.mark.parametrize("case", range(1, 7))
    def test_closed_form_equals_assembled(self, capsys, case):
        c, l = cli.SELFTEST_CASES[case]
        argv = ["--cl", *(f"{a},{b}" for a, b in zip(c, l))]
        _, env = run_json(capsys, "breakdown", *argv)
        assert env["case"] == case and env["closed_form"] == env["assembled"]


class TestVerify:
    def test_worked_example(self, capsys):
        code, env = run_json(capsys, "verify", *WORKED)
        assert code == 0
        v = env["verify"]
        assert (v["quadrature"], v["abs_diff"], v["match"], v["tolerance"]) == ("960/1", "0/1", True, "exact")

    def test_float_mode(self, capsys):
        code, env = run_json(capsys, "verify", "--float", *WORKED)
        assert code == 0 and env["mode"] == "float" and env["verify"]["tolerance"] == "1e-09"

    def test_monte_carlo_is_deterministic(self, capsys):
        argv = ["verify", *UNIT, "--mc-samples", "100000", "--seed", "42"]
        code, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert code == 0 and out1 == out2
        mc = json.loads(out1)["verify"]["montecarlo"]
        jsonschema.validate(json.loads(out1), SCHEMA)
        assert mc["seed"] == 42 and mc["samples"] == 100000

    @pytest.mark.parametrize("flags", [["--seed", "-1"], ["--seed", str(2**64)], ["--mc-samples", "-5"]])
    def test_bad_monte_carlo_flags(self, capsys, flags):
        assert run(capsys, "verify", *UNIT, *flags)[0] == 2

    def test_corrupted_closed_form_exits_1(self, capsys, monkeypatch):
        monkeypatch.setattr(formula, "CASE5_LEAD", Fraction(5, 3))
        code, env = run_json(capsys, "verify", *CASE5)
        assert code == 1 and env["case"] == 5 and env["verify"]["match"] is False

    def test_corrupted_float_mode_exits_1(self, capsys, monkeypatch):
        monkeypatch.setattr(formula, "CASE5_LEAD", Fraction(5, 3))
        assert run(capsys, "verify", "--float", *CASE5)[0] == 1


class TestSweep:
    def rows(self, out):
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == CSV_HEADER
        return [dict(zip(CSV_HEADER, r)) for r in rows[1:]]

    def test_grid(self, capsys):
        code, out, _ = run(capsys, "sweep", "--r1", "0:2:1/4", "--r2", "2", "--r3", "3")
        rows = self.rows(out)
        assert code == 0 and len(rows) == 9
        for row in rows:
            assert row["case"] in {"1", "2"}
            if Fraction(row["r1"]) >= 1:
                assert row["case"] == "1"

    def test_origin(self, capsys):
        _, out, _ = run(capsys, "sweep")
        (row,) = self.rows(out)
        assert (row["case"], row["volume_rat"]) == ("6", "32/3")
        assert (row["qqr_case"], row["qrr_case"], row["volq_case"]) == ("4", "3", "2")

    def test_continuous_across_ratio_sum_one(self, capsys):
        _, out, _ = run(capsys, "sweep", "--r1", "0", "--r2", "0", "--r3", "0:9/10:1/20")
        vols = [Fraction(r["volume_rat"]) for r in self.rows(out)]
        assert max(abs(a - b) for a, b in zip(vols, vols[1:])) <= Fraction(8, 3) * Fraction(1, 20) * 2

    def test_negative_ranges_and_out_file(self, capsys, tmp_path):
        path = tmp_path / "s.csv"
        code, out, _ = run(capsys, "sweep", "--r1", "-1:1:1", "--r2", "-1/2", "--l", "2,1,3", "--out", str(path))
        assert code == 0 and out == ""
        rows = self.rows(path.read_text())
        assert len(rows) == 3 and all(Fraction(r["r1"]) >= 0 for r in rows)

    def test_domain_list(self, capsys, tmp_path):
        path = tmp_path / "doms.json"
        path.write_text('[{"bounds": [[3, 7], [-2, 4], [-3, -1]]}, {"bounds": [[-1, 1], [-1, 1], [-1, 1]]}]')
        _, out, _ = run(capsys, "sweep", "--domains", str(path))
        assert [r["volume_rat"] for r in self.rows(out)] == ["960/1", "32/3"]

    @pytest.mark.parametrize(
        "argv",
        [
            ["sweep", "--out", "/nonexistent/dir/out.csv"],
            ["sweep", "--r1", "1:0:1"],
            ["sweep", "--r1", "0:1:0"],
            ["sweep", "--r1", "0:1"],
            ["sweep", "--l", "1,1"],
        ],
    )
    def test_errors_exit_2(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2


class TestSelftest:
    def test_passes_and_is_deterministic(self, capsys):
        code, out1, _ = run(capsys, "selftest")
        _, out2, _ = run(capsys, "selftest")
        assert code == 0 and out1 == out2
        assert out1.rstrip().endswith("selftest passed")
        assert "ok   case5-oracle" in out1

    def test_perturbed_case5_constant_fails(self, capsys, monkeypatch):
        monkeypatch.setattr(formula, "CASE5_LEAD", Fraction(4, 3) * Fraction(101, 100))
        code, out, _ = run(capsys, "selftest")
        assert code == 1
        assert out.strip().splitlines()[-1] == "FAIL case5-oracle"


def test_console_script_byte_identical():
    cmd = [sys.executable, "-m", "trivol.cli", "breakdown", *WORKED]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["volume"] == "960/1"
