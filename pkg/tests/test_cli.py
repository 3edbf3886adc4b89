import json
import math
import os

import pytest

from zetabounds.cli import main


def run_cli(args, tmp_path, name="out.csv", env_dir=None, monkeypatch=None):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    text = out.read_text() if out.exists() else ""
    return code, text


class TestBoundCommand:
    def test_worked_example_row(self, tmp_path):
        code, text = run_cli(["bound", "--t", "7.389056", "--theorem", "1"], tmp_path)
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0].startswith("# t,thm1_total")
        row = lines[1].split(",")
        assert float(row[1]) == pytest.approx(22.493, abs=1e-3)

    def test_both_theorems_at_large_t(self, tmp_path):
        code, text = run_cli(["bound", "--t", "1000"], tmp_path)
        assert code == 0
        header = text.splitlines()[0].lstrip("# ").split(",")
        row = text.strip().splitlines()[1].split(",")
        rec = dict(zip(header, row))
        assert float(rec["thm1_total"]) > 0
        assert float(rec["thm2_total"]) > 0
        assert float(rec["Q4"]) > 0

    def test_sweep_rows_ascending(self, tmp_path):
        code, text = run_cli(
            ["bound", "--t-min", "10", "--t-max", "1000", "--samples", "7",
             "--theorem", "1"],
            tmp_path,
        )
        assert code == 0
        ts = [float(line.split(",")[0]) for line in text.strip().splitlines()[1:]]
        assert ts == sorted(ts) and len(ts) == 7

    def test_usage_error_below_threshold(self, tmp_path):
        code, _ = run_cli(["bound", "--t", "5", "--theorem", "1"], tmp_path)
        assert code == 1

    def test_byte_identical_reruns(self, tmp_path):
        args = ["bound", "--t-min", "500", "--t-max", "5000", "--samples", "9"]
        _, a = run_cli(args, tmp_path, name="a.csv")
        _, b = run_cli(args, tmp_path, name="b.csv")
        assert a == b and a


class TestEvalCommand:
    def test_certified_row(self, tmp_path):
        code, text = run_cli(["eval", "--t", "50"], tmp_path)
        assert code == 0
        header = text.splitlines()[0].lstrip("# ").split(",")
        row = dict(zip(header, text.strip().splitlines()[1].split(",")))
        assert float(row["error_bound"]) < 1e-8
        mod = math.hypot(float(row["re_zeta_prime"]), float(row["im_zeta_prime"]))
        assert float(row["abs_zeta_prime"]) == pytest.approx(mod, rel=1e-12)

    def test_theorem_gate(self, tmp_path):
        code, _ = run_cli(["eval", "--t", "0.5", "--theorem", "1"], tmp_path)
        assert code == 1

    def test_seventeen_digit_roundtrip(self, tmp_path):
        _, text = run_cli(["eval", "--t", "123.456"], tmp_path)
        value = text.strip().splitlines()[1].split(",")[1]
        assert float(value) == float(format(float(value), ".17g"))

    def test_json_lines_format(self, tmp_path):
        code, text = run_cli(
            ["eval", "--t", "30", "--format", "json-lines"], tmp_path, name="o.jsonl"
        )
        assert code == 0
        rec = json.loads(text.strip())
        assert rec["schema_version"] == 1
        assert rec["kind"] == "eval"
        assert "abs_zeta_prime" in rec

    def test_unreachable_tolerance_exits_nonconverged(self, tmp_path):
        # the best truncation remainder at t=50 sits around 1e-40, so a
        # 1e-60 request cannot converge; rows are still written, but the
        # run signals non-convergence
        code, text = run_cli(["eval", "--t", "50", "--tol", "1e-60"], tmp_path)
        assert code == 3
        assert len(text.strip().splitlines()) == 2


class TestVerifyCommand:
    def test_weight_sum_check_clean_exit(self, tmp_path):
        code, text = run_cli(
            ["verify", "--lemma", "4.6", "--max-m", "1000"], tmp_path
        )
        assert code == 0
        assert "violations" in text.splitlines()[0]
        row = text.strip().splitlines()[1].split(",")
        assert row[0] == "4.6"
        assert int(row[2]) == 0

    def test_vertex_check(self, tmp_path):
        code, text = run_cli(
            ["verify", "--lemma", "2.5", "--samples", "500", "--seed", "3"],
            tmp_path,
        )
        assert code == 0

    def test_theorem_envelope(self, tmp_path):
        code, text = run_cli(
            ["verify", "--theorem", "1", "--t-min", "10", "--t-max", "500",
             "--samples", "10"],
            tmp_path,
        )
        assert code == 0
        assert text.strip().splitlines()[1].startswith("theorem-1")

    def test_needs_target(self, tmp_path):
        code, _ = run_cli(["verify"], tmp_path)
        assert code == 1

    def test_unknown_lemma_usage_error(self, tmp_path):
        code, _ = run_cli(["verify", "--lemma", "7.7"], tmp_path)
        assert code == 1


class TestScanCommand:
    def test_rows_and_positive_slack(self, tmp_path):
        code, text = run_cli(
            ["scan", "--t-min", "10", "--t-max", "200", "--samples", "6",
             "--theorem", "1"],
            tmp_path,
        )
        assert code == 0
        rows = [line.split(",") for line in text.strip().splitlines()[1:]]
        assert len(rows) == 6
        for row in rows:
            assert float(row[3]) > 0  # slack = bound - oracle - budget


class TestOptimizeCommand:
    def test_trace_output(self, tmp_path, capsys):
        code, text = run_cli(
            ["optimize", "--objective", "bound-at-t", "--t", "20000",
             "--budget", "80"],
            tmp_path,
        )
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0].startswith("# step,k,tau,q,t1,t2,objective")
        objs = [float(line.split(",")[-1]) for line in lines[1:]]
        assert objs == sorted(objs, reverse=True)


class TestOutputRouting:
    def test_env_dir_resolution(self, tmp_path, monkeypatch):
        monkeypatch.setenv("ZETABOUNDS_OUT", str(tmp_path))
        code = main(["bound", "--t", "1000", "--out", "routed.csv"])
        assert code == 0
        assert (tmp_path / "routed.csv").exists()

    def test_stdout_default(self, capsys):
        code = main(["bound", "--t", "1000", "--theorem", "1"])
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("# t,")

    def test_bad_subcommand_is_usage_error(self, capsys):
        assert main(["frobnicate"]) == 1
