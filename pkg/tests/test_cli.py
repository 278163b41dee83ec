"""Command-line driver: exit codes, usage errors, deterministic JSON
reports, config files, and report merging."""

import json
import os

import pytest

from yangkit.cli import main


def run(tmp_path, name, argv):
    out = tmp_path / name
    code = main(argv + ["--output", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report, out


class TestUsageErrors:
    def test_sp_odd_n(self, capsys):
        assert main(["verify", "--family", "sp", "--n", "3",
                     "--suite", "classical"]) == 2
        assert "usage error" in capsys.readouterr().err

    def test_unknown_suite(self):
        assert main(["verify", "--family", "sl", "--n", "2",
                     "--suite", "nonsense"]) == 2

    def test_qdet_needs_sl(self):
        assert main(["qdet", "--family", "so", "--n", "3",
                     "--len", "2", "--sumr", "2"]) == 2

    def test_symmetry_needs_sosp(self):
        assert main(["verify", "--family", "sl", "--n", "2",
                     "--len", "2", "--sumr", "2",
                     "--suite", "symmetry"]) == 2

    def test_missing_bounds(self):
        assert main(["verify", "--family", "sl", "--n", "2",
                     "--suite", "pbw"]) == 2

    def test_bounds_too_large(self, capsys):
        assert main(["build", "--family", "sl", "--n", "2",
                     "--len", "12", "--sumr", "12"]) == 3
        assert "bounds too large" in capsys.readouterr().err


class TestVerify:
    def test_pass_and_schema(self, tmp_path):
        code, rep, _ = run(tmp_path, "r.json",
                           ["verify", "--family", "sl", "--n", "2",
                            "--order", "3", "--len", "2", "--sumr", "3",
                            "--suite", "rtt,pbw"])
        assert code == 0
        assert rep["schema"] == 1
        assert rep["status"] == "pass"
        assert {c["check"] for c in rep["checks"]} == \
            {"rtt_closure", "pbw_extended", "pbw_quotient"}

    def test_byte_identical_reports(self, tmp_path):
        argv = ["verify", "--family", "sl", "--n", "2", "--order", "3",
                "--len", "2", "--sumr", "3", "--suite", "rtt",
                "--seed", "11"]
        _, _, a = run(tmp_path, "a.json", argv)
        old = os.environ.get("YF_THREADS")
        os.environ["YF_THREADS"] = "1"
        try:
            _, _, b = run(tmp_path, "b.json", argv)
        finally:
            if old is None:
                os.environ.pop("YF_THREADS")
            else:
                os.environ["YF_THREADS"] = old
        assert a.read_bytes() == b.read_bytes()

    def test_seed_changes_control(self, tmp_path):
        argv = ["verify", "--family", "sl", "--n", "3", "--order", "3",
                "--len", "2", "--sumr", "2", "--suite", "rtt"]
        _, r1, _ = run(tmp_path, "s1.json", argv + ["--seed", "1"])
        _, r2, _ = run(tmp_path, "s2.json", argv + ["--seed", "2"])
        g1 = r1["checks"][0]["details"]["negative_control_generator"]
        g2 = r2["checks"][0]["details"]["negative_control_generator"]
        assert g1 != g2

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "family": "sl", "N": 2, "K": 3, "L": 2, "R_ord": 3,
            "suite": ["rtt"], "seed": 5}))
        code, rep, _ = run(tmp_path, "c.json",
                           ["verify", "--config", str(cfg), "--seed", "9"])
        assert code == 0
        assert rep["config"]["seed"] == 9
        assert rep["config"]["family"] == "sl"

    def test_exit_reflects_conjunction(self, tmp_path, monkeypatch):
        # force one suite to fail and check the nonzero exit code
        import yangkit.cli as climod
        real = climod._SUITE_FNS["rtt"]

        def failing(cfg, ctx):
            checks = real(cfg, ctx)
            checks.append({"check": "forced", "status": "fail",
                           "details": {}})
            return checks
        monkeypatch.setitem(climod._SUITE_FNS, "rtt", failing)
        code, rep, _ = run(tmp_path, "f.json",
                           ["verify", "--family", "sl", "--n", "2",
                            "--order", "3", "--len", "2", "--sumr", "3",
                            "--suite", "rtt"])
        assert code == 1
        assert rep["status"] == "fail"


class TestOtherCommands:
    def test_build(self, tmp_path):
        code, rep, _ = run(tmp_path, "b.json",
                           ["build", "--family", "sl", "--n", "2",
                            "--order", "3", "--len", "2", "--sumr", "2"])
        assert code == 0
        det = rep["checks"][0]["details"]
        assert det["relations"] == 282
        assert det["closure_rank"] > 0

    def test_solve_r(self, tmp_path):
        code, rep, _ = run(tmp_path, "s.json",
                           ["solve-r", "--family", "sl", "--n", "2",
                            "--order", "3"])
        assert code == 0
        det = rep["checks"][0]["details"]
        assert det["ratio_to_closed_form"][0] == "1/1"

    def test_qdet(self, tmp_path):
        code, rep, _ = run(tmp_path, "q.json",
                           ["qdet", "--family", "sl", "--n", "2",
                            "--order", "3", "--len", "3", "--sumr", "4"])
        assert code == 0
        assert rep["checks"][0]["check"] == "qdet"

    def test_report_merge(self, tmp_path):
        _, _, a = run(tmp_path, "m1.json",
                      ["build", "--family", "sl", "--n", "2",
                       "--order", "3"])
        _, _, b = run(tmp_path, "m2.json",
                      ["solve-r", "--family", "sl", "--n", "2",
                       "--order", "3"])
        out = tmp_path / "merged.json"
        assert main(["report-merge", str(a), str(b),
                     "--output", str(out)]) == 0
        merged = json.loads(out.read_text())
        assert merged["schema"] == 1
        assert merged["status"] == "pass"
        assert len(merged["reports"]) == 2
