"""Command-line interface: output shapes, exit codes, budget plumbing."""

import json

import pytest

from brieskorn.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassify:
    def test_rigid_with_certificate(self, capsys):
        code, out, _ = run(capsys, "classify", "2", "5", "7", "3", "3", "3")
        assert code == 0
        assert "status: RIGID" in out
        assert "RECURSIVE_SUBTUPLES" in out

    def test_non_rigid(self, capsys):
        code, out, _ = run(capsys, "classify", "2", "3", "3", "2")
        assert code == 0
        assert "status: NON_RIGID" in out
        assert "NOT_IN_TN" in out

    def test_unknown_is_success(self, capsys):
        code, out, _ = run(capsys, "classify", "2", "3", "3", "4")
        assert code == 0
        assert "status: UNKNOWN" in out

    def test_structured_output_parses_and_replays(self, capsys):
        code, out, _ = run(capsys, "classify", "--format", "structured", "10", "3", "3", "4")
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "RIGID"
        assert payload["rule"] == "COTYPE_GE_2_N4"
        from brieskorn import certificate_from_dict, replay

        assert replay(certificate_from_dict(payload["certificate"]))

    def test_csv_output(self, capsys):
        code, out, _ = run(capsys, "classify", "--format", "csv", "8", "8", "8", "8")
        assert code == 0
        header, row = out.strip().splitlines()
        assert header.startswith("tuple;status;")
        assert row.startswith("8,8,8,8;STABLY_RIGID;LOW_SUM;")

    def test_rejects_non_integers(self, capsys):
        code, _, err = run(capsys, "classify", "2", "three", "4")
        assert code == 2
        assert "error:" in err

    def test_rejects_nonpositive(self, capsys):
        code, _, err = run(capsys, "classify", "2", "3", "0")
        assert code == 2
        assert "error:" in err

    def test_rejects_too_few(self, capsys):
        code, _, err = run(capsys, "classify", "2", "3")
        assert code == 2


class TestInvariants:
    def test_human_report(self, capsys):
        code, out, _ = run(capsys, "invariants", "10", "3", "3", "4")
        assert code == 0
        assert "lcm: 60" in out
        assert "cotype: 2" in out
        assert "lcm drop over critical indices: 10" in out
        assert "kernel degree bound: 10" in out
        assert "reciprocal sum: 61/60" in out

    def test_three_entry_report_has_no_kernel_bound(self, capsys):
        code, out, _ = run(capsys, "invariants", "3", "3", "3")
        assert code == 0
        assert "cotype: 0" in out
        assert "lcm drop over critical indices: 1" in out
        assert "kernel degree bound" not in out

    def test_structured_report(self, capsys):
        code, out, _ = run(capsys, "invariants", "--format", "structured", "2", "3", "3", "4")
        assert code == 0
        payload = json.loads(out)
        assert payload["lcm_critical"] == [4]
        assert payload["degrees"] == [6, 4, 4, 3]
        assert payload["reciprocal_sum"] == "17/12"
        assert payload["in_Tn"] is True


class TestCensus:
    def test_writes_files(self, capsys, tmp_path):
        out_dir = tmp_path / "census"
        code, out, _ = run(
            capsys, "census", "--n", "3", "--max", "5", "--out", str(out_dir)
        )
        assert code == 0
        assert "rows: 35" in out
        csv_text = (out_dir / "census.csv").read_text(encoding="utf-8")
        assert csv_text.startswith("tuple;status;rule;cotype;in_Tn;reciprocal_sum;certificate_id")
        assert (out_dir / "summary.txt").exists()
        assert (out_dir / "certificates.json").exists()

    def test_invalid_range_exits_two(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "census", "--n", "3", "--max", "2", "--min", "5",
            "--out", str(tmp_path / "x"),
        )
        assert code == 2
        assert "error:" in err


class TestProjClasses:
    def test_reports_mixed_class(self, capsys):
        code, out, _ = run(capsys, "proj-classes", "--n", "4", "--max", "4", "--min", "2")
        assert code == 0
        assert "classes are relative to this universe" in out
        assert "(2,3,3,4): UNKNOWN" in out

    def test_structured_output(self, capsys):
        code, out, _ = run(
            capsys, "proj-classes", "--n", "4", "--max", "4", "--min", "3", "--format", "structured"
        )
        assert code == 0
        payload = json.loads(out)
        assert isinstance(payload, list) and payload
        assert {"members", "edges", "statuses", "mixed", "relative_to_universe"} == set(payload[0])


class TestBudgetPlumbing:
    def test_flags_override(self, capsys):
        code, out, _ = run(capsys, "classify", "--depth", "0", "4", "4", "4", "12")
        assert code == 0
        assert "status: UNKNOWN" in out  # the deciding descend step needs depth >= 1

    def test_env_budget(self, capsys, monkeypatch):
        monkeypatch.setenv("BRIESKORN_BUDGET", "depth=0")
        code, out, _ = run(capsys, "classify", "4", "4", "4", "12")
        assert code == 0
        assert "status: UNKNOWN" in out

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("BRIESKORN_BUDGET", "depth=0")
        code, out, _ = run(capsys, "classify", "--depth", "6", "4", "4", "4", "12")
        assert code == 0
        assert "status: RIGID" in out

    def test_bad_env_budget_is_an_input_error(self, capsys, monkeypatch):
        monkeypatch.setenv("BRIESKORN_BUDGET", "depth=fast")
        code, _, err = run(capsys, "classify", "2", "3", "3", "4")
        assert code == 2
        assert "BRIESKORN_BUDGET" in err

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["census", "--n", "3"])  # missing required --max
        assert excinfo.value.code == 2
