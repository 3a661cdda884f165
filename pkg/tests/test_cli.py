"""Command-line interface: output text, exit codes, files, and environment."""

from __future__ import annotations

import json

from kdouble.classify import family_data
from kdouble.equations import build_model, eliminate
from kdouble.serialize import from_envelope, to_json

A2_BARE = json.dumps({"orders": [2, 2], "l": [0, 2, 4, 2], "d": [0, 0, 4, 4]})


class TestClassify:
    def test_smallest_rank_table(self, run_cli):
        code, out, err = run_cli("classify", "--kmax", "1")
        assert code == 0
        assert err == ""
        assert out == (
            "label  k  type  d      l      K2  deg_phi  mod_dim\n"
            "A1     1  A     (0,8)  (0,4)  2   2        36\n"
        )

    def test_check_passes(self, run_cli):
        code, out, _ = run_cli("classify", "--kmax", "2", "--check")
        assert code == 0
        assert out.rstrip().endswith("check passed: 3 families")

    def test_full_check_passes(self, run_cli):
        code, out, _ = run_cli("classify", "--check")
        assert code == 0
        assert out.rstrip().endswith("check passed: 11 families")

    def test_json_output(self, run_cli):
        code, out, _ = run_cli("classify", "--kmax", "2", "--format", "json")
        assert code == 0
        found = from_envelope(json.loads(out))
        assert [f.label for f in found] == ["A1", "A2", "B2"]

    def test_usage_errors(self, run_cli):
        code, _, err = run_cli("classify", "--kmax", "7")
        assert code == 2
        assert "--kmax" in err
        code, _, err = run_cli("classify", "--jobs", "0")
        assert code == 2
        assert "--jobs" in err


class TestInvariants:
    def test_family_text(self, run_cli):
        code, out, _ = run_cli("invariants", "--family", "E3")
        assert code == 0
        assert out == (
            "p_g = 3\nq = 0\nchi_O = 4\nK2 = 8\nc = 1\nK_sign = positive\n"
            "base_points = 4\ndeg_canonical = 4\nnodes = 0\n"
        )

    def test_unknown_family(self, run_cli):
        code, out, err = run_cli("invariants", "--family", "Z9")
        assert code == 1
        assert out == ""
        assert err.startswith("error: ")

    def test_data_file(self, run_cli, tmp_path):
        path = tmp_path / "cover.json"
        path.write_text(A2_BARE, encoding="utf-8")
        code, out, _ = run_cli("invariants", "--data", str(path))
        assert code == 0
        assert "K2 = 4" in out

    def test_invalid_data_file(self, run_cli, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            json.dumps({"orders": [2], "l": [0, 1], "d": [0, 1]}), encoding="utf-8"
        )
        code, _, err = run_cli("invariants", "--data", str(path))
        assert code == 1
        assert "invalid building data" in err

    def test_unreadable_file(self, run_cli, tmp_path):
        code, _, err = run_cli("invariants", "--data", str(tmp_path / "missing.json"))
        assert code == 1
        assert err.startswith("error: ")

    def test_not_building_data(self, run_cli, tmp_path):
        path = tmp_path / "odd.json"
        path.write_text('{"what": 1}', encoding="utf-8")
        code, _, err = run_cli("invariants", "--data", str(path))
        assert code == 1
        assert "cannot read building data" in err

    def test_selector_required(self, run_cli):
        code, _, err = run_cli("invariants")
        assert code == 2
        assert "required" in err


class TestQuotients:
    def test_report_lines(self, run_cli):
        code, out, _ = run_cli("quotients", "--family", "A2")
        assert code == 0
        lines = out.rstrip().split("\n")
        assert len(lines) == 5
        assert lines[0] == "H=() rank=2 general type (p_g=3, K^2=4)  [K2=4 p_g=3 nodes=0]"
        assert (
            lines[1]
            == "H=(1) rank=1 Horikawa-type (p_g=3, K^2=2) with 16 nodes  "
            "[K2=2 p_g=3 nodes=16]"
        )
        assert lines[4] == "H=(2,1) rank=0 projective plane  [K2=9 p_g=0 nodes=0]"

    def test_towers(self, run_cli):
        code, out, _ = run_cli("quotients", "--family", "B2", "--towers")
        assert code == 0
        assert out == (
            "nodes (9)  subgroups (1)  involutions ()\n"
            "nodes (9)  subgroups (2)  involutions ()\n"
            "nodes (9)  subgroups (3)  involutions ()\n"
        )

    def test_towers_none(self, run_cli):
        code, out, _ = run_cli("quotients", "--family", "A1", "--towers")
        assert code == 0
        assert out == "none\n"


class TestBurgers:
    def test_negative(self, run_cli):
        code, out, _ = run_cli("burgers", "--family", "C4")
        assert code == 0
        assert out == "none\n"

    def test_positive(self, run_cli):
        code, out, _ = run_cli("burgers", "--family", "B2")
        assert code == 0
        assert out == (
            "sigmas=(1,2,3) surviving=(2,1,3) quotient_nodes=(9,9,9)\n"
        )


class TestEquations:
    def test_text(self, run_cli):
        code, out, _ = run_cli("equations", "--family", "A2")
        assert code == 0
        assert out == "y01^2 = f11\ny11^2 = f10\n"

    def test_latex(self, run_cli):
        code, out, _ = run_cli("equations", "--family", "A2", "--format", "latex")
        assert code == 0
        assert out.startswith("\\begin{align*}\n")
        assert out.rstrip().endswith("\\end{align*}")

    def test_json_round_trip(self, run_cli):
        code, out, _ = run_cli("equations", "--family", "C3", "--format", "json")
        assert code == 0
        model = from_envelope(json.loads(out))
        assert model == eliminate(build_model(family_data("C3")))

    def test_latex_rejected_elsewhere(self, run_cli):
        code, _, err = run_cli("invariants", "--family", "A1", "--format", "latex")
        assert code == 2
        assert "latex output is only available" in err


class TestOutputFile:
    def test_out_writes_file(self, run_cli, tmp_path):
        target = tmp_path / "table.txt"
        code, out, _ = run_cli("classify", "--kmax", "1", "--out", str(target))
        assert code == 0
        assert out == ""
        text = target.read_text(encoding="utf-8")
        assert text.endswith("mod_dim\nA1     1  A     (0,8)  (0,4)  2   2        36\n")

    def test_out_json_parses(self, run_cli, tmp_path):
        target = tmp_path / "fam.json"
        code, _, _ = run_cli(
            "equations", "--family", "A1", "--format", "json", "--out", str(target)
        )
        assert code == 0
        doc = json.loads(target.read_text(encoding="utf-8"))
        assert doc["kind"] == "weighted_model"


class TestVerify:
    def test_single_section(self, run_cli):
        code, out, _ = run_cli("verify", "--section", "3")
        assert code == 0
        assert "checks passed" in out

    def test_bad_section(self, run_cli):
        code, _, err = run_cli("verify", "--section", "7")
        assert code == 2
        assert "--section" in err


class TestDeterminismAndEnvironment:
    def test_repeated_runs_identical(self, run_cli):
        first = run_cli("equations", "--family", "D5", "--format", "json")
        second = run_cli("equations", "--family", "D5", "--format", "json")
        assert first == second
        third = run_cli("quotients", "--family", "C3")
        fourth = run_cli("quotients", "--family", "C3")
        assert third == fourth

    def test_jobs_do_not_change_output(self, run_cli, monkeypatch):
        base = run_cli("classify", "--kmax", "3")
        flagged = run_cli("classify", "--kmax", "3", "--jobs", "4")
        assert flagged == base
        monkeypatch.setenv("KDOUBLE_JOBS", "4")
        env_run = run_cli("classify", "--kmax", "3")
        assert env_run == base

    def test_bad_jobs_env_falls_back(self, run_cli, monkeypatch):
        monkeypatch.setenv("KDOUBLE_JOBS", "many")
        code, out, _ = run_cli("classify", "--kmax", "1")
        assert code == 0
        assert "A1" in out

    def test_unknown_subcommand(self, run_cli):
        code, _, err = run_cli("sandwich")
        assert code == 2
        assert "invalid choice" in err
