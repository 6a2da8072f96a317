"""Command-line interface and check-suite plumbing."""

import json

import pytest

from pdseq import checks
from pdseq.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSeqCommand:
    def test_bfile_output(self, capsys):
        code, out, _ = run_cli(capsys, "seq", "a", "4")
        assert code == 0
        assert out == "0 1\n1 5\n2 7\n3 13\n"

    def test_offset(self, capsys):
        code, out, _ = run_cli(capsys, "seq", "F", "3", "--offset", "1")
        assert code == 0
        assert out.splitlines() == ["1 1", "2 1", "3 2"]


class TestInvertCommand:
    def test_round_trip(self, capsys, tmp_path):
        from pdseq import catalog

        path = tmp_path / "series.json"
        path.write_text(catalog.generating_function("d", 64).to_json())
        code, out, _ = run_cli(capsys, "invert", str(path))
        assert code == 0
        data = json.loads(out)
        assert data["p"] == 2
        assert data["coeffs"][:8] == [0, 1, 0, 0, 0, 1, 0, 1]


class TestKernelCommand:
    def test_json_report(self, capsys):
        code, out, _ = run_cli(capsys, "kernel", "u", "--depth", "4", "--horizon", "128")
        assert code == 0
        report = json.loads(out)
        assert report["sequence"] == "u"
        assert [d["class_count"] for d in report["depths"]] == [1, 3, 4, 5, 5]


class TestDfaoCommand:
    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "dfao", "u")
        assert code == 0
        machine = json.loads(out)
        assert len(machine["states"]) == 5
        assert machine["read_order"] == "lsd"

    def test_dot(self, capsys):
        code, out, _ = run_cli(capsys, "dfao", "d", "--dot")
        assert code == 0
        assert out.startswith("digraph d {")


class TestComplexityCommand:
    def test_blocks_language(self, capsys):
        code, out, _ = run_cli(capsys, "complexity", "lprime", "6")
        assert code == 0
        assert out == "0 1\n1 1\n2 2\n3 3\n4 5\n5 8\n6 13\n"


class TestOreCommand:
    def test_inverse_pd_relation(self, capsys):
        code, out, _ = run_cli(capsys, "ore", "u", "--depth", "2", "--deg", "3")
        assert code == 0
        data = json.loads(out)
        patterns = {tuple(t["pattern"]): t["coeffs"] for t in data["terms"]}
        assert patterns[("frob", 1)] == [0, 0, 0, 1]

    def test_none_when_bounds_too_small(self, capsys):
        code, out, _ = run_cli(capsys, "ore", "up3", "--depth", "3", "--deg", "8", "--precision", "729")
        assert code == 0
        assert out.strip() == "none"


class TestCheckCommand:
    def test_single_check(self, capsys):
        code, out, _ = run_cli(capsys, "check", "lemma-3.2")
        assert code == 0
        assert out.splitlines()[0].startswith("lemma-3.2: PASS")

    def test_unknown_id_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "check", "lemma-99")
        assert code == 2
        assert "unknown check ids" in err

    def test_list(self, capsys):
        code, out, _ = run_cli(capsys, "check", "--list")
        assert code == 0
        assert len(out.splitlines()) == len(checks.CHECKS) == 14

    def test_json_reports_are_reproducible(self, capsys):
        def grab():
            code, out, _ = run_cli(
                capsys, "check", "lemma-3.2", "lemma-5.3-prop-5.5-complexity", "--format", "json"
            )
            assert code == 0
            report = json.loads(out)
            del report["elapsed_seconds"]  # the single timing field
            return json.dumps(report, sort_keys=True)

        assert grab() == grab()

    def test_horizon_override(self, capsys):
        code, out, _ = run_cli(capsys, "check", "lemma-4.5", "--horizon", "lemma-4.5=1000")
        assert code == 0
        assert "n<1000" in out

    def test_env_horizon(self, capsys, monkeypatch):
        monkeypatch.setenv("PDSEQ_HORIZONS", "lemma-4.5=500")
        code, out, _ = run_cli(capsys, "check", "lemma-4.5")
        assert code == 0
        assert "n<500" in out

    def test_bad_override_format(self, capsys):
        code, _, err = run_cli(capsys, "check", "--horizon", "oops")
        assert code == 2
        assert "id=value" in err


class TestRunPaperChecks:
    def test_selection_validation(self):
        with pytest.raises(ValueError, match="unknown check ids"):
            checks.run_paper_checks(["not-a-check"])
        with pytest.raises(ValueError, match="unknown check id"):
            checks.run_paper_checks(["lemma-3.2"], horizons={"bogus": 5})

    def test_results_in_registry_order(self):
        results = checks.run_paper_checks(["lemma-3.2", "prop-4.2-reversion"])
        assert [r.check_id for r in results] == ["prop-4.2-reversion", "lemma-3.2"]

    def test_result_fields(self):
        (result,) = checks.run_paper_checks(["lemma-3.2"])
        assert result.status == "pass"
        assert result.elapsed >= 0
        assert result.to_json_dict()["id"] == "lemma-3.2"
