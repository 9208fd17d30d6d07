import json
import shlex
from fractions import Fraction

import pytest
from click.testing import CliRunner

from conftest import DATA
from virasoro import cli
from virasoro import cohomology as co

runner = CliRunner()

VIRASORO_TABLE = DATA / "virasoro_window8.tsv"
SIGN_TABLE = DATA / "sign_window3.tsv"


def invoke(*args, env=None):
    return runner.invoke(cli.main, list(args), env=env, catch_exceptions=False)


def json_lines(result):
    return [json.loads(line) for line in result.output.splitlines()]


def parse_text_line(line):
    tokens = shlex.split(line)
    record = {"status": tokens[0], "check_name": tokens[1]}
    for token in tokens[2:]:
        key, _, value = token.partition("=")
        record[key] = value
    return record


class TestVerify:
    @pytest.mark.parametrize("args", [
        ("witt-jacobi", "--max-index", "3"),
        ("cocycle", "--virasoro", "--window", "4"),
        ("extension", "--max-index", "2"),
        ("virasoro-constants", "--max-index", "3"),
        ("heisenberg", "--max-index", "2", "--max-level", "3"),
        ("primary-field", "--max-index", "2", "--max-level", "3"),
        ("normal-pair", "--max-index", "1", "--max-level", "2"),
        ("sugawara", "--max-index", "2", "--max-level", "3"),
        ("verma", "--max-index", "2", "--max-level", "3"),
        ("verma-hw",),
        ("intertwine", "--max-index", "2", "--max-level", "2"),
        ("sum-identity", "--max-index", "6"),
    ])
    def test_every_kind_passes(self, args):
        result = invoke("verify", *args)
        assert result.exit_code == 0, result.output
        for line in result.output.splitlines():
            assert line.startswith("PASS ")

    def test_two_reports_for_extension_and_heisenberg(self):
        assert len(invoke("verify", "extension", "--max-index", "2",
                          "--format", "json").output.splitlines()) == 2
        assert len(invoke("verify", "heisenberg", "--max-index", "2",
                          "--max-level", "2", "--format", "json").output.splitlines()) == 2

    def test_failing_input_exits_one(self):
        result = invoke("verify", "cocycle", "--input", str(SIGN_TABLE), "--window", "3")
        assert result.exit_code == 1
        assert result.output.startswith("FAIL cocycle-identity")

    def test_table_verifies_as_cocycle(self):
        result = invoke("verify", "cocycle", "--input", str(VIRASORO_TABLE),
                        "--window", "4", "--format", "json")
        assert result.exit_code == 0
        record = json_lines(result)[0]
        assert record["status"] == "pass"
        assert record["parameters"]["cocycle"] == "table(window=8)"

    def test_json_is_sorted_and_compact(self):
        result = invoke("verify", "witt-jacobi", "--max-index", "2", "--format", "json")
        line = result.output.splitlines()[0]
        record = json.loads(line)
        assert line == json.dumps(record, sort_keys=True, separators=(",", ":"))

    def test_text_json_parity(self):
        args = ("verify", "sugawara", "--max-index", "2", "--max-level", "3",
                "--alpha", "2/3")
        text = parse_text_line(invoke(*args).output.splitlines()[0])
        record = json_lines(invoke(*args, "--format", "json"))[0]
        assert text["status"] == record["status"].upper()
        assert text["check_name"] == record["check_name"]
        assert text["checked_count"] == str(record["checked_count"])
        for key, value in record["parameters"].items():
            assert text[key] == value

    def test_counterexample_round_trips_to_text(self):
        args = ("verify", "cocycle", "--input", str(SIGN_TABLE), "--window", "3")
        text = parse_text_line(invoke(*args).output.splitlines()[0])
        record = json_lines(invoke(*args, "--format", "json"))[0]
        assert text["counterexample.actual"] == record["counterexample"]["actual"]
        assert text["counterexample.indices.n"] == record["counterexample"]["indices"]["n"]

    def test_output_is_deterministic(self):
        args = ("verify", "verma", "--max-index", "2", "--max-level", "3",
                "--format", "json")
        assert invoke(*args).output == invoke(*args).output

    def test_jobs_flag_does_not_change_output(self):
        base = ("verify", "sugawara", "--max-index", "2", "--max-level", "3")
        assert invoke(*base).output == invoke(*base, "--jobs", "2").output


class TestVerifyErrors:
    def test_unknown_kind(self):
        assert invoke("verify", "nonsense").exit_code == 2

    def test_invalid_scalar_flag(self):
        result = invoke("verify", "sugawara", "--alpha", "1/0")
        assert result.exit_code == 2
        assert "invalid scalar" in result.output

    def test_cocycle_requires_a_source(self):
        result = invoke("verify", "cocycle")
        assert result.exit_code == 2
        assert "exactly one of --virasoro or --input" in result.output

    def test_cocycle_rejects_both_sources(self):
        result = invoke("verify", "cocycle", "--virasoro", "--input", str(SIGN_TABLE))
        assert result.exit_code == 2

    def test_malformed_table_is_input_error(self, tmp_path):
        bad = tmp_path / "bad.tsv"
        bad.write_text("not a header\n", encoding="utf-8")
        result = invoke("verify", "cocycle", "--input", str(bad), "--format", "json")
        assert result.exit_code == 2
        record = json_lines(result)[0]
        assert record["status"] == "input_error"
        assert "header" in record["message"]

    def test_missing_file_is_input_error(self):
        result = invoke("verify", "cocycle", "--input", "/nonexistent.tsv")
        assert result.exit_code == 2
        assert result.output.startswith("INPUT_ERROR")


class TestEnvironment:
    def test_format_env_var(self):
        result = invoke("verify", "sum-identity", env={"VIRA_FORMAT": "json"})
        assert json_lines(result)[0]["check_name"] == "weighted-sum-identity"

    def test_flag_overrides_env(self):
        result = invoke("verify", "sum-identity", "--format", "text",
                        env={"VIRA_FORMAT": "json"})
        assert result.output.startswith("PASS ")

    def test_jobs_env_var(self):
        base = ("verify", "sugawara", "--max-index", "2", "--max-level", "2")
        with_env = invoke(*base, env={"VIRA_JOBS": "2"})
        assert with_env.exit_code == 0
        assert with_env.output == invoke(*base).output


class TestReduce:
    def test_virasoro_table(self):
        result = invoke("reduce", "--input", str(VIRASORO_TABLE), "--window", "4")
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert lines[0] == "window\t4"
        assert lines[1] == "r\t1"
        assert lines[2].startswith("PASS cocycle-reduction-residual")

    def test_json_shape(self):
        result = invoke("reduce", "--input", str(VIRASORO_TABLE), "--window", "4",
                        "--format", "json")
        head, residual = json_lines(result)
        assert head["check_name"] == "cocycle-reduction"
        assert head["r"] == "1"
        assert head["beta"] == {"window": 4, "values": []}
        assert residual["status"] == "pass"

    def test_recovers_shifted_cocycle(self, tmp_path):
        beta0 = co.OneCochain(6, {0: Fraction(1, 2), 3: Fraction(-2), -5: Fraction(1, 3)})
        omega = Fraction(3, 4) * co.VIRASORO + co.coboundary(beta0)
        path = tmp_path / "shifted.tsv"
        path.write_text(co.dump_cocycle_table(co.tabulate(omega, 16)), encoding="utf-8")
        result = invoke("reduce", "--input", str(path), "--window", "6", "--format", "json")
        assert result.exit_code == 0
        head, residual = json_lines(result)
        assert head["r"] == "3/4"
        assert residual["status"] == "pass"
        recovered = {n: value for n, value in head["beta"]["values"]}
        assert recovered == {0: "-1/2", 3: "2", -5: "-1/3"}

    def test_non_cocycle_rejected(self):
        result = invoke("reduce", "--input", str(SIGN_TABLE), "--window", "3",
                        "--format", "json")
        assert result.exit_code == 2
        record = json_lines(result)[0]
        assert record["status"] == "input_error"
        assert "not a cocycle" in record["message"]

    def test_input_required(self):
        assert invoke("reduce").exit_code == 2

    def test_window_too_small(self):
        result = invoke("reduce", "--input", str(VIRASORO_TABLE), "--window", "1")
        assert result.exit_code == 2
        assert "window" in result.output


class TestNontrivial:
    def test_virasoro_witness(self):
        result = invoke("nontrivial", "--virasoro", "--window", "8", "--format", "json")
        assert result.exit_code == 0
        assert json_lines(result)[0]["witness"] == [1, 2]

    def test_text_form(self):
        result = invoke("nontrivial", "--virasoro", "--window", "8")
        assert result.output == ("WITNESS nontriviality-witness cocycle=virasoro "
                                 "window=8 witness=1,2\n")

    def test_coboundary_has_none(self, tmp_path):
        beta = co.OneCochain(4, {0: Fraction(2), 1: Fraction(-1)})
        path = tmp_path / "coboundary.tsv"
        path.write_text(co.dump_cocycle_table(co.tabulate(co.coboundary(beta), 8)),
                        encoding="utf-8")
        result = invoke("nontrivial", "--input", str(path), "--window", "4",
                        "--format", "json")
        assert result.exit_code == 0
        assert json_lines(result)[0]["witness"] is None
        text = invoke("nontrivial", "--input", str(path), "--window", "4")
        assert text.output.endswith("witness=none\n")

    def test_requires_exactly_one_source(self):
        assert invoke("nontrivial", "--window", "4").exit_code == 2
