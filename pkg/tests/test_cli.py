import io
import json
from fractions import Fraction
from pathlib import Path

import polars as pl
import pytest
from click.testing import CliRunner

from cli import cli
from expansion import SliceFunction
from function_files import function_to_dict, write_document

DATA = Path(__file__).resolve().parent.parent / "data"
X1 = str(DATA / "x1_4_2.json")


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, [str(a) for a in args])


def csv_rows(result):
    return pl.read_csv(io.StringIO(result.stdout)).to_dicts()


def majority_file(tmp_path):
    f = SliceFunction.from_callable(7, 3, lambda S: 1 if len(set(S) & {1, 2, 3}) >= 2 else 0)
    path = tmp_path / "majority.json"
    write_document(function_to_dict(f), path)
    return str(path)


class TestBasis:
    def test_degree_two_on_four(self, runner):
        result = invoke(runner, "basis", "--n", 4, "--d", 2, "--format", "csv")
        assert result.exit_code == 0
        rows = csv_rows(result)
        assert [(r["top_set"], str(r["c_B"])) for r in rows] == [("(2,4)", "1"), ("(3,4)", "3")]

    def test_degree_zero(self, runner):
        result = invoke(runner, "basis", "--n", 5, "--d", 0, "--format", "csv")
        assert result.exit_code == 0
        assert [r["top_set"] for r in csv_rows(result)] == ["()"]

    def test_polynomials(self, runner):
        result = invoke(runner, "basis", "--n", 3, "--d", 1, "--polynomials", "--format", "csv")
        assert result.exit_code == 0
        assert csv_rows(result)[0]["chi_B"] == "x1 - x2"

    def test_degree_too_large(self, runner):
        result = invoke(runner, "basis", "--n", 3, "--d", 2)
        assert result.exit_code == 2


class TestExpandSynthesize:
    def test_expand_coordinate(self, runner):
        result = invoke(runner, "expand", "--slice", 4, 2, "--input", X1)
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["coeffs"] == [
            {"top_set": [], "value": "1/2"},
            {"top_set": [2], "value": "1/2"},
            {"top_set": [3], "value": "1/6"},
            {"top_set": [4], "value": "1/12"},
        ]

    def test_slice_mismatch(self, runner):
        result = invoke(runner, "expand", "--slice", 5, 2, "--input", X1)
        assert result.exit_code == 2

    def test_round_trip_through_files(self, runner, tmp_path):
        expansion = tmp_path / "x1.expansion.json"
        back = tmp_path / "x1.json"
        assert invoke(runner, "expand", "--input", X1, "--output", expansion).exit_code == 0
        assert invoke(runner, "synthesize", "--input", expansion, "--output", back).exit_code == 0
        assert json.loads(back.read_text(encoding="utf-8")) == json.loads(
            write_document(function_to_dict(SliceFunction.coordinate(4, 2, 1)))
        )

    def test_file_not_in_utf8(self, runner, tmp_path):
        path = tmp_path / "latin.json"
        path.write_bytes(b'{"n": 4, "k": 2, "values": "\xff\xfe"}')
        result = invoke(runner, "expand", "--input", path)
        assert result.exit_code == 2
        assert "UTF-8" in result.output

    def test_malformed_file(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"n": 4, "k": 2, "values": [{"set": [1, 2], "value": "0.5"}]}), encoding="utf-8")
        result = invoke(runner, "expand", "--input", path)
        assert result.exit_code == 2
        assert "registro 0" in result.output


class TestInfluence:
    def test_coordinate(self, runner):
        result = invoke(runner, "influence", "--input", X1)
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        values = {(p["i"], p["j"]): p["value"] for p in document["pairs"]}
        assert values[(1, 2)] == "1/3"
        assert values[(2, 3)] == "0"
        assert document["m"] == 4
        assert Fraction(document["total_influence"]) == sum(Fraction(v) for v in values.values()) / 4

    def test_m_below_two(self, runner):
        assert invoke(runner, "influence", "--input", X1, "--m", 1).exit_code == 2


class TestSpectrum:
    def test_johnson_graph(self, runner):
        result = invoke(runner, "spectrum", "--slice", 4, 2, "--profile", "0,1,0", "--format", "csv")
        assert result.exit_code == 0
        rows = csv_rows(result)
        assert [(str(r["eigenvalue"]), r["multiplicity"]) for r in rows] == [("4", 1), ("0", 3), ("-2", 2)]

    def test_named_profile(self, runner):
        result = invoke(runner, "spectrum", "--slice", 5, 2, "--profile", "kneser", "--format", "csv")
        assert [str(r["eigenvalue"]) for r in csv_rows(result)] == ["3", "-2", "1"]

    def test_wrong_length(self, runner):
        assert invoke(runner, "spectrum", "--slice", 4, 2, "--profile", "1,2").exit_code == 2


class TestNoise:
    def test_zero_time_is_identity(self, runner):
        result = invoke(runner, "noise", "--input", X1, "--t", 0)
        assert result.exit_code == 0
        values = [v["value"] for v in json.loads(result.stdout)["values"]]
        assert values == pytest.approx([1, 1, 1, 0, 0, 0], abs=1e-12)

    def test_negative_time(self, runner):
        assert invoke(runner, "noise", "--input", X1, "--t", -1).exit_code == 2

    def test_infinite_time(self, runner):
        result = invoke(runner, "noise", "--input", X1, "--t", "inf")
        assert result.exit_code == 2
        assert "NaN" not in result.output


class TestJunta:
    def test_tau(self, runner):
        result = invoke(runner, "junta", "--input", X1, "--tau", "1/4")
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["important_set"] == [1, 2]
        assert document["distance"] == "0"

    def test_eps(self, runner, tmp_path):
        result = invoke(runner, "junta", "--input", majority_file(tmp_path), "--eps", "0")
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["distance"] == "0"
        assert {1, 2, 3} <= set(document["important_set"])

    @pytest.mark.parametrize("options", [[], ["--tau", "1/4", "--eps", "0"]])
    def test_exactly_one_threshold(self, runner, options):
        assert invoke(runner, "junta", "--input", X1, *options).exit_code == 2

    def test_bad_rational(self, runner):
        assert invoke(runner, "junta", "--input", X1, "--tau", "0.25").exit_code == 2

    def test_non_boolean(self, runner):
        path = DATA / "chi_2_4_on_4_2.json"
        result = invoke(runner, "junta", "--input", path, "--tau", "1/4")
        assert result.exit_code == 2


class TestVerify:
    def test_counting_suite(self, runner):
        result = invoke(runner, "verify", "--suite", "counting", "--max-n", 4, "--format", "csv", "--no-progress")
        assert result.exit_code == 0
        assert "suite,property" in result.output
        assert "✅" in result.output

    def test_unknown_suite(self, runner):
        assert invoke(runner, "verify", "--suite", "nope").exit_code == 2

    def test_bad_environment(self, runner, monkeypatch):
        monkeypatch.setenv("YOUNG_VERIFY_MAX_N", "zero")
        result = invoke(runner, "verify", "--suite", "counting")
        assert result.exit_code == 2
        assert "YOUNG_VERIFY_MAX_N" in result.output
