import json

import pytest
from click.testing import CliRunner

from main import main
from servers import citations

EXAMPLE = ["--a", "0,0,0,0,1", "--b", "1,0,0,0,0,0,0,0,1"]


@pytest.fixture
def runner():
    return CliRunner()


def run_json(runner, *args):
    result = runner.invoke(main, [*args, "--json"])
    return result, json.loads(result.stdout)


def test_nikulin_verify(runner):
    result, report = run_json(runner, "nikulin", "verify")
    assert result.exit_code == 0
    assert report["pass"] is True
    assert report["command"] == "nikulin verify"
    assert citations.LEMMA_2 in report["citations"]


def test_nikulin_trace(runner):
    result, report = run_json(runner, "nikulin", "trace", "--rho", "9")
    assert result.exit_code == 0
    assert report["results"]["ns_trace"] == -7
    assert report["results"]["tr_trace"] == 13


def test_ns_classify(runner):
    result, report = run_json(runner, "ns", "classify", "--d", "2")
    assert result.exit_code == 0
    assert report["results"]["candidate_count"] == 2
    assert report["results"]["glue"]["v^2"] == -4


def test_elliptic_analyze_with_quotient(runner):
    result, report = run_json(runner, "elliptic", "analyze", *EXAMPLE, "--quotient")
    assert result.exit_code == 0
    assert report["results"]["rho"] == 10
    assert report["results"]["printed_quotient"]["swaps_fibers"] is False
    assert citations.QUOTIENT_PRINTED in report["citations"]


def test_lattice_literal(runner):
    result, report = run_json(runner, "lattice", "--literal", '{"rank": 1, "gram": [[2]]}')
    assert result.exit_code == 0
    assert report["results"]["discriminant"]["invariant_factors"] == [2]


def test_motive(runner):
    result, report = run_json(runner, "motive", "--rho", "9")
    assert result.exit_code == 0
    assert report["results"]["decompose"]["betti"] == [1, 0, 22, 0, 1]


def test_classify_descriptor_file(runner, tmp_path):
    descriptor = tmp_path / "x.json"
    descriptor.write_text(json.dumps({"kind": "K3", "rho": 20, "features": [{"type": "NikulinInvolution"}]}))
    result, report = run_json(runner, "classify", "--descriptor", str(descriptor))
    assert result.exit_code == 0
    assert "MotiveIsoWithQuotient" in report["results"]["derived"]


def test_json_output_is_byte_identical(runner):
    first = runner.invoke(main, ["elliptic", "analyze", *EXAMPLE, "--json"])
    second = runner.invoke(main, ["elliptic", "analyze", *EXAMPLE, "--json"])
    assert first.stdout == second.stdout


def test_show_log_keeps_stdout_clean(runner):
    result = runner.invoke(main, ["--show-log", "ns", "pencils", "--json"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["pass"] is True


def test_bad_coefficients_are_a_usage_error(runner):
    result = runner.invoke(main, ["elliptic", "analyze", "--a", "1,x", "--b", "1"])
    assert result.exit_code == 2


def test_non_rational_v_gamma_is_a_usage_error(runner):
    result = runner.invoke(main, ["motive", "--rho", "10", "--v-gamma", "abc"])
    assert result.exit_code == 2
    assert "--v-gamma" in result.stderr


def test_missing_option_is_a_usage_error(runner):
    result = runner.invoke(main, ["ns", "classify"])
    assert result.exit_code == 2


@pytest.mark.parametrize(
    "args, error",
    [
        (["nikulin", "trace", "--rho", "8"], "RankOutOfRange"),
        (["nikulin", "balance", "--t", "5"], "NonIntegralBalance"),
        (["ns", "classify", "--d", "0"], "BadPolarization"),
        (["elliptic", "analyze", "--a", "0", "--b", "1,0,0,0,0,0,0,0,1"], "NonGeneric"),
        (["motive", "--p-g", "0"], "ValenceNotUnique"),
        (["lattice", "--name", "D4"], "UnknownLattice"),
    ],
)
def test_domain_errors_exit_1(runner, args, error):
    result = runner.invoke(main, args)
    assert result.exit_code == 1
    assert f"error: {error}:" in result.stderr
    assert result.stdout == ""


def test_inconsistent_descriptor(runner, tmp_path):
    descriptor = tmp_path / "bad.json"
    descriptor.write_text(json.dumps({"kind": "K3", "features": [{"type": "EvenSet", "k": 7}]}))
    result = runner.invoke(main, ["classify", "--descriptor", str(descriptor)])
    assert result.exit_code == 1
    assert "error: Inconsistent:" in result.stderr
