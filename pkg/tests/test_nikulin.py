import pytest

from servers.lattice.lattice import invariants
from servers.nikulin.nikulin import (
    EvenSetBranch,
    euler_balance_solve,
    even_set_branch,
    hodge_isometry_parity,
    ns_trace_decomposition,
    quotient_ns_basis_count,
    quotient_rank,
    verify_invariant_lattices,
)
from servers.nikulin.server import NikulinServer
from workbench.errors import ForbiddenEvenSet, NonIntegralBalance, RankOutOfRange


def test_k3_lattice_is_even_unimodular(k3_model):
    result = invariants(k3_model.lattice)
    assert result.rank == 22
    assert result.signature == (3, 19)
    assert result.even and result.unimodular


def test_swap_invariant_lattices(k3_model):
    report = verify_invariant_lattices(k3_model)
    assert report.fixed_ok
    assert report.antifixed_ok
    assert report.complement_ok
    assert (report.fixed_rank, report.antifixed_rank) == (14, 8)
    assert report.trace == 6
    assert report.fixed_rank - report.antifixed_rank == report.trace


def test_trace_split_at_minimal_rank():
    decomposition = ns_trace_decomposition(9)
    assert decomposition.r == 1
    assert decomposition.ns_trace == -7
    assert decomposition.tr_trace == 13
    assert decomposition.total == 6


@pytest.mark.parametrize("rho", range(9, 21))
def test_trace_split_always_sums_to_six(rho):
    assert ns_trace_decomposition(rho).total == 6


@pytest.mark.parametrize("rho", [8, 21])
def test_trace_split_rejects_rank(rho):
    with pytest.raises(RankOutOfRange):
        ns_trace_decomposition(rho)


def test_euler_balance():
    assert euler_balance_solve(24, 6, 8) == 24
    with pytest.raises(NonIntegralBalance):
        euler_balance_solve(24, 5, 8)


@pytest.mark.parametrize(
    "k, branch",
    [(0, EvenSetBranch.TRIVIAL), (8, EvenSetBranch.NIKULIN_QUOTIENT_K3), (16, EvenSetBranch.KUMMER_OF_ABELIAN)],
)
def test_even_set_branches(k, branch):
    assert even_set_branch(k) is branch


def test_forbidden_even_set():
    with pytest.raises(ForbiddenEvenSet):
        even_set_branch(7)


def test_quotient_picard_rank():
    assert quotient_rank(15) == 15
    basis = quotient_ns_basis_count(9)
    assert basis["rho_Y"] == 9
    assert basis["rho_blowup"] == 17
    assert basis["exceptional_curves"] + basis["invariant_classes"] == basis["rho_Y"]


def test_hodge_isometry_parity():
    assert hodge_isometry_parity(10)["isometry_possible"]
    assert not hodge_isometry_parity(9)["isometry_possible"]
    with pytest.raises(RankOutOfRange):
        hodge_isometry_parity(0)


def test_verify_tool_passes_every_check():
    payload = NikulinServer().call_tool("verify", {})
    assert payload["success"]
    assert payload["e_Y"] == 24
    assert all(check["passed"] for check in payload["checks"])


def test_ns_trace_tool():
    payload = NikulinServer().call_tool("ns_trace", {"rho": 9})
    assert payload["quotient_basis"]["rho_Y"] == 9
    assert not payload["transcendental_parity"]["isometry_possible"]
    assert all(check["passed"] for check in payload["checks"])


def test_even_set_tool_returns_error_type():
    payload = NikulinServer().call_tool("even_set", {"k": 7})
    assert not payload["success"]
    assert payload["error_type"] == "ForbiddenEvenSet"
