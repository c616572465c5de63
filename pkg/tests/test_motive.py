import threading

import pytest
from sympy import Rational

from servers.motive.involution import (
    ALPHA,
    DIAGONAL,
    P_MINUS,
    P_PLUS,
    XI,
    ZERO,
    InvolutionAction,
    SummandOutcome,
    T2Outcome,
    ValuedCorrespondence,
    action_from_valence,
    corollary1_trichotomy,
    gamma_valence_from_projector,
    klein_four_action,
    nikulin_valence_branch,
    projector_valence_check,
    pull,
    push,
    theorem1_decide,
    valence_compose,
)
from servers.motive.motive import (
    UNIT,
    FactStore,
    MotiveExpr,
    betti_dims,
    blowup,
    blowup_8,
    chow_kunneth_k3,
    kimura_vanishing,
    lef,
    motives_isomorphic,
    nikulin_motive_comparison,
    surface_labels,
    t2,
)
from servers.motive.server import MotiveServer
from workbench.errors import InconsistentValence, NoValence, RankOutOfRange, ValenceNotUnique


def test_chow_kunneth_of_k3():
    h_x = chow_kunneth_k3(9)
    assert h_x.count(UNIT) == 1
    assert h_x.count(lef(1)) == 9
    assert h_x.count(lef(2)) == 1
    assert h_x.transcendental() == [t2("X", 13)]
    assert str(h_x) == "1 + L^(+9) + L^2 + t2(X; 13)"


@pytest.mark.parametrize("rho", [1, 9, 20])
def test_betti_numbers(rho):
    assert betti_dims(chow_kunneth_k3(rho)) == [1, 0, 22, 0, 1]


def test_k3_rank_bounds():
    with pytest.raises(RankOutOfRange):
        chow_kunneth_k3(21)


def test_blowup_adds_lefschetz_classes():
    h_x = chow_kunneth_k3(9)
    blown_up = blowup_8(h_x)
    assert sum(betti_dims(blown_up)) == 32
    assert blown_up.count(lef(1)) == 17
    assert blown_up.transcendental() == h_x.transcendental()
    assert blowup(h_x, 0) == h_x


def test_expressions_are_order_independent():
    assert MotiveExpr.of([t2("X", 2), lef(1), UNIT]) == MotiveExpr.of([UNIT, lef(1), t2("X", 2)])


def test_transcendental_atoms_need_a_fact():
    h_x, h_y = chow_kunneth_k3(10, "X"), chow_kunneth_k3(10, "Y")
    assert not motives_isomorphic(h_x, h_y)
    store = FactStore()
    store.register("T2Iso", ("Y", "X"), "test")
    assert motives_isomorphic(h_x, h_y, store)


def test_different_picard_ranks_never_match():
    store = FactStore()
    store.register("T2Iso", ("X", "Y"), "test")
    assert not motives_isomorphic(chow_kunneth_k3(10, "X"), chow_kunneth_k3(11, "Y"), store)


def test_kimura_vanishing_needs_finite_dimensionality():
    expr = MotiveExpr.of([t2("Y", 12), t2("N", 0)])
    store = FactStore()
    assert kimura_vanishing(expr, store, "X") == expr
    store.register("FiniteDimensional", ("X",), "test")
    assert kimura_vanishing(expr, store, "X").atoms == (t2("Y", 12),)


def test_nikulin_comparison():
    store = FactStore()
    assert not nikulin_motive_comparison(9, store)["isomorphic"]
    store.register("FiniteDimensional", ("X",), "test")
    result = nikulin_motive_comparison(9, store)
    assert result["isomorphic"]
    assert store.holds("T2Iso", "X", "Y")
    assert store.holds("MotiveIso", "X", "Y")


def test_fact_store_round_trip():
    store = FactStore()
    store.register("FiniteDimensional", ["X"], "cite")
    store.register("FiniteDimensional", ["X"], "cite")
    restored = FactStore.from_json(store.to_json())
    assert restored.facts == store.facts
    assert len(restored.facts) == 1


def test_fact_store_concurrent_registration():
    store = FactStore()

    def worker(n):
        for i in range(50):
            store.register("T2Iso", (f"X{n}", f"Y{i}"), "cite")

    threads = [threading.Thread(target=worker, args=(n,)) for n in range(4)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    assert len(store.facts) == 200


def test_involution_algebra():
    assert ALPHA * ALPHA == XI
    assert P_PLUS * P_PLUS == P_PLUS
    assert P_MINUS * P_MINUS == P_MINUS
    assert P_PLUS * P_MINUS == ZERO
    assert P_PLUS + P_MINUS == XI


def test_push_and_pull():
    assert push(XI) == push(ALPHA) == 2
    assert push(P_MINUS) == 0
    assert push(P_PLUS) == 2
    assert pull(1) == XI + ALPHA
    assert push(pull(1)) == 4


def test_valence_composition():
    assert valence_compose(-1, -1) == -1
    assert valence_compose(Rational(1, 2), 2) == -1
    with pytest.raises(NoValence):
        valence_compose(None, 1)
    assert DIAGONAL.compose(DIAGONAL).valence == -1


def test_projector_valences():
    assert projector_valence_check(0)
    assert projector_valence_check(-1)
    assert not projector_valence_check(1)
    assert gamma_valence_from_projector(0) == -1
    assert gamma_valence_from_projector(-1) == 1
    with pytest.raises(InconsistentValence):
        gamma_valence_from_projector(1)


@pytest.mark.parametrize(
    "v_gamma, outcome", [("-1", T2Outcome.T2_ISOMORPHISM), ("1", T2Outcome.T2_QUOTIENT_ZERO), (-1, T2Outcome.T2_ISOMORPHISM)]
)
def test_theorem1_outcomes(v_gamma, outcome):
    assert theorem1_decide(v_gamma, p_g=1) is outcome


def test_theorem1_rejects():
    with pytest.raises(ValenceNotUnique):
        theorem1_decide("-1", p_g=0)
    with pytest.raises(InconsistentValence):
        theorem1_decide("1/2", p_g=1)


@pytest.mark.parametrize(
    "action, summand",
    [
        (InvolutionAction.PLUS_ONE, SummandOutcome.ISOMORPHISM),
        (InvolutionAction.MINUS_ONE, SummandOutcome.QUOTIENT_ZERO),
        ("Mixed", SummandOutcome.PROPER_SUMMAND),
    ],
)
def test_trichotomy(action, summand):
    assert corollary1_trichotomy(action) is summand


def test_action_from_valence():
    assert action_from_valence("-1") is InvolutionAction.PLUS_ONE
    assert action_from_valence("1") is InvolutionAction.MINUS_ONE


def test_nikulin_branch_is_unique():
    v_gamma, outcome = nikulin_valence_branch()
    assert v_gamma == -1
    assert outcome is T2Outcome.T2_ISOMORPHISM
    with pytest.raises(InconsistentValence):
        nikulin_valence_branch(quotient_has_t2=False)


def test_klein_four():
    assert klein_four_action(-1, -1) is InvolutionAction.PLUS_ONE
    assert klein_four_action(1, -1) is InvolutionAction.MINUS_ONE
    with pytest.raises(InconsistentValence):
        klein_four_action(0, 1)


def test_valued_correspondence():
    total = DIAGONAL + DIAGONAL
    assert total.valence == -2
    assert total.indices == (2, 2)
    assert ValuedCorrespondence(valence=0, indices=(1, 0)).transpose().indices == (0, 1)
    assert (DIAGONAL + ValuedCorrespondence()).valence is None


def test_server_tools():
    server = MotiveServer()
    for tool, arguments in [("decompose", {"rho": 9}), ("algebra", {}), ("valence", {"v_gamma": "-1", "p_g": 1})]:
        payload = server.call_tool(tool, arguments)
        assert payload["success"], tool
        assert all(check["passed"] for check in payload["checks"]), tool


def test_compare_does_not_leak_assumptions():
    server = MotiveServer()
    assumed = server.call_tool("compare", {"rho": 9, "finite_dimensional": True})
    assert assumed["isomorphic"]
    plain = server.call_tool("compare", {"rho": 9})
    assert not plain["isomorphic"]
    assert plain["checks"][0]["passed"]
    assert server.store.facts == ()


def test_valence_tool_error():
    payload = MotiveServer().call_tool("valence", {"v_gamma": "-1", "p_g": 0})
    assert payload["error_type"] == "ValenceNotUnique"


def test_surface_labels():
    assert surface_labels() == ("X", "Y")
    assert surface_labels("abc") == ("X@abc", "Y@abc")


def test_compare_reads_only_facts_about_its_surface():
    store = FactStore()
    store.register("FiniteDimensional", ("X@abc",), "cite")
    server = MotiveServer(store)
    assert not server.call_tool("compare", {"rho": 9})["isomorphic"]
    scoped = server.call_tool("compare", {"rho": 9, "surface": "abc"})
    assert scoped["isomorphic"]
    assert scoped["surface"] == "X@abc"
    assert not server.call_tool("compare", {"rho": 9, "surface": "def"})["isomorphic"]


@pytest.mark.parametrize(
    "tool, arguments",
    [("compare", {"rho": "9"}), ("algebra", {"rho": 9}), ("decompose", {}), ("missing", {})],
)
def test_arguments_outside_the_schema_are_rejected(tool, arguments):
    with pytest.raises(ValueError):
        MotiveServer().call_tool(tool, arguments)
