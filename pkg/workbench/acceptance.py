import logging
from typing import Callable, Dict, List

from servers import citations
from servers.classifier.engine import classify, feed_store
from servers.classifier.descriptor import load_descriptor
from servers.motive.motive import FactStore, chow_kunneth_k3, motives_isomorphic

from .errors import WorkbenchError
from .reports import CheckResult, Report

logger = logging.getLogger(__name__)


def _raises(call: Callable[[], object], error_name: str) -> bool:
    try:
        call()
    except WorkbenchError as e:
        return e.name == error_name
    return False


def _report(command: str, checks: List[CheckResult], cited: List[str], results=None) -> Report:
    return Report(command=command, results=results or {}, checks=tuple(checks), citations=tuple(cited))


def lattice_invariants(workbench) -> Report:
    u = workbench.lattice(names=["U"]).results["invariants"]["invariants"]
    e8 = workbench.lattice(names=["E8"]).results["invariants"]["invariants"]
    e8_2 = workbench.lattice(names=["E8"], twist=-2).results
    e8_2_inv = e8_2["invariants"]["invariants"]
    checks = [
        CheckResult(name="U det -1", passed=u["det"] == -1),
        CheckResult(name="U signature (1,1)", passed=tuple(u["signature"]) == (1, 1)),
        CheckResult(name="U even unimodular", passed=u["even"] and u["unimodular"]),
        CheckResult(name="E8 det 1", passed=e8["det"] == 1),
        CheckResult(name="E8 signature (8,0)", passed=tuple(e8["signature"]) == (8, 0)),
        CheckResult(name="E8 even", passed=e8["even"]),
        CheckResult(name="E8(-2) det 256", passed=e8_2_inv["det"] == 256),
        CheckResult(
            name="E8(-2) discriminant (Z/2)^8",
            passed=list(e8_2["discriminant"]["invariant_factors"]) == [2] * 8,
        ),
    ]
    return _report("acceptance lattice", checks, [citations.ANTI_INVARIANT])


def h2_model(workbench) -> Report:
    return workbench.nikulin_verify()


def euler_balance(workbench) -> Report:
    balance = workbench.run("acceptance balance", "nikulin", "euler_balance", e_X=24, t=6, k=8)
    checks = [
        CheckResult(name="e(Y) = 24", passed=balance.results["e_Y"] == 24),
        CheckResult(
            name="odd balance rejected",
            passed=_raises(
                lambda: workbench.run("acceptance balance", "nikulin", "euler_balance", e_X=24, t=5, k=8),
                "NonIntegralBalance",
            ),
        ),
    ]
    return _report("acceptance balance", checks, [citations.LEMMA_2])


def ns_sweep(workbench) -> Report:
    parts = {f"d={d}": workbench.ns_classify(d) for d in range(1, workbench.settings.ns_sweep_max + 1)}
    sweep = Report.merge("acceptance ns", {}, parts)
    case_ii = parts["d=2"].results["glue"]
    pencils = workbench.ns_pencils(2)
    checks = list(sweep.checks) + [
        CheckResult(name="d=2: v^2 = -4", passed=case_ii["v^2"] == -4),
        CheckResult(name="d=2: ((L+v)/2)^2 = 0", passed=case_ii["((L+v)/2)^2"] == 0),
    ]
    checks += [CheckResult(name=f"pencils: {c.name}", passed=c.passed) for c in pencils.checks]
    return _report("acceptance ns", checks, list(sweep.citations) + list(pencils.citations))


def elliptic_models(workbench) -> Report:
    return workbench.elliptic_sweep()


def involution_algebra(workbench) -> Report:
    return workbench.run("acceptance algebra", "motive", "algebra")


def valence_outcomes(workbench) -> Report:
    minus = workbench.run("acceptance valence", "motive", "valence", v_gamma="-1", p_g=1)
    plus = workbench.run("acceptance valence", "motive", "valence", v_gamma="1", p_g=1)
    checks = list(minus.checks) + [
        CheckResult(name="v = -1 gives T2Isomorphism", passed=minus.results["outcome"] == "T2Isomorphism"),
        CheckResult(name="v = 1 gives T2QuotientZero", passed=plus.results["outcome"] == "T2QuotientZero"),
        CheckResult(
            name="p_g = 0 rejected",
            passed=_raises(
                lambda: workbench.run("acceptance valence", "motive", "valence", v_gamma="-1", p_g=0),
                "ValenceNotUnique",
            ),
        ),
        CheckResult(
            name="Nikulin branch has valence -1",
            passed=minus.results["nikulin_branch"] == {"v_gamma": "-1", "outcome": "T2Isomorphism"},
        ),
        CheckResult(name="Nikulin branch is an isomorphism summand", passed=minus.results["summand"] == "Isomorphism"),
    ]
    return _report("acceptance valence", checks, list(minus.citations) + [citations.REMARK_1])


def classifier_goldens(workbench) -> Report:
    def derived(descriptor) -> List[str]:
        return workbench.classify(descriptor).results["derived"]

    rho_20 = {"kind": "K3", "rho": 20}
    with_nikulin = {**rho_20, "features": [{"type": "NikulinInvolution"}]}
    fermat = {"kind": "K3", "features": [{"type": "NonSymplecticTrivialGroup", "m": 4, "unimodular": True}]}
    m_3 = {"kind": "K3", "features": [{"type": "NonSymplecticTrivialGroup", "m": 3, "unimodular": True}]}
    enriques = {"kind": "K3", "features": [{"type": "NonSymplecticInvolution", "fixed_locus_empty": True}]}
    even_7 = {"kind": "K3", "features": [{"type": "EvenSet", "k": 7}]}
    even_8 = {"kind": "K3", "features": [{"type": "EvenSet", "k": 8}]}

    store = feed_store(classify(load_descriptor(with_nikulin)), FactStore())
    motive_iso = motives_isomorphic(chow_kunneth_k3(20, "X"), chow_kunneth_k3(20, "Y"), store)
    checks = [
        CheckResult(name="rho 20 is finite dimensional", passed="FiniteDimensional" in derived(rho_20)),
        CheckResult(name="Nikulin at rho 20 gives h(X) = h(Y)", passed="MotiveIsoWithQuotient" in derived(with_nikulin)),
        CheckResult(name="derived facts identify h(X) and h(Y)", passed=motive_iso),
        CheckResult(
            name="m = 4 unimodular gives FermatCover(4)",
            passed={"FermatCover(4)", "FiniteDimensional"} <= set(derived(fermat)),
        ),
        CheckResult(name="m = 3 gives no Fermat cover", passed=not any(c.startswith("FermatCover") for c in derived(m_3))),
        CheckResult(name="non-symplectic involution kills t_2(Y)", passed="T2QuotientZero" in derived(enriques)),
        CheckResult(name="EvenSet(7) inconsistent", passed=_raises(lambda: workbench.classify(even_7), "Inconsistent")),
        CheckResult(name="EvenSet(8) leaves finite dimensionality open", passed="FiniteDimensional" not in derived(even_8)),
    ]
    cited = [citations.THEOREM_2, citations.THEOREM_3, citations.THEOREM_5, citations.REMARK_3, citations.EVEN_SETS]
    return _report("acceptance classifier", checks, cited)


ACCEPTANCE: Dict[str, Callable] = {
    "1 lattice invariants": lattice_invariants,
    "2 H2 model": h2_model,
    "3 Euler balance": euler_balance,
    "4 Neron-Severi sweep": ns_sweep,
    "5 elliptic models": elliptic_models,
    "6 involution algebra": involution_algebra,
    "7 valence outcomes": valence_outcomes,
    "8 classifier goldens": classifier_goldens,
}


def run_acceptance(workbench) -> Report:
    parts = {}
    for name, criterion in ACCEPTANCE.items():
        logger.info(f"Acceptance {name}")
        parts[name] = criterion(workbench)
    return Report.merge("selftest", {"seed": workbench.settings.seed}, parts)
