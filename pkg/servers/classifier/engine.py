"""Forward-chaining rules over surface descriptors.

Each rule fires at most once. A fact names the rule that produced it, the
verbatim statement it rests on and its premises: descriptor fields
("kind=K3", "feature:NikulinInvolution", "assume:FiniteDimensional") or
references "<rule>:<conclusion>" to earlier facts.
"""
import json
import logging
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from servers import citations
from servers.motive.motive import FactStore
from workbench.errors import Inconsistent

from .descriptor import SurfaceDescriptor

logger = logging.getLogger(__name__)

ALLOWED_NON_SYMPLECTIC_RHO = (2, 4, 6, 10, 12, 16, 18, 20)
ALLOWED_EVEN_SETS = (0, 8, 16)
NIKULIN_MIN_RHO = 9


class Fact(BaseModel):
    model_config = ConfigDict(frozen=True)

    conclusion: str
    rule_id: str
    citation: str
    premises: Tuple[str, ...] = ()
    also: Tuple[str, ...] = ()
    subject: str = "X"
    hypothesis: bool = False

    @property
    def ref(self) -> str:
        return f"{self.rule_id}:{self.conclusion}"

    def concludes(self, name: str) -> bool:
        return self.conclusion == name or name in self.also


class Derivation(BaseModel):
    model_config = ConfigDict(frozen=True)

    facts: Tuple[Fact, ...] = ()

    @model_validator(mode="after")
    def _check_provenance(self) -> "Derivation":
        seen = set()
        for fact in self.facts:
            for premise in fact.premises:
                if ":" in premise and not premise.startswith(("feature:", "assume:")) and premise not in seen:
                    raise ValueError(f"{fact.ref} cites {premise} before it is derived")
            seen.add(fact.ref)
        return self

    def holds(self, name: str) -> bool:
        return any(f.concludes(name) for f in self.facts)

    def fact_for(self, name: str) -> Optional[Fact]:
        return next((f for f in self.facts if f.concludes(name)), None)

    def by_rule(self, rule_id: str) -> List[Fact]:
        return [f for f in self.facts if f.rule_id == rule_id]

    def conclusions(self) -> List[str]:
        names = []
        for fact in self.facts:
            for name in (fact.conclusion,) + fact.also:
                if name not in names:
                    names.append(name)
        return names


class _State:
    def __init__(self, descriptor: SurfaceDescriptor):
        self.descriptor = descriptor
        self.facts: List[Fact] = []

    def derived(self, name: str) -> Optional[Fact]:
        return next((f for f in self.facts if f.subject == "X" and f.concludes(name)), None)

    def premise_for(self, name: str) -> Optional[str]:
        """Where ``name`` comes from: a derived fact or a feature/assumption of the descriptor"""
        fact = self.derived(name)
        if fact is not None:
            return fact.ref
        if self.descriptor.has(name):
            return f"feature:{name}"
        if self.descriptor.assumes(name):
            return f"assume:{name}"
        return None

    def is_k3(self) -> bool:
        return self.descriptor.kind == "K3"

    def add(self, **fields) -> Fact:
        fact = Fact(**fields)
        self.facts.append(fact)
        return fact


Rule = Callable[[_State], bool]


def _singular_rank(state: _State) -> bool:
    rho = state.descriptor.rho
    if not state.is_k3() or rho not in (19, 20):
        return False
    state.add(
        conclusion="FiniteDimensional",
        also=("AbelianSubcategory",),
        rule_id="R1",
        citation=citations.THEOREM_2,
        premises=("kind=K3", f"rho={rho}"),
    )
    return True


def _nikulin_with_finite_motive(state: _State) -> bool:
    nikulin = state.premise_for("NikulinInvolution")
    finite = state.premise_for("FiniteDimensional")
    if not state.is_k3() or nikulin is None or finite is None:
        return False
    state.add(
        conclusion="MotiveIsoWithQuotient",
        also=("T2IsoWithQuotient",),
        rule_id="R2",
        citation=citations.THEOREM_3,
        premises=("kind=K3", nikulin, finite),
        hypothesis=finite.startswith("assume:"),
    )
    return True


def _nikulin_with_valence(state: _State) -> bool:
    nikulin = state.premise_for("NikulinInvolution")
    condition = state.premise_for("ValenceExists") or state.premise_for("IdentityOnZeroCycles")
    if not state.is_k3() or nikulin is None or condition is None:
        return False
    state.add(
        conclusion="T2IsoWithQuotient",
        rule_id="R3",
        citation=citations.THEOREM_4,
        premises=("kind=K3", nikulin, condition),
        hypothesis=True,
    )
    return True


def _fermat_cover(state: _State) -> bool:
    if not state.is_k3():
        return False
    covers = []
    for feature in state.descriptor.features_of("NonSymplecticTrivialGroup"):
        if feature.m == 3:
            logger.debug("R4 skipped: m = 3")
            continue
        n = feature.m if feature.unimodular else 2 * feature.m
        if n < 4:
            logger.debug(f"R4 skipped: Fermat degree {n} < 4")
            continue
        rho = state.descriptor.rho
        if rho is not None and rho not in ALLOWED_NON_SYMPLECTIC_RHO:
            raise Inconsistent(f"rho = {rho} is impossible with a trivial non-symplectic group", citations.COROLLARY_2)
        covers.append(
            state.add(
                conclusion=f"FermatCover({n})",
                also=("FiniteDimensional",),
                rule_id="R4",
                citation=citations.THEOREM_5,
                premises=("kind=K3", f"feature:{feature.label()}"),
            )
        )
    if not covers:
        return False
    state.add(
        conclusion="RhoIn(" + ",".join(str(r) for r in ALLOWED_NON_SYMPLECTIC_RHO) + ")",
        rule_id="R4",
        citation=citations.COROLLARY_2,
        premises=tuple(cover.ref for cover in covers),
    )
    return True


def _non_symplectic_involution(state: _State) -> bool:
    features = state.descriptor.features_of("NonSymplecticInvolution")
    if not state.is_k3() or not features:
        return False
    for feature in features:
        quotient = "QuotientEnriques" if feature.fixed_locus_empty else "QuotientRational"
        state.add(
            conclusion="T2QuotientZero",
            also=("NotT2Iso", quotient),
            rule_id="R5",
            citation=citations.REMARK_3,
            premises=("kind=K3", f"feature:{feature.label()}"),
        )
    return True


def _elliptic_and_quadrics(state: _State) -> bool:
    if not state.is_k3():
        return False
    fired = False
    for feature, cited in (
        ("EllipticWithTwoTorsionSection", citations.THEOREM_7),
        ("InvariantThreeQuadrics", citations.THREE_QUADRICS),
    ):
        if state.descriptor.has(feature):
            state.add(
                conclusion="T2IsoWithQuotient",
                rule_id="R6",
                citation=cited,
                premises=("kind=K3", f"feature:{feature}"),
            )
            fired = True
    return fired


def _even_sets(state: _State) -> bool:
    fired = False
    for feature in state.descriptor.features_of("EvenSet"):
        premise = f"feature:{feature.label()}"
        if feature.k == 16:
            state.add(
                conclusion="KummerQuotient",
                also=("FiniteDimensional", "T2IsoAll"),
                rule_id="R7",
                citation=citations.KUMMER_EVEN_SET,
                premises=(premise,),
            )
            fired = True
        elif feature.k == 8:
            state.add(
                conclusion="NikulinInvolution",
                rule_id="R7",
                citation=citations.EVEN_SETS,
                premises=(premise,),
                subject="cover",
            )
            fired = True
    return fired


def _nikulin_rank_equality(state: _State) -> bool:
    nikulin = state.premise_for("NikulinInvolution")
    if not state.is_k3() or nikulin is None:
        return False
    state.add(
        conclusion="RhoQuotientEqual",
        also=("Trace6",),
        rule_id="R8",
        citation=citations.LEMMA_2_TRACE,
        premises=("kind=K3", nikulin),
    )
    return True


def _klein_four(state: _State) -> bool:
    nikulin = state.premise_for("NikulinInvolution")
    if not state.is_k3() or nikulin is None or not state.descriptor.has("KleinFourRationalQuotients"):
        return False
    state.add(
        conclusion="T2IsoWithQuotient",
        rule_id="R9",
        citation=citations.KLEIN_FOUR,
        premises=("kind=K3", nikulin, "feature:KleinFourRationalQuotients"),
    )
    return True


RULES: Dict[str, Rule] = {
    "R1": _singular_rank,
    "R2": _nikulin_with_finite_motive,
    "R3": _nikulin_with_valence,
    "R4": _fermat_cover,
    "R5": _non_symplectic_involution,
    "R6": _elliptic_and_quadrics,
    "R7": _even_sets,
    "R8": _nikulin_rank_equality,
    "R9": _klein_four,
}


def check_consistency(descriptor: SurfaceDescriptor):
    if descriptor.kind == "K3":
        if descriptor.q != 0 or descriptor.pg != 1:
            raise Inconsistent(f"a K3 surface has q = 0 and p_g = 1, got q = {descriptor.q}, p_g = {descriptor.pg}",
                               citations.K3_INVARIANTS)
        if descriptor.rho is not None and not 1 <= descriptor.rho <= 20:
            raise Inconsistent(f"rho = {descriptor.rho} outside 1..20", citations.PICARD_RANGE)
    if descriptor.has("NikulinInvolution") and descriptor.rho is not None and descriptor.rho < NIKULIN_MIN_RHO:
        raise Inconsistent(f"a Nikulin involution needs rho >= 9, got {descriptor.rho}", citations.NIKULIN_RANK)
    for feature in descriptor.features_of("EvenSet"):
        if feature.k not in ALLOWED_EVEN_SETS:
            raise Inconsistent(f"an even set of nodal curves has k in {{0, 8, 16}}, got {feature.k}",
                               citations.EVEN_SETS)


def classify(descriptor: SurfaceDescriptor) -> Derivation:
    check_consistency(descriptor)
    state = _State(descriptor)
    fired = set()
    for iteration in range(1, len(RULES) + 2):
        progress = False
        for rule_id, rule in RULES.items():
            if rule_id not in fired and rule(state):
                fired.add(rule_id)
                progress = True
                logger.debug(f"{rule_id} fired on pass {iteration}")
        if not progress:
            break
    return Derivation(facts=tuple(state.facts))


def explain(derivation: Derivation, as_json: bool = False) -> str:
    if as_json:
        return json.dumps(derivation.model_dump(mode="json"), sort_keys=True, indent=2)
    if not derivation.facts:
        return "no facts derived"
    lines = []
    for fact in derivation.facts:
        head = fact.conclusion + (f" (+ {', '.join(fact.also)})" if fact.also else "")
        tag = " [hypothesis]" if fact.hypothesis else ""
        lines.append(f"[{fact.rule_id}] {head}{tag}")
        lines.append(f"    from: {', '.join(fact.premises)}")
        lines.append(f"    cites: {fact.citation}")
    return "\n".join(lines)


def feed_store(derivation: Derivation, store: FactStore, x: str = "X", y: str = "Y") -> FactStore:
    """Register the motive-level conclusions about the surface under the subjects x and y"""
    for fact in derivation.facts:
        if fact.subject != "X":
            continue
        if fact.concludes("FiniteDimensional"):
            store.register("FiniteDimensional", (x,), fact.citation)
        if fact.concludes("T2IsoWithQuotient") or fact.concludes("T2IsoAll"):
            store.register("T2Iso", (x, y), fact.citation)
        if fact.concludes("MotiveIsoWithQuotient"):
            store.register("MotiveIso", (x, y), fact.citation)
    return store
