import itertools
import json

import pytest

from servers import citations
from servers.classifier.descriptor import (
    EllipticWithTwoTorsionSection,
    EvenSet,
    InvariantThreeQuadrics,
    KleinFourRationalQuotients,
    NikulinInvolution,
    NonSymplecticInvolution,
    NonSymplecticTrivialGroup,
    ShiodaInose,
    load_descriptor,
)
from servers.classifier.engine import Derivation, Fact, classify, explain, feed_store
from servers.classifier.server import ClassifierServer
from servers.motive.motive import FactStore
from workbench.errors import BadDescriptor, Inconsistent


def derive(payload) -> Derivation:
    return classify(load_descriptor(payload))


def k3(**fields):
    features = fields.pop("features", [])
    return {"kind": "K3", "features": features, **fields}


NIKULIN = {"type": "NikulinInvolution"}


def test_k3_defaults():
    descriptor = load_descriptor(k3(rho=10))
    assert (descriptor.q, descriptor.pg) == (0, 1)


def test_singular_k3_is_finite_dimensional():
    derivation = derive(k3(rho=20))
    fact = derivation.fact_for("FiniteDimensional")
    assert fact.rule_id == "R1"
    assert fact.citation == citations.THEOREM_2
    assert derivation.holds("AbelianSubcategory")


def test_rank_eighteen_alone_derives_nothing():
    derivation = derive(k3(rho=18))
    assert derivation.facts == ()
    assert explain(derivation) == "no facts derived"


def test_nikulin_chain_cites_earlier_fact():
    derivation = derive(k3(rho=19, features=[NIKULIN]))
    (r2,) = derivation.by_rule("R2")
    assert r2.conclusion == "MotiveIsoWithQuotient"
    assert "R1:FiniteDimensional" in r2.premises
    assert not r2.hypothesis
    assert derivation.holds("T2IsoWithQuotient")
    assert derivation.holds("RhoQuotientEqual") and derivation.holds("Trace6")


def test_assumed_finite_dimensionality_is_a_hypothesis():
    derivation = derive(k3(rho=12, features=[NIKULIN], assumptions=["FiniteDimensional"]))
    (r2,) = derivation.by_rule("R2")
    assert r2.hypothesis
    assert "assume:FiniteDimensional" in r2.premises
    assert "[hypothesis]" in explain(derivation)


def test_valence_condition():
    derivation = derive(k3(rho=12, features=[NIKULIN], assumptions=["ValenceExists"]))
    (r3,) = derivation.by_rule("R3")
    assert r3.conclusion == "T2IsoWithQuotient"
    assert r3.hypothesis
    assert not derivation.holds("MotiveIsoWithQuotient")


@pytest.mark.parametrize("m, unimodular, degree", [(4, True, 4), (2, False, 4), (5, True, 5), (6, False, 12)])
def test_fermat_cover(m, unimodular, degree):
    feature = {"type": "NonSymplecticTrivialGroup", "m": m, "unimodular": unimodular}
    derivation = derive(k3(features=[feature]))
    assert derivation.holds(f"FermatCover({degree})")
    assert derivation.holds("FiniteDimensional")
    assert derivation.holds("RhoIn(2,4,6,10,12,16,18,20)")


@pytest.mark.parametrize("m, unimodular", [(3, True), (3, False), (2, True), (1, False)])
def test_no_fermat_cover(m, unimodular):
    feature = {"type": "NonSymplecticTrivialGroup", "m": m, "unimodular": unimodular}
    assert not derive(k3(features=[feature])).facts


def test_fermat_rank_restriction():
    feature = {"type": "NonSymplecticTrivialGroup", "m": 4, "unimodular": True}
    with pytest.raises(Inconsistent) as excinfo:
        derive(k3(rho=5, features=[feature]))
    assert excinfo.value.citation == citations.COROLLARY_2


def test_fermat_feeds_nikulin_rule():
    feature = {"type": "NonSymplecticTrivialGroup", "m": 4, "unimodular": True}
    derivation = derive(k3(rho=10, features=[feature, NIKULIN]))
    (r2,) = derivation.by_rule("R2")
    assert "R4:FermatCover(4)" in r2.premises


@pytest.mark.parametrize("empty, quotient", [(True, "QuotientEnriques"), (False, "QuotientRational")])
def test_non_symplectic_involution(empty, quotient):
    derivation = derive(k3(features=[{"type": "NonSymplecticInvolution", "fixed_locus_empty": empty}]))
    assert derivation.holds("T2QuotientZero")
    assert derivation.holds("NotT2Iso")
    assert derivation.holds(quotient)


@pytest.mark.parametrize(
    "feature, cited",
    [("EllipticWithTwoTorsionSection", citations.THEOREM_7), ("InvariantThreeQuadrics", citations.THREE_QUADRICS)],
)
def test_isogeny_and_quadrics(feature, cited):
    derivation = derive(k3(rho=10, features=[{"type": feature}]))
    assert derivation.fact_for("T2IsoWithQuotient").citation == cited


def test_even_sets():
    kummer = derive(k3(features=[{"type": "EvenSet", "k": 16}]))
    assert kummer.holds("KummerQuotient")
    assert kummer.holds("FiniteDimensional")
    assert kummer.holds("T2IsoAll")

    eight = derive(k3(features=[{"type": "EvenSet", "k": 8}]))
    assert len(eight.facts) == 1
    assert eight.facts[0].subject == "cover"
    assert not eight.holds("FiniteDimensional")
    assert not eight.by_rule("R8")

    assert not derive(k3(features=[{"type": "EvenSet", "k": 0}])).facts


def test_klein_four():
    derivation = derive(k3(rho=10, features=[NIKULIN, {"type": "KleinFourRationalQuotients"}]))
    (r9,) = derivation.by_rule("R9")
    assert r9.citation == citations.KLEIN_FOUR


def test_non_k3_surfaces_are_left_alone():
    derivation = derive({"kind": "Abelian", "rho": 20, "features": [{"type": "EvenSet", "k": 16}]})
    assert [f.rule_id for f in derivation.facts] == ["R7"]


@pytest.mark.parametrize(
    "payload, cited",
    [
        (k3(q=1), citations.K3_INVARIANTS),
        (k3(pg=0), citations.K3_INVARIANTS),
        (k3(rho=21), citations.PICARD_RANGE),
        (k3(rho=8, features=[NIKULIN]), citations.NIKULIN_RANK),
        (k3(features=[{"type": "EvenSet", "k": 7}]), citations.EVEN_SETS),
    ],
)
def test_inconsistent_descriptors(payload, cited):
    with pytest.raises(Inconsistent) as excinfo:
        derive(payload)
    assert excinfo.value.citation == cited


@pytest.mark.parametrize(
    "payload",
    [
        "{not json",
        {"kind": "Curve"},
        k3(features=[{"type": "Unknown"}]),
        k3(features=[{"type": "NonSymplecticTrivialGroup", "m": 0}]),
        k3(assumptions=["Nothing"]),
    ],
)
def test_bad_descriptors(payload):
    with pytest.raises(BadDescriptor):
        load_descriptor(payload)


def test_descriptor_dump_is_deterministic():
    descriptor = load_descriptor(k3(assumptions=["ValenceExists", "FiniteDimensional"]))
    assert descriptor.model_dump(mode="json")["assumptions"] == ["FiniteDimensional", "ValenceExists"]
    assert load_descriptor(json.dumps(descriptor.model_dump(mode="json"))) == descriptor


def test_adding_features_never_removes_conclusions():
    base = load_descriptor(k3(rho=19))
    richer = base.with_features(NikulinInvolution(), EvenSet(k=16)).with_assumptions("ValenceExists")
    before, after = classify(base).conclusions(), classify(richer).conclusions()
    assert set(before) <= set(after)


FEATURE_POOL = [
    NonSymplecticTrivialGroup(m=4, unimodular=True),
    NonSymplecticTrivialGroup(m=4, unimodular=False),
    NonSymplecticTrivialGroup(m=5, unimodular=True),
    NonSymplecticTrivialGroup(m=3),
    NonSymplecticInvolution(fixed_locus_empty=True),
    NonSymplecticInvolution(fixed_locus_empty=False),
    EllipticWithTwoTorsionSection(),
    InvariantThreeQuadrics(),
    EvenSet(k=0),
    EvenSet(k=8),
    EvenSet(k=16),
    NikulinInvolution(),
    KleinFourRationalQuotients(),
    ShiodaInose(),
]


def _conclusions(descriptor):
    return {(f.rule_id, f.conclusion, f.citation) for f in classify(descriptor).facts}


@pytest.mark.parametrize("extra", FEATURE_POOL, ids=lambda f: f.label())
def test_every_feature_keeps_earlier_conclusions(extra):
    base = load_descriptor(k3())
    for size in (0, 1, 2):
        for features in itertools.combinations(FEATURE_POOL, size):
            before = _conclusions(base.with_features(*features))
            assert before <= _conclusions(base.with_features(extra, *features))
            assert before <= _conclusions(base.with_features(*features, extra))


def test_second_trivial_group_keeps_the_first_cover():
    quintic = NonSymplecticTrivialGroup(m=5, unimodular=True)
    quartic = NonSymplecticTrivialGroup(m=4, unimodular=True)
    assert derive(k3(features=[quintic.model_dump()])).holds("FermatCover(5)")
    derivation = classify(load_descriptor(k3()).with_features(quartic, quintic))
    assert derivation.holds("FermatCover(4)") and derivation.holds("FermatCover(5)")
    (rho_in,) = [f for f in derivation.by_rule("R4") if f.conclusion.startswith("RhoIn")]
    assert rho_in.premises == ("R4:FermatCover(4)", "R4:FermatCover(5)")


def test_explain_json():
    derivation = derive(k3(rho=20, features=[NIKULIN]))
    restored = Derivation.model_validate(json.loads(explain(derivation, as_json=True)))
    assert restored == derivation


def test_provenance_must_point_backwards():
    later = Fact(conclusion="B", rule_id="R2", citation="c", premises=("R1:A",))
    with pytest.raises(ValueError):
        Derivation(facts=(later, Fact(conclusion="A", rule_id="R1", citation="c")))


def test_feed_store():
    store = feed_store(derive(k3(rho=20, features=[NIKULIN])), FactStore())
    assert store.holds("FiniteDimensional", "X")
    assert store.holds("T2Iso", "X", "Y")
    assert store.holds("MotiveIso", "X", "Y")
    assert not feed_store(derive(k3(features=[{"type": "EvenSet", "k": 8}])), FactStore()).facts


def test_classifier_tool():
    server = ClassifierServer()
    payload = server.call_tool("classify", {"descriptor": json.dumps(k3(rho=20))})
    assert payload["derived"] == ["FiniteDimensional", "AbelianSubcategory"]
    assert payload["checks"] == [{"name": "provenance acyclic", "passed": True}]
    assert payload["citations"] == [citations.THEOREM_2]
    key = load_descriptor(k3(rho=20)).key()
    assert payload["surface"] == key
    assert server.store.holds("FiniteDimensional", f"X@{key}")
    assert not server.store.holds("FiniteDimensional", "X")

    failed = server.call_tool("classify", {"descriptor": k3(rho=25)})
    assert failed["error_type"] == "Inconsistent"
    assert failed["citation"] == citations.PICARD_RANGE


def test_descriptor_key_ignores_assumption_order():
    first = load_descriptor(k3(rho=12, assumptions=["ValenceExists", "FiniteDimensional"]))
    second = load_descriptor(k3(rho=12, assumptions=["FiniteDimensional", "ValenceExists"]))
    assert first.key() == second.key()
    assert first.key() != load_descriptor(k3(rho=13)).key()
