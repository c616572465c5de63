import hashlib
import json
from typing import Annotated, FrozenSet, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_serializer, model_validator

from workbench.errors import BadDescriptor

SurfaceKind = Literal["K3", "GeneralType", "Abelian", "Kummer", "Enriques", "Rational"]
Assumption = Literal["FiniteDimensional", "ValenceExists", "IdentityOnZeroCycles"]


class _Feature(BaseModel):
    model_config = ConfigDict(frozen=True)

    def label(self) -> str:
        return self.type


class NikulinInvolution(_Feature):
    type: Literal["NikulinInvolution"] = "NikulinInvolution"


class NonSymplecticInvolution(_Feature):
    type: Literal["NonSymplecticInvolution"] = "NonSymplecticInvolution"
    fixed_locus_empty: bool = False

    def label(self) -> str:
        return f"{self.type}(fixed_locus_empty={self.fixed_locus_empty})"


class NonSymplecticTrivialGroup(_Feature):
    type: Literal["NonSymplecticTrivialGroup"] = "NonSymplecticTrivialGroup"
    m: int = Field(ge=1)
    unimodular: bool = False

    def label(self) -> str:
        return f"{self.type}(m={self.m}, unimodular={self.unimodular})"


class EllipticWithTwoTorsionSection(_Feature):
    type: Literal["EllipticWithTwoTorsionSection"] = "EllipticWithTwoTorsionSection"


class InvariantThreeQuadrics(_Feature):
    type: Literal["InvariantThreeQuadrics"] = "InvariantThreeQuadrics"


class EvenSet(_Feature):
    type: Literal["EvenSet"] = "EvenSet"
    k: int = Field(ge=0)

    def label(self) -> str:
        return f"{self.type}({self.k})"


class ShiodaInose(_Feature):
    type: Literal["ShiodaInose"] = "ShiodaInose"


class KleinFourRationalQuotients(_Feature):
    """G = {1, sigma, i, j} with X/sigma and X/j both rational"""

    type: Literal["KleinFourRationalQuotients"] = "KleinFourRationalQuotients"


Feature = Annotated[
    Union[
        NikulinInvolution,
        NonSymplecticInvolution,
        NonSymplecticTrivialGroup,
        EllipticWithTwoTorsionSection,
        InvariantThreeQuadrics,
        EvenSet,
        ShiodaInose,
        KleinFourRationalQuotients,
    ],
    Field(discriminator="type"),
]


class SurfaceDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: SurfaceKind
    rho: Optional[int] = None
    pg: Optional[int] = None
    q: Optional[int] = None
    features: Tuple[Feature, ...] = ()
    assumptions: FrozenSet[Assumption] = frozenset()

    @model_validator(mode="before")
    @classmethod
    def _k3_defaults(cls, data):
        if isinstance(data, dict) and data.get("kind") == "K3":
            data = {"q": 0, "pg": 1, **{k: v for k, v in data.items() if v is not None}}
        return data

    @field_serializer("assumptions")
    def _sorted_assumptions(self, assumptions):
        return sorted(assumptions)

    def has(self, feature_type: str) -> bool:
        return any(f.type == feature_type for f in self.features)

    def features_of(self, feature_type: str) -> list:
        return [f for f in self.features if f.type == feature_type]

    def assumes(self, assumption: str) -> bool:
        return assumption in self.assumptions

    def with_features(self, *features) -> "SurfaceDescriptor":
        return self.model_copy(update={"features": self.features + tuple(features)})

    def with_assumptions(self, *assumptions: str) -> "SurfaceDescriptor":
        return self.model_copy(update={"assumptions": self.assumptions | frozenset(assumptions)})

    def key(self) -> str:
        """Digest of the canonical JSON dump; names this surface in the shared fact store"""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def load_descriptor(payload) -> SurfaceDescriptor:
    """Descriptor from a JSON string or an already-decoded dict"""
    if isinstance(payload, (str, bytes)):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as e:
            raise BadDescriptor(f"descriptor is not JSON: {e}")
    try:
        return SurfaceDescriptor.model_validate(payload)
    except ValidationError as e:
        raise BadDescriptor(f"{e.error_count()} validation error(s): {e.errors()[0]['msg']}")
