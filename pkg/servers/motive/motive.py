import json
import logging
import threading
from collections import Counter
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, TypeAdapter, model_validator

from servers import citations
from workbench.errors import RankOutOfRange

logger = logging.getLogger(__name__)

K3_B2 = 22
AtomKind = Literal["unit", "lef", "t2"]
_KIND_ORDER = {"unit": 0, "lef": 1, "t2": 2}


class MotiveAtom(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: AtomKind
    power: int = 0
    label: str = ""
    dim: int = 0

    @model_validator(mode="after")
    def _check_atom(self) -> "MotiveAtom":
        if self.kind == "lef" and self.power < 1:
            raise ValueError("Lefschetz atoms have power >= 1")
        if self.dim < 0:
            raise ValueError("dimensions are nonnegative")
        return self

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.power, self.label, self.dim)

    def __str__(self) -> str:
        if self.kind == "unit":
            return "1"
        if self.kind == "lef":
            return "L" if self.power == 1 else f"L^{self.power}"
        return f"t2({self.label}; {self.dim})"


UNIT = MotiveAtom(kind="unit")


def lef(power: int = 1) -> MotiveAtom:
    return MotiveAtom(kind="lef", power=power)


def t2(label: str, dim: int) -> MotiveAtom:
    return MotiveAtom(kind="t2", label=label, dim=dim)


class MotiveExpr(BaseModel):
    """Direct sum of atoms in canonical order"""

    model_config = ConfigDict(frozen=True)

    atoms: Tuple[MotiveAtom, ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data):
        if isinstance(data, dict) and "atoms" in data:
            atoms = [MotiveAtom.model_validate(a) if isinstance(a, dict) else a for a in data["atoms"]]
            data = {**data, "atoms": tuple(sorted(atoms, key=MotiveAtom.sort_key))}
        return data

    @classmethod
    def of(cls, atoms: Sequence[MotiveAtom]) -> "MotiveExpr":
        return cls(atoms=tuple(atoms))

    def __add__(self, other: "MotiveExpr") -> "MotiveExpr":
        return MotiveExpr.of(self.atoms + other.atoms)

    def count(self, atom: MotiveAtom) -> int:
        return sum(1 for a in self.atoms if a == atom)

    def transcendental(self) -> List[MotiveAtom]:
        return [a for a in self.atoms if a.kind == "t2"]

    def __str__(self) -> str:
        counts = Counter(str(a) for a in self.atoms)
        parts = []
        for atom in dict.fromkeys(self.atoms):
            n = counts[str(atom)]
            parts.append(str(atom) if n == 1 else f"{atom}^(+{n})")
        return " + ".join(parts) if parts else "0"


class SurfaceData(BaseModel):
    model_config = ConfigDict(frozen=True)

    rho: int
    q: int
    p_g: int
    b2: int
    e: int

    @classmethod
    def k3(cls, rho: int) -> "SurfaceData":
        if not 1 <= rho <= 20:
            raise RankOutOfRange(f"a K3 surface has 1 <= rho <= 20, got {rho}")
        return cls(rho=rho, q=0, p_g=1, b2=K3_B2, e=24)


class RegisteredFact(BaseModel):
    model_config = ConfigDict(frozen=True)

    fact: str
    subjects: Tuple[str, ...]
    citation: str


_FACT_LIST = TypeAdapter(List[RegisteredFact])


class FactStore:
    """Registered facts; writers take the lock, readers see an immutable snapshot"""

    def __init__(self, facts: Sequence[RegisteredFact] = ()):
        self._lock = threading.Lock()
        self._facts: Tuple[RegisteredFact, ...] = tuple(facts)

    def register(self, fact: str, subjects: Sequence[str], citation: str) -> RegisteredFact:
        entry = RegisteredFact(fact=fact, subjects=tuple(subjects), citation=citation)
        with self._lock:
            if entry not in self._facts:
                self._facts = self._facts + (entry,)
        logger.debug(f"Registered {fact}{tuple(subjects)}")
        return entry

    @property
    def facts(self) -> Tuple[RegisteredFact, ...]:
        return self._facts

    def holds(self, fact: str, *subjects: str) -> bool:
        return any(f.fact == fact and f.subjects == subjects for f in self._facts)

    def t2_isomorphic(self, left: str, right: str) -> bool:
        return left == right or self.holds("T2Iso", left, right) or self.holds("T2Iso", right, left)

    def to_json(self) -> str:
        return json.dumps(_FACT_LIST.dump_python(list(self._facts), mode="json"), sort_keys=True)

    @classmethod
    def from_json(cls, payload: str) -> "FactStore":
        return cls(_FACT_LIST.validate_json(payload))


def chow_kunneth_k3(rho: int, label: str = "X") -> MotiveExpr:
    """h(X) = 1 + L^(+rho) + t_2(X) + L^2"""
    surface = SurfaceData.k3(rho)
    return MotiveExpr.of([UNIT] + [lef(1)] * surface.rho + [t2(label, surface.b2 - surface.rho), lef(2)])


def betti_dims(expr: MotiveExpr) -> List[int]:
    """Graded dimensions [h^0, ..., h^4] (longer if higher Lefschetz powers occur)"""
    top = max([4] + [2 * a.power for a in expr.atoms if a.kind == "lef"])
    dims = [0] * (top + 1)
    for atom in expr.atoms:
        if atom.kind == "unit":
            dims[0] += 1
        elif atom.kind == "lef":
            dims[2 * atom.power] += 1
        else:
            dims[2] += atom.dim
    return dims


def blowup(expr: MotiveExpr, points: int = 1) -> MotiveExpr:
    """Blowing up a point adds one L; transcendental atoms are birational invariants"""
    return expr + MotiveExpr.of([lef(1)] * points)


def blowup_8(expr: MotiveExpr) -> MotiveExpr:
    return blowup(expr, 8)


def _match_transcendental(left: List[MotiveAtom], right: List[MotiveAtom], store: FactStore) -> bool:
    if not left:
        return not right
    head, rest = left[0], left[1:]
    for i, candidate in enumerate(right):
        if candidate.dim == head.dim and store.t2_isomorphic(head.label, candidate.label):
            if _match_transcendental(rest, right[:i] + right[i + 1:], store):
                return True
    return False


def motives_isomorphic(m1: MotiveExpr, m2: MotiveExpr, store: Optional[FactStore] = None) -> bool:
    store = store or FactStore()
    algebraic_1 = [a for a in m1.atoms if a.kind != "t2"]
    algebraic_2 = [a for a in m2.atoms if a.kind != "t2"]
    if algebraic_1 != algebraic_2:
        return False
    return _match_transcendental(m1.transcendental(), m2.transcendental(), store)


def kimura_vanishing(expr: MotiveExpr, store: FactStore, subject: str) -> MotiveExpr:
    """Drop transcendental summands with no cohomology, but only for a finite-dimensional motive"""
    if not store.holds("FiniteDimensional", subject):
        return expr
    kept = [a for a in expr.atoms if not (a.kind == "t2" and a.dim == 0)]
    if len(kept) != len(expr.atoms):
        logger.debug(f"Dropped {len(expr.atoms) - len(kept)} homologically trivial summand(s) of h({subject})")
    return MotiveExpr.of(kept)


def surface_labels(surface: Optional[str] = None) -> Tuple[str, str]:
    """Subjects for a surface and its quotient; facts about one surface never apply to another"""
    if surface is None:
        return "X", "Y"
    return f"X@{surface}", f"Y@{surface}"


def nikulin_motive_comparison(rho: int, store: FactStore, x: str = "X", y: str = "Y") -> Dict[str, object]:
    """t_2(X) = t_2(Y) + N with H(N) = 0; N vanishes once h(X) is known to be finite dimensional"""
    h_x = chow_kunneth_k3(rho, x)
    h_y = chow_kunneth_k3(rho, y)
    (t2_x,), (t2_y,) = h_x.transcendental(), h_y.transcendental()
    remainder = t2("N", t2_x.dim - t2_y.dim)
    split = kimura_vanishing(MotiveExpr.of([t2_y, remainder]), store, x)
    if split.atoms == (t2_y,):
        store.register("T2Iso", (x, y), citations.THEOREM_3_KIMURA)
    isomorphic = motives_isomorphic(h_x, h_y, store)
    if isomorphic:
        store.register("MotiveIso", (x, y), citations.THEOREM_3)
    return {
        "h_X": str(h_x),
        "h_Y": str(h_y),
        "t2_X_split": str(split),
        "isomorphic": isomorphic,
    }
