"""Neron-Severi lattices of K3 surfaces with a Nikulin involution and Picard rank 9.

Lambda_2d = Z L + E8(-2). For L^2 = 0 mod 4 there is also an index-2
overlattice generated by (L + v)/2 for a glue vector v in E8(-2). Overlattice
coordinates use the basis {(L + v)/2, e_1, ..., e_8}, with e_j the E8(-2)
root basis, so L = 2 (L + v)/2 - v.
"""
import logging
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from servers.lattice.lattice import (
    Isometry,
    Lattice,
    StandardName,
    Sublattice,
    direct_sum,
    freeze,
    invariants,
    saturate,
    standard_lattice,
    sublattice_index,
    twist,
)
from servers.lattice.intlinalg import identity
from workbench.errors import BadPolarization, BadSublattice, GlueNotFound, PreconditionViolation

from .glue import vectors_up_to

logger = logging.getLogger(__name__)

NS_RANK = 9


class GlueExtension(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    glue: Tuple[int, ...]
    glue_norm: int
    half_norm: int
    overlattice: Lattice
    index: int
    e8_primitive: bool


class NSCandidateSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    candidates: Tuple[Lattice, ...]
    glue_vector: Optional[Tuple[int, ...]] = None
    extension: Optional[GlueExtension] = None

    @model_validator(mode="after")
    def _check_branch(self) -> "NSCandidateSet":
        expected = 1 if (2 * self.d) % 4 == 2 else 2
        if len(self.candidates) != expected:
            raise ValueError(f"2d = {2 * self.d} needs {expected} candidate(s)")
        for lattice in self.candidates:
            if lattice.rank != NS_RANK or any(lattice.gram[i][i] % 2 for i in range(NS_RANK)):
                raise ValueError("every candidate is even of rank 9")
        return self


def _check_polarization(d: int):
    if d < 1:
        raise BadPolarization(f"L^2 = 2d needs d >= 1, got {d}")


def e8_minus_2() -> Lattice:
    return twist(standard_lattice(StandardName.E8), -2)


def lambda_2d(d: int) -> Lattice:
    _check_polarization(d)
    return direct_sum(standard_lattice(StandardName.RANK1, 2 * d), e8_minus_2())


def find_glue_vector(d: int, bound: Optional[int] = None) -> Tuple[Tuple[int, ...], int]:
    """Root-basis coordinates x of v and the E8 norm N = -v^2/2.

    Admissible means N = d (mod 4), the overlattice evenness condition
    v^2 = -2d (mod 8). N = 0 would put L/2 in the lattice, so N >= 2. The
    smallest admissible N wins, then the lexicographically smallest x.
    """
    bound = d if bound is None else bound
    cartan = standard_lattice(StandardName.E8).gram
    admissible = [n for n in range(2, bound + 1) if (n - d) % 4 == 0]
    if not admissible:
        raise GlueNotFound(f"no admissible E8 norm up to {bound} for d = {d}")
    # E8 has vectors of every even norm, so only the smallest admissible norm is enumerated
    target = admissible[0]
    candidates = sorted(x for x, norm in vectors_up_to(cartan, target) if norm == target)
    if not candidates:
        raise GlueNotFound(f"no E8 vector of norm {target} for d = {d}")
    logger.debug(f"d={d}: {len(candidates)} glue candidates of E8 norm {target}, picked {candidates[0]}")
    return candidates[0], target


def overlattice_gram(d: int, glue: Tuple[int, ...]) -> List[List[int]]:
    cartan = standard_lattice(StandardName.E8).gram
    e8_norm = sum(glue[a] * cartan[a][b] * glue[b] for a in range(8) for b in range(8))
    c_glue = [sum(cartan[j][b] * glue[b] for b in range(8)) for j in range(8)]
    head = (2 * d - 2 * e8_norm) // 4
    gram = [[head] + [-c for c in c_glue]]
    for j in range(8):
        gram.append([-c_glue[j]] + [-2 * cartan[j][k] for k in range(8)])
    return gram


def lambda_rows(glue: Tuple[int, ...]) -> List[List[int]]:
    """Basis {L, e_1..e_8} of Lambda_2d in overlattice coordinates"""
    rows = [[2] + [-x for x in glue]]
    rows += [[0] + unit for unit in identity(8)]
    return rows


def e8_rows() -> List[List[int]]:
    return [[0] + unit for unit in identity(8)]


def verify_primitive(sub: Sublattice, over: Lattice) -> bool:
    """True iff the saturation of ``sub`` inside ``over`` is ``sub`` itself"""
    if sub.ambient != over:
        raise BadSublattice("sublattice is not contained in the given lattice")
    return saturate(sub).same_span(sub)


def find_glue_and_extend(d: int, bound: Optional[int] = None) -> GlueExtension:
    _check_polarization(d)
    if d % 2:
        raise PreconditionViolation(f"an index-2 overlattice needs d even, got {d}")
    glue, e8_norm = find_glue_vector(d, bound)
    over = Lattice.from_gram(overlattice_gram(d, glue))

    lam = Sublattice.span(over, lambda_rows(glue))
    if freeze(lam.gram()) != lambda_2d(d).gram:
        raise GlueNotFound(f"glue vector {glue} does not reproduce Lambda_{2 * d}")
    whole = Sublattice.span(over, identity(over.rank))
    e8_primitive = verify_primitive(Sublattice.span(over, e8_rows()), over)

    extension = GlueExtension(
        d=d,
        glue=glue,
        glue_norm=-2 * e8_norm,
        half_norm=over.gram[0][0],
        overlattice=over,
        index=sublattice_index(lam, whole),
        e8_primitive=e8_primitive,
    )
    logger.info(f"d={d}: glue v^2 = {extension.glue_norm}, overlattice det {over.det}")
    return extension


def ns_candidates(d: int) -> NSCandidateSet:
    """Lattices that can be NS(X) for L^2 = 2d"""
    base = lambda_2d(d)
    if d % 2:
        return NSCandidateSet(d=d, candidates=(base,))
    extension = find_glue_and_extend(d)
    return NSCandidateSet(
        d=d, candidates=(base, extension.overlattice), glue_vector=extension.glue, extension=extension
    )


def nikulin_on_overlattice(d: int, glue: Tuple[int, ...]) -> Isometry:
    """L -> L, v -> -v, so (L + v)/2 -> (L - v)/2 = (L + v)/2 - v and e_j -> -e_j"""
    over = Lattice.from_gram(overlattice_gram(d, glue))
    matrix = [[0] * 9 for _ in range(9)]
    matrix[0][0] = 1
    for j in range(8):
        matrix[j + 1][0] = -glue[j]
        matrix[j + 1][j + 1] = -1
    return Isometry(matrix=freeze(matrix), domain=over)


def elliptic_pencils(d: int = 2) -> dict:
    """E1 = (L + v)/2 and E2 = (L - v)/2 with their intersection numbers"""
    extension = find_glue_and_extend(d)
    over = extension.overlattice
    e1 = [1] + [0] * 8
    e2 = [1] + [-x for x in extension.glue]
    involution = nikulin_on_overlattice(d, extension.glue)
    image = [sum(involution.matrix[r][c] * e1[c] for c in range(9)) for r in range(9)]
    return {
        "E1": e1,
        "E2": e2,
        "E1^2": over.norm(e1),
        "E2^2": over.norm(e2),
        "E1.E2": over.pair(e1, e2),
        "involution_swaps": image == e2 and involution.is_involution(),
    }


def candidate_summary(candidates: NSCandidateSet) -> List[dict]:
    summary = []
    for lattice in candidates.candidates:
        lattice_invariants = invariants(lattice)
        summary.append(
            {
                "det": lattice_invariants.det,
                "signature": list(lattice_invariants.signature),
                "even": lattice_invariants.even,
            }
        )
    return summary
