import logging
from enum import Enum

from pydantic import BaseModel, ConfigDict, model_validator

from servers.lattice.lattice import (
    Isometry,
    Lattice,
    StandardName,
    basis_change_witness,
    direct_sum,
    fixed_and_antifixed,
    induced_lattice,
    orthogonal_complement,
    standard_lattice,
    twist,
    verify_isometry,
)
from workbench.errors import ForbiddenEvenSet, NonIntegralBalance, RankOutOfRange

logger = logging.getLogger(__name__)

K3_RANK = 22
U3_RANK = 6
E8_RANK = 8
K3_EULER = 24
NIKULIN_FIXED_POINTS = 8
MIN_NIKULIN_RHO = 9
MAX_RHO = 20


class K3CohomologyModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    lattice: Lattice
    swap: Isometry

    @model_validator(mode="after")
    def _check_blocks(self) -> "K3CohomologyModel":
        if self.lattice.rank != K3_RANK or self.swap.domain != self.lattice:
            raise ValueError("model must be a rank-22 lattice with an isometry of it")
        for i in range(K3_RANK):
            column = [self.swap.matrix[r][i] for r in range(K3_RANK)]
            if column.count(1) != 1 or any(v not in (0, 1) for v in column):
                raise ValueError("swap must permute coordinates")
            image = column.index(1)
            if i < U3_RANK and image != i:
                raise ValueError("swap must fix the U^3 block")
            if i >= U3_RANK and image != _partner(i):
                raise ValueError("swap must exchange the two E8(-1) blocks")
        return self


class EulerBalance(BaseModel):
    """e(X) + t + 2 + 2k = 2 e(Y)"""

    model_config = ConfigDict(frozen=True)

    e_X: int
    t: int
    k: int
    e_Y: int

    @model_validator(mode="after")
    def _check_balance(self) -> "EulerBalance":
        if self.e_X + self.t + 2 + 2 * self.k != 2 * self.e_Y:
            raise ValueError("Euler balance does not hold")
        return self


class InvariantLatticeReport(BaseModel):
    fixed_ok: bool
    antifixed_ok: bool
    complement_ok: bool
    fixed_rank: int
    antifixed_rank: int
    trace: int


class NSTraceDecomposition(BaseModel):
    r: int
    ns_trace: int
    tr_trace: int
    total: int


class EvenSetBranch(str, Enum):
    TRIVIAL = "Trivial"
    NIKULIN_QUOTIENT_K3 = "NikulinQuotientK3"
    KUMMER_OF_ABELIAN = "KummerOfAbelian"


def _partner(i: int) -> int:
    return i + E8_RANK if i < U3_RANK + E8_RANK else i - E8_RANK


def build_model() -> K3CohomologyModel:
    """Blocks U, U, U, E8(-1), E8(-1): coordinates 0..5, 6..13 and 14..21"""
    u = standard_lattice(StandardName.U)
    e8_minus_1 = standard_lattice(StandardName.E8_MINUS_1)
    lattice = direct_sum(u, u, u, e8_minus_1, e8_minus_1)
    swap = [[0] * K3_RANK for _ in range(K3_RANK)]
    for i in range(K3_RANK):
        swap[i if i < U3_RANK else _partner(i)][i] = 1
    model = K3CohomologyModel(lattice=lattice, swap=Isometry(matrix=tuple(map(tuple, swap)), domain=lattice))
    logger.debug(f"Built K3 lattice model, swap trace {model.swap.trace}")
    return model


def _diagonal_rows(sign: int):
    rows = []
    for j in range(E8_RANK):
        row = [0] * K3_RANK
        row[U3_RANK + j] = 1
        row[U3_RANK + E8_RANK + j] = sign
        rows.append(row)
    return rows


def verify_invariant_lattices(model: K3CohomologyModel) -> InvariantLatticeReport:
    """Certify H^2(X,Z)^i = U^3 + E8(-2) and its complement = E8(-2) by explicit witnesses"""
    fixed, anti = fixed_and_antifixed(model.lattice, model.swap)

    u = standard_lattice(StandardName.U)
    e8_minus_2 = twist(standard_lattice(StandardName.E8), -2)
    units = [[1 if c == i else 0 for c in range(K3_RANK)] for i in range(U3_RANK)]

    fixed_witness = basis_change_witness(fixed, units + _diagonal_rows(1))
    fixed_ok = fixed_witness is not None and verify_isometry(
        fixed_witness, direct_sum(u, u, u, e8_minus_2), induced_lattice(fixed)
    )
    anti_witness = basis_change_witness(anti, _diagonal_rows(-1))
    antifixed_ok = anti_witness is not None and verify_isometry(anti_witness, e8_minus_2, induced_lattice(anti))
    complement_ok = orthogonal_complement(model.lattice, fixed).same_span(anti)

    logger.info(f"Invariant lattices: fixed rank {fixed.rank} ({fixed_ok}), antifixed rank {anti.rank} ({antifixed_ok})")
    return InvariantLatticeReport(
        fixed_ok=fixed_ok,
        antifixed_ok=antifixed_ok,
        complement_ok=complement_ok,
        fixed_rank=fixed.rank,
        antifixed_rank=anti.rank,
        trace=model.swap.trace,
    )


def euler_balance_solve(e_X: int, t: int, k: int) -> int:
    total = e_X + t + 2 + 2 * k
    if total % 2:
        raise NonIntegralBalance(f"e(X) + t + 2 + 2k = {total} is odd")
    return EulerBalance(e_X=e_X, t=t, k=k, e_Y=total // 2).e_Y


def _check_nikulin_rank(rho: int):
    if not MIN_NIKULIN_RHO <= rho <= MAX_RHO:
        raise RankOutOfRange(f"a K3 surface with a Nikulin involution has 9 <= rho <= 20, got {rho}")


def ns_trace_decomposition(rho: int) -> NSTraceDecomposition:
    """Split the trace 6 of the involution between NS(X) and the transcendental part"""
    _check_nikulin_rank(rho)
    ns_trace = rho - 16
    tr_trace = K3_RANK - rho
    return NSTraceDecomposition(r=rho - E8_RANK, ns_trace=ns_trace, tr_trace=tr_trace, total=ns_trace + tr_trace)


def even_set_branch(k: int) -> EvenSetBranch:
    branches = {
        0: EvenSetBranch.TRIVIAL,
        8: EvenSetBranch.NIKULIN_QUOTIENT_K3,
        16: EvenSetBranch.KUMMER_OF_ABELIAN,
    }
    if k not in branches:
        raise ForbiddenEvenSet(f"an even set of disjoint rational curves has k in {{0, 8, 16}}, got {k}")
    return branches[k]


def quotient_rank(rho_x: int) -> int:
    """rho(Y) = rho(X): the transcendental dimensions 22 - rho agree"""
    _check_nikulin_rank(rho_x)
    return rho_x


def quotient_ns_basis_count(rho: int) -> dict:
    """The 8 curves C_k plus the r = rho - 8 invariant classes span NS(Y); the blow-up adds 8 classes"""
    decomposition = ns_trace_decomposition(rho)
    return {
        "exceptional_curves": NIKULIN_FIXED_POINTS,
        "invariant_classes": decomposition.r,
        "rho_Y": NIKULIN_FIXED_POINTS + decomposition.r,
        "rho_blowup": rho + NIKULIN_FIXED_POINTS,
    }


def hodge_isometry_parity(rho: int) -> dict:
    """The rational Hodge isomorphism T_X -> T_Y can be an isometry only for even transcendental dimension"""
    if not 1 <= rho <= MAX_RHO:
        raise RankOutOfRange(f"Picard rank must lie in [1, 20], got {rho}")
    dim_t = K3_RANK - rho
    return {"rho": rho, "transcendental_dim": dim_t, "isometry_possible": dim_t % 2 == 0}
