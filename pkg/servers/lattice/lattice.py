import json
import logging
from enum import Enum
from functools import reduce
from operator import mul
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import Poly, Symbol, sturm
from sympy.polys.domains import ZZ

from workbench.errors import (
    BadSublattice,
    DegenerateForm,
    NotInvolution,
    PreconditionViolation,
    RankMismatch,
    UnknownLattice,
)

from .intlinalg import (
    determinant,
    domain_matrix,
    hermite_rows,
    identity,
    integer_kernel,
    is_primitive,
    matmul,
    nonzero_invariant_factors,
    rational_rank,
    solve_integral,
    transpose,
)

logger = logging.getLogger(__name__)

# Isometries act on column vectors (M^T G M = G); sublattice bases are rows, Gram B G B^T
IntMatrix = Tuple[Tuple[int, ...], ...]

# E8 Dynkin diagram, nodes 1..7 in a chain and node 8 attached to node 5
E8_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8))


def _integral(entry) -> int:
    if isinstance(entry, str) or int(entry) != entry:
        raise ValueError(f"matrix entries must be integers, got {entry!r}")
    return int(entry)


def freeze(rows) -> IntMatrix:
    return tuple(tuple(_integral(entry) for entry in row) for row in rows)


class StandardName(str, Enum):
    U = "U"
    E8 = "E8"
    E8_MINUS_1 = "E8_MINUS_1"
    RANK1 = "RANK1"


class LatticeInvariants(BaseModel):
    model_config = ConfigDict(frozen=True)

    det: int
    rank: int
    signature: Tuple[int, int]
    even: bool
    unimodular: bool


class Lattice(BaseModel):
    """A nondegenerate integral symmetric bilinear form on Z^rank"""

    model_config = ConfigDict(frozen=True)

    gram: IntMatrix
    rank: int = Field(gt=0)

    @model_validator(mode="after")
    def _check_form(self) -> "Lattice":
        if len(self.gram) != self.rank or any(len(row) != self.rank for row in self.gram):
            raise ValueError(f"Gram matrix must be {self.rank}x{self.rank}")
        for i in range(self.rank):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")
        if self.det == 0:
            raise DegenerateForm("Gram matrix has zero determinant")
        return self

    @classmethod
    def from_gram(cls, gram) -> "Lattice":
        gram = freeze(gram)
        return cls(gram=gram, rank=len(gram))

    @property
    def det(self) -> int:
        return determinant(self.gram)

    def pair(self, x, y) -> int:
        """b(x, y) for coordinate vectors x, y"""
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(self.rank) for j in range(self.rank) if x[i] and y[j])

    def norm(self, x) -> int:
        return self.pair(x, x)


class Sublattice(BaseModel):
    """Row span of ``basis`` inside ``ambient`` (possibly the zero sublattice)"""

    model_config = ConfigDict(frozen=True)

    ambient: Lattice
    basis: IntMatrix
    saturated: bool

    @model_validator(mode="after")
    def _check_basis(self) -> "Sublattice":
        n = self.ambient.rank
        if any(len(row) != n for row in self.basis):
            raise BadSublattice(f"basis rows must have {n} ambient coordinates")
        if rational_rank(self.basis, n) != len(self.basis):
            raise BadSublattice("basis rows are linearly dependent")
        if self.saturated and not is_primitive(self.basis, n):
            raise BadSublattice("basis marked saturated but has nontrivial invariant factors")
        return self

    @classmethod
    def span(cls, ambient: Lattice, rows) -> "Sublattice":
        rows = freeze(rows)
        return cls(ambient=ambient, basis=rows, saturated=is_primitive(rows, ambient.rank))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> IntMatrix:
        """Induced Gram B G B^T, computed on demand"""
        if not self.basis:
            return ()
        return freeze(matmul(matmul(self.basis, self.ambient.gram), transpose(self.basis)))

    def contains(self, rows) -> bool:
        return solve_integral(rows, self.basis) is not None

    def same_span(self, other: "Sublattice") -> bool:
        return (
            self.ambient == other.ambient
            and self.rank == other.rank
            and self.contains(other.basis)
            and other.contains(self.basis)
        )


class Isometry(BaseModel):
    """Form-preserving automorphism of ``domain`` acting on column vectors"""

    model_config = ConfigDict(frozen=True)

    matrix: IntMatrix
    domain: Lattice

    @model_validator(mode="after")
    def _check_isometry(self) -> "Isometry":
        n = self.domain.rank
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise RankMismatch(f"isometry matrix must be {n}x{n}")
        if freeze(matmul(matmul(transpose(self.matrix), self.domain.gram), self.matrix)) != self.domain.gram:
            raise ValueError("matrix does not preserve the Gram form")
        if abs(determinant(self.matrix)) != 1:
            raise ValueError("isometry must have determinant +1 or -1")
        return self

    @property
    def trace(self) -> int:
        return sum(self.matrix[i][i] for i in range(len(self.matrix)))

    def is_involution(self) -> bool:
        return freeze(matmul(self.matrix, self.matrix)) == freeze(identity(len(self.matrix)))


class DiscriminantGroup(BaseModel):
    model_config = ConfigDict(frozen=True)

    invariant_factors: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_chain(self) -> "DiscriminantGroup":
        factors = self.invariant_factors
        if any(f <= 1 for f in factors):
            raise ValueError("invariant factors must exceed 1")
        if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            raise ValueError("each invariant factor must divide the next")
        return self

    @property
    def order(self) -> int:
        return reduce(mul, self.invariant_factors, 1)


def _e8_cartan() -> List[List[int]]:
    cartan = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for a, b in E8_EDGES:
        cartan[a - 1][b - 1] = cartan[b - 1][a - 1] = -1
    return cartan


def standard_lattice(name: Union[str, StandardName], two_d: Optional[int] = None) -> Lattice:
    """U, E8, E8(-1) or the rank-one lattice <2d>"""
    try:
        name = StandardName(name)
    except ValueError:
        raise UnknownLattice(f"Unknown lattice: {name}")

    if name is StandardName.U:
        return Lattice.from_gram([[0, 1], [1, 0]])
    if name is StandardName.E8:
        return Lattice.from_gram(_e8_cartan())
    if name is StandardName.E8_MINUS_1:
        return twist(standard_lattice(StandardName.E8), -1)

    if two_d is None or two_d % 2:
        raise PreconditionViolation(f"RANK1 needs a nonzero even 2d, got {two_d}")
    if two_d == 0:
        raise DegenerateForm("RANK1(0) is degenerate")
    return Lattice.from_gram([[two_d]])


def twist(lattice: Lattice, m: int) -> Lattice:
    """L(m): the same module with the form multiplied by m"""
    if m == 0:
        raise DegenerateForm("twisting by 0 kills the form")
    return Lattice.from_gram([[m * entry for entry in row] for row in lattice.gram])


def direct_sum(*lattices: Lattice) -> Lattice:
    """Orthogonal direct sum (block-diagonal Gram)"""
    size = sum(lattice.rank for lattice in lattices)
    gram = [[0] * size for _ in range(size)]
    offset = 0
    for lattice in lattices:
        for i, row in enumerate(lattice.gram):
            gram[offset + i][offset:offset + lattice.rank] = row
        offset += lattice.rank
    return Lattice.from_gram(gram)


def _sign_variations(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_signed_roots(factor: Poly) -> Tuple[int, int]:
    """Distinct positive and negative real roots of a squarefree factor (Sturm)"""
    sequence = sturm(factor)
    at_zero = _sign_variations([p.eval(0) for p in sequence])
    at_plus = _sign_variations([p.LC() for p in sequence])
    at_minus = _sign_variations([p.LC() * (-1) ** p.degree() for p in sequence])
    return at_zero - at_plus, at_minus - at_zero


def signature(lattice: Lattice) -> Tuple[int, int]:
    """(positive, negative) eigenvalue counts of the Gram matrix, with multiplicity"""
    x = Symbol("x")
    coefficients = domain_matrix(lattice.gram, lattice.rank).charpoly()
    charpoly = Poly([int(c) for c in coefficients], x, domain=ZZ)
    positive = negative = 0
    for factor, multiplicity in charpoly.sqf_list()[1]:
        pos, neg = _count_signed_roots(factor)
        positive += multiplicity * pos
        negative += multiplicity * neg
    return positive, negative


def invariants(lattice: Lattice) -> LatticeInvariants:
    return LatticeInvariants(
        det=lattice.det,
        rank=lattice.rank,
        signature=signature(lattice),
        even=all(lattice.gram[i][i] % 2 == 0 for i in range(lattice.rank)),
        unimodular=abs(lattice.det) == 1,
    )


def discriminant_group(lattice: Lattice) -> DiscriminantGroup:
    """Dual lattice modulo lattice, as invariant factors > 1 of the Gram matrix"""
    factors = nonzero_invariant_factors(lattice.gram, lattice.rank)
    if len(factors) != lattice.rank:
        raise DegenerateForm("Gram matrix is singular")
    return DiscriminantGroup(invariant_factors=tuple(f for f in factors if f > 1))


def orthogonal_complement(lattice: Lattice, sub: Sublattice) -> Sublattice:
    """All x in L with b(s, x) = 0 for every s in S; always saturated"""
    if sub.ambient != lattice:
        raise BadSublattice("sublattice does not live in this lattice")
    pairing = matmul(sub.basis, lattice.gram) if sub.basis else []
    kernel = integer_kernel(pairing, lattice.rank)
    logger.debug(f"Orthogonal complement of a rank-{sub.rank} sublattice has rank {len(kernel)}")
    return Sublattice(ambient=lattice, basis=freeze(kernel), saturated=True)


def saturate(sub: Sublattice) -> Sublattice:
    """Primitive closure: (Q-span of S) intersected with the ambient lattice"""
    if sub.saturated:
        return sub
    n = sub.ambient.rank
    normals = integer_kernel(sub.basis, n)
    closure = integer_kernel(normals, n) if normals else identity(n)
    return Sublattice(ambient=sub.ambient, basis=freeze(hermite_rows(closure, n)), saturated=True)


def saturation_index(sub: Sublattice) -> int:
    """Index of S inside its saturation: product of the basis-matrix invariant factors"""
    return reduce(mul, nonzero_invariant_factors(sub.basis, sub.ambient.rank), 1)


def sublattice_index(inner: Sublattice, outer: Sublattice) -> int:
    """[outer : inner] for sublattices of one ambient lattice with equal rank"""
    if inner.ambient != outer.ambient:
        raise BadSublattice("sublattices live in different lattices")
    if inner.rank != outer.rank:
        raise RankMismatch(f"ranks differ: {inner.rank} vs {outer.rank}")
    change = solve_integral(inner.basis, outer.basis)
    if change is None:
        raise BadSublattice("inner sublattice is not contained in the outer one")
    return abs(determinant(change))


def induced_lattice(sub: Sublattice) -> Lattice:
    """The sublattice as a lattice in its own right (Gram B G B^T)"""
    if not sub.basis:
        raise DegenerateForm("the zero sublattice carries no form")
    return Lattice.from_gram(sub.gram())


def fixed_and_antifixed(lattice: Lattice, involution: Isometry) -> Tuple[Sublattice, Sublattice]:
    """Integer kernels of (M - id) and (M + id)"""
    if involution.domain != lattice:
        raise RankMismatch("isometry acts on a different lattice")
    if not involution.is_involution():
        raise NotInvolution("matrix squared is not the identity")
    n = lattice.rank
    eye = identity(n)
    minus = [[involution.matrix[i][j] - eye[i][j] for j in range(n)] for i in range(n)]
    plus = [[involution.matrix[i][j] + eye[i][j] for j in range(n)] for i in range(n)]
    fixed = Sublattice(ambient=lattice, basis=freeze(integer_kernel(minus, n)), saturated=True)
    anti = Sublattice(ambient=lattice, basis=freeze(integer_kernel(plus, n)), saturated=True)
    logger.debug(f"Involution with trace {involution.trace}: fixed rank {fixed.rank}, antifixed rank {anti.rank}")
    return fixed, anti


def verify_isometry(matrix, source: Lattice, target: Lattice) -> bool:
    """True iff M^T G_target M = G_source and |det M| = 1"""
    matrix = freeze(matrix)
    n = len(matrix)
    if source.rank != target.rank or n != source.rank or any(len(row) != n for row in matrix):
        raise RankMismatch(f"cannot compare a {n}x{n} matrix with ranks {source.rank} and {target.rank}")
    if abs(determinant(matrix)) != 1:
        return False
    return freeze(matmul(matmul(transpose(matrix), target.gram), matrix)) == source.gram


def basis_change_witness(sub: Sublattice, rows) -> Optional[IntMatrix]:
    """Witness M with M^T G_sub M = Gram(rows), when ``rows`` is another basis of ``sub``.

    ``rows = W . sub.basis`` gives Gram(rows) = W G_sub W^T, so M = W^T.
    """
    change = solve_integral(rows, sub.basis)
    if change is None or len(change) != sub.rank:
        return None
    return freeze(transpose(change))


def lattice_from_json(payload: Union[str, Dict[str, Any]]) -> Lattice:
    """Parse the literal format {"rank": n, "gram": [[...], ...]}"""
    try:
        if isinstance(payload, str):
            payload = json.loads(payload)
        return Lattice(rank=payload["rank"], gram=freeze(payload["gram"]))
    except (KeyError, TypeError, ValueError) as e:
        raise DegenerateForm(f"not a valid lattice literal: {e}")


def lattice_to_json(lattice: Lattice) -> Dict[str, Any]:
    return {"rank": lattice.rank, "gram": [list(row) for row in lattice.gram]}
