import logging
from math import gcd
from typing import List, Optional, Sequence

from sympy import Matrix
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

logger = logging.getLogger(__name__)

Rows = List[List[int]]


def to_rows(matrix: Sequence[Sequence[int]]) -> Rows:
    return [[int(entry) for entry in row] for row in matrix]


def domain_matrix(rows: Sequence[Sequence[int]], ncols: int, domain=ZZ) -> DomainMatrix:
    rows = to_rows(rows)
    return DomainMatrix([[domain(entry) for entry in row] for row in rows], (len(rows), ncols), domain)


def matmul(left: Sequence[Sequence[int]], right: Sequence[Sequence[int]]) -> Rows:
    """Integer product; either factor may have zero rows."""
    if not left or not right:
        return [[] for _ in left] if left else []
    inner = len(right)
    product = domain_matrix(left, inner) * domain_matrix(right, len(right[0]))
    return to_rows(product.to_list())


def transpose(matrix: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Rows:
    if not matrix:
        return [[] for _ in range(ncols or 0)]
    return [list(column) for column in zip(*matrix)]


def identity(n: int) -> Rows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant"""
    if not matrix:
        return 1
    return int(Matrix(to_rows(matrix)).det(method="bareiss"))


def rational_rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    if not rows:
        return 0
    return domain_matrix(rows, ncols, QQ).rank()


def divisor_chain(values: Sequence[int]) -> List[int]:
    """Turn a diagonal of nonzero integers into invariant factors d1 | d2 | ..."""
    chain = sorted(abs(int(v)) for v in values)
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            a, b = chain[i], chain[j]
            g = gcd(a, b)
            chain[i], chain[j] = g, a * b // g
    return chain


def nonzero_invariant_factors(rows: Sequence[Sequence[int]], ncols: int) -> List[int]:
    """Nonzero Smith normal form invariant factors of an integer matrix"""
    if not rows:
        return []
    factors = invariant_factors(domain_matrix(rows, ncols))
    return divisor_chain([int(f) for f in factors if int(f) != 0])


def is_primitive(rows: Sequence[Sequence[int]], ncols: int) -> bool:
    """Rows span a saturated sublattice of Z^ncols (all invariant factors are 1)"""
    if not rows:
        return True
    factors = nonzero_invariant_factors(rows, ncols)
    return len(factors) == len(rows) and all(f == 1 for f in factors)


def _echelon(work: Rows, pivot_columns: int) -> int:
    """Unimodular row reduction of ``work`` on its first ``pivot_columns`` columns.

    Rows are combined in place with 2x2 transforms of determinant -1, so any
    columns to the right record the transform. Returns the number of pivot rows.
    """
    pivot_row = 0
    for col in range(pivot_columns):
        if pivot_row == len(work):
            break
        for r in range(pivot_row + 1, len(work)):
            b = work[r][col]
            if b == 0:
                continue
            a = work[pivot_row][col]
            s, t, g = ZZ.gcdex(ZZ(a), ZZ(b))
            s, t, g = int(s), int(t), int(g)
            top, bottom = work[pivot_row], work[r]
            work[pivot_row] = [s * x + t * y for x, y in zip(top, bottom)]
            work[r] = [(b // g) * x - (a // g) * y for x, y in zip(top, bottom)]
        if work[pivot_row][col] != 0:
            if work[pivot_row][col] < 0:
                work[pivot_row] = [-x for x in work[pivot_row]]
            pivot = work[pivot_row][col]
            for r in range(pivot_row):
                q = work[r][col] // pivot
                if q:
                    work[r] = [x - q * y for x, y in zip(work[r], work[pivot_row])]
            pivot_row += 1
    return pivot_row


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> Rows:
    """Row-style Hermite normal form; zero rows dropped"""
    work = to_rows(rows)
    rank = _echelon(work, ncols)
    return work[:rank]


def integer_kernel(matrix: Sequence[Sequence[int]], nvars: int) -> Rows:
    """Basis (as rows, in Hermite form) of {x in Z^nvars : matrix . x = 0}.

    The kernel of an integer map is always saturated in Z^nvars.
    """
    matrix = to_rows(matrix)
    if not matrix:
        return identity(nvars)
    work = [[row[i] for row in matrix] + identity(nvars)[i] for i in range(nvars)]
    rank = _echelon(work, len(matrix))
    kernel = [row[len(matrix):] for row in work[rank:]]
    logger.debug(f"Integer kernel: {nvars} variables, rank {rank}, kernel dimension {len(kernel)}")
    return hermite_rows(kernel, nvars)


def solve_integral(rows: Sequence[Sequence[int]], basis: Sequence[Sequence[int]]) -> Optional[Rows]:
    """Integer matrix W with rows = W . basis, or None if some row is not an integral combination"""
    rows, basis = to_rows(rows), to_rows(basis)
    if not rows:
        return []
    if not basis:
        return [[] for _ in rows] if all(not any(row) for row in rows) else None
    b = Matrix(basis)
    r = Matrix(rows)
    w = r * b.T * (b * b.T).inv()
    if w * b != r or any(not entry.is_integer for entry in w):
        return None
    return to_rows(w.tolist())
