import logging
from math import isqrt
from typing import List, Sequence, Tuple

from sympy.polys.domains import QQ

logger = logging.getLogger(__name__)


def _completed_squares(gram: Sequence[Sequence[int]]):
    n = len(gram)
    q = [[QQ(int(entry)) for entry in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for m in range(k, n):
                q[k][m] -= q[k][i] * q[i][m]
    return q


def _floor(value) -> int:
    return int(value.numerator) // int(value.denominator)


def _rational_sqrt_floor(value) -> int:
    """floor(sqrt(p/q)) for a nonnegative rational p/q"""
    p, r = int(value.numerator), int(value.denominator)
    return isqrt(p * r) // r


def vectors_up_to(gram: Sequence[Sequence[int]], bound: int) -> List[Tuple[Tuple[int, ...], int]]:
    """All nonzero x with x^T G x <= bound, paired with their norm"""
    n = len(gram)
    q = _completed_squares(gram)
    found: List[Tuple[Tuple[int, ...], int]] = []
    x = [0] * n

    def descend(i: int, remaining):
        if i < 0:
            if any(x):
                norm = sum(x[a] * gram[a][b] * x[b] for a in range(n) for b in range(n))
                found.append((tuple(x), norm))
            return
        center = sum((q[i][j] * x[j] for j in range(i + 1, n)), QQ(0))
        radius = _rational_sqrt_floor(remaining / q[i][i])
        for xi in range(_floor(-center) - radius - 1, _floor(-center) + radius + 2):
            spent = q[i][i] * (xi + center) ** 2
            if spent <= remaining:
                x[i] = xi
                descend(i - 1, remaining - spent)
        x[i] = 0

    descend(n - 1, QQ(bound))
    logger.debug(f"Enumerated {len(found)} vectors of norm <= {bound}")
    return found
