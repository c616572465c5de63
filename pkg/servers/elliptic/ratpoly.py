import logging
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator
from sympy import QQ, Matrix, Poly, Rational, Symbol
from sympy.polys.subresultants_qq_zz import sylvester

from servers.exact import Exact, to_rational
from workbench.errors import DivisionByZeroPoly

logger = logging.getLogger(__name__)

T = Symbol("t")


class RatPoly(BaseModel):
    """Ascending coefficients c_0 + c_1 t + ..., without trailing zeros.

    The zero polynomial has no coefficients and degree None.
    """

    model_config = ConfigDict(frozen=True)

    coefficients: Tuple[Exact, ...] = ()

    @field_validator("coefficients")
    @classmethod
    def _strip(cls, coefficients):
        coefficients = list(coefficients)
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        return tuple(coefficients)

    @classmethod
    def of(cls, coefficients: Sequence) -> "RatPoly":
        return cls(coefficients=tuple(coefficients))

    @classmethod
    def parse(cls, text: str) -> "RatPoly":
        """Comma-separated exact rationals, ascending by degree: "1,0,-3/2" is 1 - 3/2 t^2"""
        if not text.strip():
            return cls()
        return cls.of([to_rational(part) for part in text.split(",")])

    @classmethod
    def from_poly(cls, poly: Poly) -> "RatPoly":
        if poly.is_zero:
            return cls()
        return cls.of(reversed(poly.all_coeffs()))

    def to_poly(self) -> Poly:
        if self.is_zero:
            return Poly(0, T, domain=QQ)
        return Poly(list(reversed(self.coefficients)), T, domain=QQ)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> Optional[int]:
        return None if self.is_zero else len(self.coefficients) - 1

    @property
    def leading(self) -> Rational:
        return self.coefficients[-1] if self.coefficients else Rational(0)

    @property
    def constant(self) -> Rational:
        return self.coefficients[0] if self.coefficients else Rational(0)

    def __add__(self, other: "RatPoly") -> "RatPoly":
        return RatPoly.from_poly(self.to_poly() + other.to_poly())

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return RatPoly.from_poly(self.to_poly() - other.to_poly())

    def __mul__(self, other: "RatPoly") -> "RatPoly":
        return RatPoly.from_poly(self.to_poly() * other.to_poly())

    def scale(self, c) -> "RatPoly":
        c = to_rational(c)
        return RatPoly.of([c * x for x in self.coefficients])

    def monic(self) -> "RatPoly":
        if self.is_zero:
            raise DivisionByZeroPoly("the zero polynomial has no leading coefficient")
        return self.scale(1 / self.leading)

    def as_strings(self) -> List[str]:
        return [str(c) for c in self.coefficients]

    def __str__(self) -> str:
        return str(self.to_poly().as_expr())


ZERO_POLY = RatPoly()


def poly_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    """Monic gcd"""
    if p.is_zero and q.is_zero:
        raise DivisionByZeroPoly("gcd(0, 0) is undefined")
    return RatPoly.from_poly(p.to_poly().gcd(q.to_poly()).monic())


def derivative(p: RatPoly) -> RatPoly:
    return RatPoly.from_poly(p.to_poly().diff(T))


def exact_quotient(p: RatPoly, q: RatPoly) -> RatPoly:
    if q.is_zero:
        raise DivisionByZeroPoly(f"division of {p} by the zero polynomial")
    quotient, remainder = p.to_poly().div(q.to_poly())
    if not remainder.is_zero:
        raise ValueError(f"{q} does not divide {p}")
    return RatPoly.from_poly(quotient)


def squarefree_part(p: RatPoly) -> RatPoly:
    """p / gcd(p, p')"""
    if p.is_zero:
        raise DivisionByZeroPoly("the zero polynomial has no square-free part")
    return exact_quotient(p, poly_gcd(p, derivative(p)))


def is_squarefree(p: RatPoly) -> bool:
    return not p.is_zero and poly_gcd(p, derivative(p)).degree == 0


def resultant(p: RatPoly, q: RatPoly) -> Rational:
    """lc(q)^deg(p) times the product of p over the roots of q (Sylvester determinant of q, p)"""
    if p.is_zero or q.is_zero:
        return Rational(0)
    if p.degree == 0 and q.degree == 0:
        return Rational(1)
    matrix = sylvester(q.to_poly().as_expr(), p.to_poly().as_expr(), T)
    value = Matrix(matrix).det(method="bareiss")
    logger.debug(f"Sylvester matrix of size {matrix.rows} for res({p}, {q}) = {value}")
    return Rational(value)


def poly_core(p: RatPoly, q: RatPoly) -> dict:
    return {
        "gcd": poly_gcd(p, q),
        "squarefree_part": squarefree_part(p),
        "derivative": derivative(p),
        "resultant": resultant(p, q),
    }


def factor_monic(p: RatPoly) -> List[Tuple[RatPoly, int]]:
    """Monic irreducible factors over Q with multiplicities, in a fixed order"""
    if p.is_zero:
        raise DivisionByZeroPoly("the zero polynomial has no factorization")
    _, factors = p.to_poly().factor_list()
    monic = [(RatPoly.from_poly(f.monic()), m) for f, m in factors]
    return sorted(monic, key=lambda fm: (fm[0].degree, [str(c) for c in fm[0].coefficients]))
