import logging
import random
from typing import List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import expand, symbols

from workbench.errors import NonGeneric

from .ratpoly import RatPoly, factor_monic, is_squarefree, poly_gcd

logger = logging.getLogger(__name__)

A_MAX_DEGREE = 4
B_DEGREE = 8
KODAIRA_COMPONENTS = {"I1": 1, "I2": 2}
EXPECTED_ROOTS = 8


class WeierstrassModel(BaseModel):
    """y^2 = x(x^2 + a(t)x + b(t)) in affine t

    deg a <= 4 and deg b <= 8 hold for every instance; a larger degree is a
    NonGeneric error at construction. genericity_check covers the remaining
    conditions, so non-generic models such as constant ones still reach
    isogenous_coefficients.
    """

    model_config = ConfigDict(frozen=True)

    a: RatPoly
    b: RatPoly

    @model_validator(mode="after")
    def _check_degrees(self) -> "WeierstrassModel":
        if (self.a.degree or 0) > A_MAX_DEGREE:
            raise NonGeneric(f"deg a = {self.a.degree} exceeds {A_MAX_DEGREE}")
        if (self.b.degree or 0) > B_DEGREE:
            raise NonGeneric(f"deg b = {self.b.degree} exceeds {B_DEGREE}")
        return self

    @classmethod
    def parse(cls, a: str, b: str) -> "WeierstrassModel":
        return cls(a=RatPoly.parse(a), b=RatPoly.parse(b))

    def a2_minus_4b(self) -> RatPoly:
        return self.a * self.a - self.b.scale(4)

    def __str__(self) -> str:
        return f"y^2 = x(x^2 + ({self.a})x + ({self.b}))"


class FiberEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    factor: RatPoly
    kodaira: Literal["I1", "I2"]
    root_count: int

    @model_validator(mode="after")
    def _check_count(self) -> "FiberEntry":
        if self.root_count != self.factor.degree:
            raise ValueError("root_count is the degree of the factor")
        return self


class FiberTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: Tuple[FiberEntry, ...]
    euler_sum: int
    rho: int
    dim_t: int

    @model_validator(mode="after")
    def _check_euler(self) -> "FiberTable":
        expected = sum(KODAIRA_COMPONENTS[e.kodaira] * e.root_count for e in self.entries)
        if self.euler_sum != expected:
            raise ValueError(f"euler_sum {self.euler_sum} != {expected}")
        return self

    def roots(self, kodaira: str) -> int:
        return sum(e.root_count for e in self.entries if e.kodaira == kodaira)

    def factors(self, kodaira: str) -> List[RatPoly]:
        return [e.factor for e in self.entries if e.kodaira == kodaira]


def discriminant(model: WeierstrassModel) -> RatPoly:
    """16 b^2 (a^2 - 4b)"""
    return (model.b * model.b * model.a2_minus_4b()).scale(16)


def genericity_check(model: WeierstrassModel) -> Optional[NonGeneric]:
    """None when the model is general, otherwise the first failed condition"""
    b, delta = model.b, model.a2_minus_4b()
    if b.degree != B_DEGREE:
        return NonGeneric(f"deg b = {b.degree}, expected {B_DEGREE}")
    if delta.degree != B_DEGREE:
        return NonGeneric(f"deg(a^2 - 4b) = {delta.degree}, expected {B_DEGREE}")
    if not is_squarefree(b):
        return NonGeneric("b is not square-free")
    if not is_squarefree(delta):
        return NonGeneric("a^2 - 4b is not square-free")
    if poly_gcd(b, delta).degree != 0:
        return NonGeneric("gcd(b, a^2 - 4b) != 1")
    if b.constant == 0 or delta.constant == 0:
        return NonGeneric("b and a^2 - 4b need nonzero constant terms")
    return None


def require_generic(model: WeierstrassModel):
    failure = genericity_check(model)
    if failure is not None:
        raise failure


def shioda_tate(entries: Sequence[FiberEntry], mw_rank: int = 0) -> Tuple[int, int]:
    """rho = 2 + sum (m_v - 1) + mw_rank, and dim T = 22 - rho"""
    if mw_rank < 0:
        raise ValueError("mw_rank is nonnegative")
    rho = 2 + sum((KODAIRA_COMPONENTS[e.kodaira] - 1) * e.root_count for e in entries) + mw_rank
    return rho, 22 - rho


def fiber_table(model: WeierstrassModel) -> FiberTable:
    """I_2 over the zeroes of b, I_1 over the zeroes of a^2 - 4b; roots are counted by degree"""
    require_generic(model)
    entries = []
    for kodaira, poly in (("I1", model.a2_minus_4b()), ("I2", model.b)):
        for factor, _ in factor_monic(poly):
            entries.append(FiberEntry(factor=factor, kodaira=kodaira, root_count=factor.degree))
    rho, dim_t = shioda_tate(entries)
    table = FiberTable(
        entries=tuple(entries),
        euler_sum=sum(KODAIRA_COMPONENTS[e.kodaira] * e.root_count for e in entries),
        rho=rho,
        dim_t=dim_t,
    )
    logger.debug(f"{model}: {len(entries)} irreducible factors, rho = {rho}")
    return table


def isogenous_coefficients(model: WeierstrassModel) -> WeierstrassModel:
    """a' = -2a, b' = a^2 - 4b"""
    return WeierstrassModel(a=model.a.scale(-2), b=model.a2_minus_4b())


def quotient_model(model: WeierstrassModel) -> WeierstrassModel:
    """2-isogeny quotient by the section (0, 0)"""
    require_generic(model)
    return isogenous_coefficients(model)


def printed_quotient_b(model: WeierstrassModel) -> RatPoly:
    """The quotient coefficient with 9a^2 in place of a^2"""
    return (model.a * model.a).scale(9) - model.b.scale(4)


def fibers_swapped(model: WeierstrassModel, quotient: WeierstrassModel) -> bool:
    """I_1 factors of one model are the I_2 factors of the other, both ways"""
    original, image = fiber_table(model), fiber_table(quotient)
    return original.factors("I1") == image.factors("I2") and original.factors("I2") == image.factors("I1")


def printed_quotient_swaps_fibers(model: WeierstrassModel) -> bool:
    a_prime = model.a.scale(-2)
    delta_prime = a_prime * a_prime - printed_quotient_b(model).scale(4)
    return [f for f, _ in factor_monic(delta_prime)] == [f for f, _ in factor_monic(model.b)]


def double_quotient_recovers(model: WeierstrassModel) -> bool:
    """Substituting (x, y) -> (4x, 8y) in the double quotient gives 64 times the original equation"""
    twice = quotient_model(quotient_model(model))
    x, y = symbols("x y")

    def equation(m: WeierstrassModel, xv, yv):
        a, b = m.a.to_poly().as_expr(), m.b.to_poly().as_expr()
        return yv**2 - xv * (xv**2 + a * xv + b)

    return expand(equation(twice, 4 * x, 8 * y) - 64 * equation(model, x, y)) == 0


def fixed_points_of_translation(model: WeierstrassModel) -> int:
    """Translation by (0, 0) fixes exactly the nodes of the I_1 fibers"""
    return fiber_table(model).roots("I1")


def random_generic_model(rng: random.Random, bound: int = 3, max_tries: int = 1000) -> WeierstrassModel:
    """Rejection sampling over small integer coefficients"""
    for attempt in range(1, max_tries + 1):
        a = [rng.randint(-bound, bound) for _ in range(A_MAX_DEGREE + 1)]
        b = [rng.randint(-bound, bound) for _ in range(B_DEGREE)] + [rng.choice([-1, 1]) * rng.randint(1, bound)]
        model = WeierstrassModel(a=RatPoly.of(a), b=RatPoly.of(b))
        if genericity_check(model) is None:
            logger.debug(f"Generic model found after {attempt} draw(s)")
            return model
    raise NonGeneric(f"no generic model in {max_tries} draws")


def model_summary(model: WeierstrassModel) -> dict:
    return {"a": model.a.as_strings(), "b": model.b.as_strings(), "equation": str(model)}
