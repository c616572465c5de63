import random

import pytest
from sympy import Rational

from servers.elliptic.ratpoly import (
    RatPoly,
    derivative,
    exact_quotient,
    factor_monic,
    is_squarefree,
    poly_core,
    poly_gcd,
    resultant,
    squarefree_part,
)
from servers.elliptic.server import EllipticServer
from servers.elliptic.weierstrass import (
    WeierstrassModel,
    discriminant,
    double_quotient_recovers,
    fiber_table,
    fibers_swapped,
    fixed_points_of_translation,
    genericity_check,
    isogenous_coefficients,
    printed_quotient_swaps_fibers,
    quotient_model,
    random_generic_model,
    shioda_tate,
)
from workbench.errors import DivisionByZeroPoly, NonGeneric

# y^2 = x(x^2 + t^4 x + 1 + t^8)
EXAMPLE_A = "0,0,0,0,1"
EXAMPLE_B = "1,0,0,0,0,0,0,0,1"


def poly(*coefficients):
    return RatPoly.of(coefficients)


def test_parse_exact_coefficients():
    p = RatPoly.parse("1, 0, -3/2, 0")
    assert p.coefficients == (1, 0, Rational(-3, 2))
    assert p.degree == 2
    assert RatPoly.parse("").is_zero
    with pytest.raises(ValueError):
        RatPoly.parse("1,x")


def test_gcd_is_monic():
    assert poly_gcd(poly(-1, 0, 1), poly(-1, 1)) == poly(-1, 1)
    assert poly_gcd(poly(0, 2), poly(0, 0, 3)) == poly(0, 1)
    with pytest.raises(DivisionByZeroPoly):
        poly_gcd(RatPoly(), RatPoly())


def test_squarefree_part():
    # (t - 1)^2 (t + 1)
    p = poly(1, -1, -1, 1)
    assert derivative(p) == poly(-1, -2, 3)
    assert squarefree_part(p) == poly(-1, 0, 1)
    assert not is_squarefree(p)
    assert is_squarefree(poly(-1, 0, 1))


def test_exact_quotient():
    assert exact_quotient(poly(-1, 0, 1), poly(1, 1)) == poly(-1, 1)
    with pytest.raises(DivisionByZeroPoly):
        exact_quotient(poly(1, 1), RatPoly())
    with pytest.raises(ValueError):
        exact_quotient(poly(1, 0, 1), poly(1, 1))


def test_resultant_sign_convention():
    t, t_minus_5 = poly(0, 1), poly(-5, 1)
    assert resultant(t, t_minus_5) == 5
    assert resultant(t_minus_5, t) == -5
    assert resultant(poly(-1, 0, 1), poly(-2, 1)) == 3
    assert resultant(t, RatPoly()) == 0
    assert resultant(poly(3), poly(7)) == 1


def test_resultant_detects_common_roots():
    assert resultant(poly(-1, 0, 1), poly(-1, 1)) == 0


def test_poly_core():
    core = poly_core(poly(1, -1, -1, 1), poly(-1, 1))
    assert core["gcd"] == poly(-1, 1)
    assert core["squarefree_part"] == poly(-1, 0, 1)
    assert core["resultant"] == 0


def test_factor_monic_order():
    factors = factor_monic(poly(-2, 0, 2))
    assert factors == [(poly(-1, 1), 1), (poly(1, 1), 1)]


def test_discriminant():
    assert discriminant(WeierstrassModel(a=RatPoly(), b=poly(1))).coefficients == (-64,)
    assert discriminant(WeierstrassModel(a=poly(1), b=RatPoly())).is_zero


def test_degree_bounds():
    with pytest.raises(NonGeneric):
        WeierstrassModel(a=poly(0, 0, 0, 0, 0, 1), b=poly(1))
    with pytest.raises(NonGeneric):
        WeierstrassModel(a=poly(1), b=poly(1, 0, 0, 0, 0, 0, 0, 0, 0, 1))


def test_constant_models_are_built_but_not_generic():
    constant = WeierstrassModel(a=poly(1), b=poly(1))
    assert genericity_check(constant) is not None
    image = isogenous_coefficients(constant)
    assert image.a.coefficients == (-2,)
    assert image.b.coefficients == (-3,)
    with pytest.raises(NonGeneric):
        quotient_model(constant)

    zero_a = isogenous_coefficients(WeierstrassModel(a=RatPoly(), b=poly(1)))
    assert zero_a.a.is_zero
    assert zero_a.b.coefficients == (-4,)


def test_genericity_failures():
    b = RatPoly.parse(EXAMPLE_B)
    common = genericity_check(WeierstrassModel(a=RatPoly(), b=b))
    assert isinstance(common, NonGeneric)
    assert "gcd" in common.reason

    low_degree = genericity_check(WeierstrassModel(a=RatPoly(), b=poly(1, 0, 0, 0, 0, 0, 0, 1)))
    assert "deg b = 7" in low_degree.reason

    square = genericity_check(WeierstrassModel(a=poly(1), b=poly(1, 2, 1) * poly(1, 0, 0, 0, 0, 0, 1)))
    assert square.reason == "b is not square-free"


def test_example_model():
    model = WeierstrassModel.parse(EXAMPLE_A, EXAMPLE_B)
    assert genericity_check(model) is None
    table = fiber_table(model)
    assert table.roots("I1") == table.roots("I2") == 8
    assert (table.euler_sum, table.rho, table.dim_t) == (24, 10, 12)
    assert fibers_swapped(model, quotient_model(model))
    assert not printed_quotient_swaps_fibers(model)


def test_generic_models(generic_models):
    assert len(generic_models) == 20
    for model in generic_models:
        table = fiber_table(model)
        assert table.roots("I1") == 8
        assert table.roots("I2") == 8
        assert table.euler_sum == 24
        assert table.rho == 10
        assert table.dim_t == 12
        assert fixed_points_of_translation(model) == 8


def test_quotients_of_generic_models(generic_models):
    for model in generic_models[:5]:
        image = quotient_model(model)
        assert fibers_swapped(model, image)
        assert fiber_table(image).euler_sum == 24
        assert double_quotient_recovers(model)


def test_quotient_discriminant_has_the_same_roots(generic_models):
    for model in [WeierstrassModel.parse(EXAMPLE_A, EXAMPLE_B)] + generic_models[:5]:
        roots = [factor for factor, _ in factor_monic(discriminant(model))]
        image_roots = [factor for factor, _ in factor_monic(discriminant(quotient_model(model)))]
        assert roots == image_roots


def test_random_models_are_reproducible(generic_models):
    rng = random.Random(20240611)
    assert random_generic_model(rng) == generic_models[0]


def test_isogenous_coefficients():
    image = isogenous_coefficients(WeierstrassModel(a=RatPoly(), b=poly(1)))
    assert image.a.is_zero
    assert image.b == poly(-4)


def test_shioda_tate():
    assert shioda_tate([]) == (2, 20)
    table = fiber_table(WeierstrassModel.parse(EXAMPLE_A, EXAMPLE_B))
    assert shioda_tate(table.entries, mw_rank=1) == (11, 11)


def test_analyze_tool():
    payload = EllipticServer().call_tool("analyze", {"a": EXAMPLE_A, "b": EXAMPLE_B, "quotient": True})
    assert payload["success"]
    assert payload["rho"] == 10
    assert not payload["printed_quotient"]["swaps_fibers"]
    assert all(check["passed"] for check in payload["checks"])


def test_analyze_tool_rejects_special_models():
    payload = EllipticServer().call_tool("analyze", {"a": "0", "b": EXAMPLE_B})
    assert payload["error_type"] == "NonGeneric"
