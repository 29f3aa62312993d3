import pytest

from app.services.ffcore import make_field
from app.services.polynomials import BiPoly, UniPoly, poly_powmod
from app.utils.errors import FieldError


def test_divmod_reconstructs_dividend(f11_2, rng):
    for _ in range(20):
        f = UniPoly(f11_2, [f11_2.random_element(rng) for _ in range(7)])
        g = UniPoly(f11_2, [f11_2.random_element(rng) for _ in range(3)] + [f11_2.one])
        quot, rem = f.divmod(g)
        assert quot * g + rem == f
        assert rem.degree < g.degree


def test_gcd_of_products_sharing_roots(f11_2, rng):
    shared = [f11_2.random_element(rng) for _ in range(2)]
    a = UniPoly.from_roots(f11_2, shared + [f11_2.from_int(1)])
    b = UniPoly.from_roots(f11_2, shared + [f11_2.from_int(2)])
    if f11_2.from_int(1) in shared or f11_2.from_int(2) in shared:
        pytest.skip("raizes sorteadas coincidem com as fixas")
    assert UniPoly.gcd(a, b) == UniPoly.from_roots(f11_2, shared)


def test_powmod_matches_repeated_multiplication(f7):
    m = UniPoly.from_ints(f7, [3, 1, 0, 1])
    base = UniPoly.from_ints(f7, [1, 2])
    expected = UniPoly.one(f7)
    for _ in range(13):
        expected = (expected * base) % m
    assert base.powmod(13, m) == expected
    assert poly_powmod(base, 13, m) == expected


def test_derivative(f7):
    # (X - 2)^2 (X - 5): a raiz dupla também anula a derivada
    f = UniPoly.from_ints(f7, [-20, 24, -9, 1])
    assert f.derivative() == UniPoly.from_ints(f7, [24, -18, 3])
    assert f.derivative()(f7.from_int(2)).is_zero


def test_division_by_zero_polynomial(f7):
    with pytest.raises(FieldError):
        UniPoly.x(f7).divmod(UniPoly.zero(f7))


def test_bipoly_divide_by_x_minus_y(f11_2, rng):
    x_minus_y = BiPoly(f11_2, {(1, 0): f11_2.one, (0, 1): -f11_2.one})
    Q = BiPoly(f11_2, {(i, j): f11_2.random_element(rng) for i in range(3) for j in range(3)})
    F = Q * x_minus_y
    quot, rem = F.divide_by_x_minus_y()
    assert rem.is_zero
    assert quot == Q


def test_bipoly_remainder_is_value_on_diagonal():
    ctx = make_field(5, 1)
    F = BiPoly(ctx, {(2, 0): ctx.one, (0, 0): ctx.from_int(3)})
    _, rem = F.divide_by_x_minus_y()
    # X² + 3 mod (X - Y) = Y² + 3
    assert rem == BiPoly(ctx, {(0, 2): ctx.one, (0, 0): ctx.from_int(3)})


def test_bipoly_evaluation_and_derivatives(f7):
    F = BiPoly(f7, {(2, 1): f7.one, (0, 3): f7.from_int(2), (1, 0): f7.from_int(5)})
    x, y = f7.from_int(3), f7.from_int(4)
    assert F(x, y) == x * x * y + 2 * y ** 3 + 5 * x
    assert F.derivative_x() == BiPoly(f7, {(1, 1): f7.from_int(2), (0, 0): f7.from_int(5)})
    assert F.derivative_y() == BiPoly(f7, {(2, 0): f7.one, (0, 2): f7.from_int(6)})
    assert F.swap()(y, x) == F(x, y)
    assert F.at_x(x)(y) == F(x, y)
    assert F.at_y(y)(x) == F(x, y)
    assert F.diagonal()(x) == F(x, x)
