import numpy as np
import pytest

from app.services.ffcore import make_field, make_quadratic_extension, quad_char
from app.services.field_arrays import (
    batch_gcd_degree,
    batch_make_monic,
    batch_powmod_x,
    flat_arrays,
    quad_arrays,
)
from app.services.polynomials import UniPoly


@pytest.fixture(scope="module")
def f5_3():
    return make_field(5, 3)


def test_flat_arithmetic_matches_scalar_layer(f5_3):
    F = flat_arrays(f5_3)
    xs = F.all_elements()
    ys = xs[::-1].copy()
    elems = list(f5_3.elements())
    prod = F.mul(xs, ys)
    summ = F.add(xs, ys)
    inv = F.inv(xs)
    frob = F.frobenius(xs, 1)
    chi = F.quad_char(xs)
    for i, x in enumerate(elems):
        y = elems[-1 - i]
        assert f5_3.from_index(int(prod[i])) == x * y
        assert f5_3.from_index(int(summ[i])) == x + y
        assert f5_3.from_index(int(frob[i])) == x ** 5
        assert int(chi[i]) == quad_char(x)
        if not x.is_zero:
            assert f5_3.from_index(int(inv[i])) == x.inverse()


def test_quad_arithmetic_matches_scalar_layer(rng):
    ctx2 = make_quadratic_extension(make_field(5, 2))
    Q = quad_arrays(ctx2)
    xs = [ctx2.random_element(rng) for _ in range(40)]
    ys = [ctx2.random_element(rng) for _ in range(40)]
    bx = Q.from_indices(np.array([x.index for x in xs]))
    by = Q.from_indices(np.array([y.index for y in ys]))
    assert Q.to_elements(Q.mul(bx, by)) == [x * y for x, y in zip(xs, ys)]
    assert Q.to_elements(Q.conj(bx)) == [ctx2.conj(x) for x in xs]
    assert Q.to_elements(Q.frobenius(bx, 1)) == [x.frobenius(1) for x in xs]
    assert Q.to_elements(Q.pow_int(bx, 7)) == [x ** 7 for x in xs]
    inv = Q.to_elements(Q.inv(bx))
    for x, xi in zip(xs, inv):
        assert xi == (x.inverse() if not x.is_zero else ctx2.zero)


def test_batch_root_counting_matches_polynomial_gcd(rng):
    ctx = make_field(7, 2)
    F = flat_arrays(ctx)
    polys = []
    for _ in range(12):
        roots = [ctx.random_element(rng) for _ in range(3)]
        polys.append(UniPoly.from_roots(ctx, roots))
    M = np.array([[c.index for c in f.coeffs] for f in polys], dtype=np.int64)
    G = batch_make_monic(F, M)
    xq = batch_powmod_x(F, ctx.order, G)
    x = np.zeros_like(xq)
    x[:, 1] = ctx.index(ctx.one)
    degs = batch_gcd_degree(F, G, F.sub(xq, x))
    X = UniPoly.x(ctx)
    for f, d in zip(polys, degs):
        expected = UniPoly.gcd(f, X.powmod(ctx.order, f) - X).degree
        assert int(d) == expected
