import random
from collections import Counter

import pytest

from app.services.cubic import (
    branch_root_sets,
    cardano_roots,
    cube_roots,
    cubic_roots,
    displayed_cubic_coeffs,
    root_multiset,
    vieta_checks,
)
from app.services.ffcore import embedding, make_field, roots_in_field
from app.services.polynomials import UniPoly
from app.utils.errors import FieldError, RadicalMissing
from config import settings


def test_cubic_roots_match_scan(f11_2, rng):
    for _ in range(30):
        coeffs = [f11_2.random_element(rng) for _ in range(3)] + [f11_2.random_element(rng, nonzero=True)]
        roots = cubic_roots(coeffs, f11_2)
        scan = {x for x in f11_2.elements()
                if (coeffs[0] + coeffs[1] * x + coeffs[2] * x * x + coeffs[3] * x ** 3).is_zero}
        assert roots == scan


def test_cubic_roots_in_extension(rng):
    K, W = make_field(11, 1), make_field(11, 3)
    coeffs = [K.from_int(v) for v in (1, 0, 1, 1)]
    emb = embedding(K, W)
    for r in cubic_roots(coeffs, W):
        c = [emb(v) for v in coeffs]
        assert (c[0] + c[1] * r + c[2] * r * r + c[3] * r ** 3).is_zero


def test_root_multiset_counts_multiplicity(f7):
    # (X - 2)^2 (X - 5)
    coeffs = [f7.from_int(v) for v in (-20, 24, -9, 1)]
    assert root_multiset(coeffs, f7) == Counter({f7.from_int(2): 2, f7.from_int(5): 1})


def test_degenerate_and_small_characteristic_inputs(f7):
    with pytest.raises(FieldError):
        cubic_roots([f7.one, f7.one, f7.one, f7.zero], f7)
    f3 = make_field(3, 2)
    with pytest.raises(FieldError):
        cubic_roots([f3.one] * 4, f3)


@pytest.mark.parametrize("p,k", [(5, 1), (7, 1), (5, 2), (11, 2), (19, 1), (7, 3)])
def test_cube_roots_match_scan(p, k):
    ctx = make_field(p, k)
    cubes = {}
    for y in ctx.elements():
        cubes.setdefault(y ** 3, set()).add(y)
    for x in ctx.elements():
        assert set(cube_roots(x)) == cubes.get(x, set())


def test_cube_roots_in_large_field(rng):
    # 11^18 - 1 tem fator 3^3: exercita a correção no 3-subgrupo
    W = make_field(11, 18)
    for _ in range(5):
        y = W.random_element(rng, nonzero=True)
        roots = cube_roots(y ** 3)
        assert len(roots) == 3 and y in roots
        poly = UniPoly(W, [-(y ** 3), W.zero, W.zero, W.one])
        assert set(roots) == roots_in_field(poly, W)


def _cardano_draws(p: int, k: int, count: int):
    ctx = make_field(p, k)
    rng = random.Random(settings.DEFAULT_SEED + k)
    for _ in range(count):
        zeta = ctx.random_element(rng, nonzero=True)
        mu = ctx.random_element(rng, nonzero=True)
        T = ctx.random_element(rng, nonzero=True)
        yield zeta, mu, T


@pytest.mark.parametrize("p,k,count", [(11, 2, 25), (11, 3, 10)])
def test_cardano_roots_agree_with_generic_method(p, k, count):
    checked = 0
    for zeta, mu, T in _cardano_draws(p, k, count):
        try:
            triple, data = cardano_roots(zeta, mu, T)
        except (RadicalMissing, FieldError):
            continue
        W = data.ctx
        coeffs = displayed_cubic_coeffs(zeta, mu, T)
        assert Counter(triple) == root_multiset(coeffs, W)
        assert all(vieta_checks(triple, *(embedding(zeta.ctx, W)(v) for v in (zeta, mu, T))).values())
        sets = branch_root_sets(data)
        assert all(s == sets[0] for s in sets)
        checked += 1
    assert checked > 0


@pytest.mark.slow
@pytest.mark.parametrize("p,k", [(11, 2), (11, 3)])
def test_cardano_cross_validation_full(p, k):
    for zeta, mu, T in _cardano_draws(p, k, 100):
        try:
            triple, data = cardano_roots(zeta, mu, T)
        except (RadicalMissing, FieldError):
            continue
        assert Counter(triple) == root_multiset(displayed_cubic_coeffs(zeta, mu, T), data.ctx)
