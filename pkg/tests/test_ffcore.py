import itertools
import random

import pytest

from app.services.ffcore import (
    arith,
    embedding,
    find_irreducible,
    frobenius,
    is_irreducible_mod_p,
    is_primitive_modulus,
    make_field,
    make_field_with_modulus,
    make_quadratic_extension,
    multiplicative_generator,
    quad_char,
    rel_norm,
    rel_trace,
    roots_in_field,
    sqrt,
)
from app.services.polynomials import UniPoly
from app.utils.element_text import format_element, parse_element
from app.utils.errors import ElementParseError, FieldError


def test_make_field_is_cached_and_sized():
    ctx = make_field(11, 3)
    assert len(ctx.modulus) == 4 and ctx.modulus[-1] == 1
    assert ctx is make_field(11, 3)
    assert ctx.order == 1331


@pytest.mark.parametrize("p,k", [(5, 3), (7, 2), (11, 2)])
def test_irreducible_search_returns_lexicographic_minimum(p, k):
    first = next(list(t) + [1] for t in itertools.product(range(p), repeat=k)
                 if is_irreducible_mod_p(list(t) + [1], p))
    assert find_irreducible(p, k) == first


def test_large_working_fields_build():
    # graus usados por Cardano sobre F_{11^3}
    for k in (9, 18):
        modulus = find_irreducible(11, k)
        assert len(modulus) == k + 1 and modulus[0] != 0
        assert is_irreducible_mod_p(modulus, 11)
    W = make_field(11, 18)
    x = W.generator_x
    assert x ** (W.order - 1) == W.one


def test_make_field_rejects_bad_parameters():
    with pytest.raises(FieldError):
        make_field(9, 2)
    with pytest.raises(FieldError):
        make_field(7, 0)


def test_field_axioms_on_random_elements(f11_3, rng):
    for _ in range(50):
        a, b, c = (f11_3.random_element(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        if not a.is_zero:
            assert a * a.inverse() == f11_3.one
            assert a ** (f11_3.order - 1) == f11_3.one


def test_index_roundtrip_and_canonical_order(f11_2):
    elems = list(f11_2.elements())
    assert [x.index for x in elems] == list(range(f11_2.order))
    assert elems == sorted(elems)
    assert f11_2.from_index(57) == elems[57]


def test_frobenius_is_power_map(f11_3, rng):
    for _ in range(20):
        x = f11_3.random_element(rng)
        assert frobenius(x, 1) == x ** 11
        assert frobenius(x, 2) == x ** 121
        assert frobenius(x, 3) == x


def test_quadratic_extension_conjugation(quad_11_2, rng):
    ctx2 = quad_11_2
    q = ctx2.q
    for _ in range(20):
        x = ctx2.random_element(rng)
        assert ctx2.conj(x) == x ** q
        assert ctx2.in_base(rel_trace(x))
        assert ctx2.in_base(x * ctx2.conj(x))
    assert ctx2.i * ctx2.i == ctx2.lift(ctx2.d)
    assert quad_char(ctx2.d) == -1


def test_rel_norm_lands_in_subfield(f11_3, rng):
    for _ in range(10):
        a = f11_3.random_element(rng, nonzero=True)
        n = rel_norm(a, 1)
        assert n ** 10 == f11_3.one


def test_explicit_modulus_constructor():
    ctx = make_field_with_modulus(11, [2, 7, 6, 4, 3, 0, 1])
    assert ctx.order == 11 ** 6
    if is_primitive_modulus(ctx):
        assert ctx.generator_x ** ((ctx.order - 1) // 2) != ctx.one
    with pytest.raises(FieldError):
        make_field_with_modulus(11, [1, 0, 1, 0, 0, 0, 1, 5])
    with pytest.raises(FieldError):
        # x^2 - 1 = (x - 1)(x + 1)
        make_field_with_modulus(11, [-1, 0, 1])


def test_sqrt_and_quadratic_character(f11_2):
    squares = 0
    for x in f11_2.elements():
        roots = sqrt(x)
        if x.is_zero:
            assert quad_char(x) == 0
            continue
        if roots is None:
            assert quad_char(x) == -1
            continue
        squares += 1
        assert quad_char(x) == 1
        r0, r1 = roots
        assert r0 * r0 == x and r1 * r1 == x
        assert r0 == -r1
    assert squares == (f11_2.order - 1) // 2


def test_multiplicative_generator_has_full_order(f11_2):
    g = multiplicative_generator(f11_2)
    seen = set()
    x = f11_2.one
    for _ in range(f11_2.order - 1):
        seen.add(x)
        x = x * g
    assert len(seen) == f11_2.order - 1


def test_roots_in_field_scan_and_gcd_paths(rng):
    small = make_field(11, 2)
    roots = [small.random_element(rng) for _ in range(4)]
    f = UniPoly.from_roots(small, roots)
    assert roots_in_field(f) == set(roots)

    # corpo acima de EXHAUSTIVE_ROOT_LIMIT: caminho gcd + Cantor-Zassenhaus
    big = make_field(11, 5)
    roots = [big.random_element(rng) for _ in range(3)]
    extra = UniPoly(big, [big.one, big.zero, big.one])
    f = UniPoly.from_roots(big, roots) * extra
    found = roots_in_field(f)
    assert set(roots) <= found
    assert all(f(r).is_zero for r in found)


def test_embedding_is_a_ring_homomorphism(rng):
    src, dst = make_field(11, 2), make_field(11, 6)
    emb = embedding(src, dst)
    for _ in range(20):
        a, b = src.random_element(rng), src.random_element(rng)
        assert emb(a + b) == emb(a) + emb(b)
        assert emb(a * b) == emb(a) * emb(b)
    with pytest.raises(FieldError):
        embedding(make_field(11, 4), dst)


def test_quad_extension_embeds_into_flat_field(rng):
    base = make_field(7, 2)
    ctx2 = make_quadratic_extension(base)
    flat = make_field(7, 4)
    emb = embedding(ctx2, flat)
    for _ in range(20):
        a, b = ctx2.random_element(rng), ctx2.random_element(rng)
        assert emb(a * b) == emb(a) * emb(b)


def test_mixed_context_arithmetic_is_rejected():
    a = make_field(7, 2).one
    b = make_field(7, 3).one
    with pytest.raises(FieldError):
        _ = a + b
    with pytest.raises(FieldError):
        arith(a, b, "add")


def test_element_text_codec(f11_3):
    x = parse_element(f11_3, "1,2,3")
    assert x.coeffs == (1, 2, 3)
    assert parse_element(f11_3, "1;2;3") == x
    assert format_element(x) == "1;2;3"
    assert format_element(parse_element(f11_3, "-1")) == "10"
    for bad in ("", "1,a", "1,2,3,4", "1.5"):
        with pytest.raises(ElementParseError):
            parse_element(f11_3, bad)


def test_arith_dispatch(f11_2):
    rng = random.Random(3)
    a, b = f11_2.random_element(rng, nonzero=True), f11_2.random_element(rng, nonzero=True)
    assert arith(a, b, "div") * b == a
    assert arith(a, None, "pow", 3) == a * a * a
    with pytest.raises(FieldError):
        arith(a, b, "xor")
