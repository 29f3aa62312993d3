import math

import pytest

from app.services.charsum import (
    exponent_for,
    is_square_of_linear,
    mu_q1_roots_of_unity,
    weil_sum,
    weil_sum_factored,
    weil_sums_all,
    zeta_search,
    zeta_tally,
)
from app.services.ffcore import make_field, quad_char
from app.utils.element_text import parse_element
from app.utils.errors import FieldError


def test_vectorized_sum_matches_scalar(f11_2, rng):
    for _ in range(5):
        mu = f11_2.random_element(rng, nonzero=True)
        assert weil_sum(f11_2, mu).sum_value == weil_sum_factored(f11_2, mu)


def test_weil_bound_for_every_mu(f11_3):
    reports = weil_sums_all(f11_3, workers=2)
    assert len(reports) == f11_3.order - 1
    quarter = f11_3.from_int(4).inverse()
    for r in reports:
        mu = parse_element(f11_3, r.mu)
        assert r.linear_sum == 0
        if mu == quarter:
            # (4(Z-1)/4 + 1)Z = Z²: a soma degenera em q - 1
            assert is_square_of_linear(mu)
            assert r.sum_value == f11_3.order - 1
        else:
            assert r.satisfied, f"|S({r.mu})| = {abs(r.sum_value)} > sqrt(q)"
            assert r.sum_value ** 2 <= f11_3.order
    assert reports[0].bound == pytest.approx(math.sqrt(1331))


def test_square_of_linear_detection(f7):
    assert is_square_of_linear(f7.from_int(4).inverse())
    assert not is_square_of_linear(f7.from_int(3))
    with pytest.raises(FieldError):
        is_square_of_linear(f7.zero)


def test_zeta_search_finds_valid_zeta(f11_3, rng):
    for _ in range(10):
        mu = f11_3.random_element(rng, nonzero=True)
        zeta = zeta_search(f11_3, mu)
        assert zeta is not None
        assert quad_char(zeta) == -1
        assert quad_char(4 * (zeta - 1) * mu + 1) == -1


def test_zeta_tally_close_to_formula(f11_2, rng):
    for _ in range(5):
        mu = f11_2.random_element(rng, nonzero=True)
        tally = zeta_tally(f11_2, mu)
        assert tally.exact_count > 0
        # só ζ = 0 e 4(ζ-1)μ+1 = 0 escapam da fórmula, cada um com peso até 1/2
        assert -1 <= tally.discrepancy <= 0
        assert tally.first_zeta is not None


def test_roots_of_minus_one(f11_3):
    zetas = mu_q1_roots_of_unity(f11_3, "p2+p+1")
    assert len(zetas) == 133
    assert all(z ** 133 == -f11_3.one for z in zetas)
    assert zetas == sorted(zetas)
    f11_2 = make_field(11, 2)
    assert len(mu_q1_roots_of_unity(f11_2, "p+1")) == 12


def test_exponent_forms():
    assert exponent_for("p+1", 7) == 8
    assert exponent_for("p^2+p+1", 7) == 57
    assert exponent_for(5, 7) == 5
    with pytest.raises(FieldError):
        exponent_for("p^3", 7)


def test_rejects_zero_mu(f7):
    with pytest.raises(FieldError):
        weil_sum(f7, f7.zero)
