import random

import pytest

from app.services.conjecture import (
    DOCUMENTED_MASK,
    GammaEquation,
    beta_from_alpha,
    brute_preimages,
    census_masks,
    conjecture_table,
    degenerate_zeta,
    expected_verdict,
    find_h_antisymmetric_T,
    gamma_pipeline_trace,
    gamma_root_pipeline,
    h_kernel,
    k2_nonperm_witness,
    k2_uniqueness,
    locate_census_mask,
    mu_census,
    mu_from_alpha,
    roots_of_unity,
    t_parameter,
    t_zero_branch,
)
from app.services.ffcore import make_field, make_quadratic_extension
from app.services.permlab import make_params
from app.utils.errors import FieldError, PropertyViolation
from config import settings


def _h_outside_base(ctx2, rng):
    while True:
        h = ctx2.random_element(rng)
        if not ctx2.in_base(h):
            return h


# =============================================================================
# VEREDITOS
# =============================================================================

def test_expected_verdict():
    assert expected_verdict(7, 1, -3) == "permutation"
    assert expected_verdict(7, 2, -1) == "permutation"
    assert expected_verdict(7, 1, -1) == "not_permutation"
    assert expected_verdict(7, 2, "1,0") == "not_permutation"
    with pytest.raises(FieldError):
        expected_verdict(7, 1, 0)


def test_conjecture_table_small():
    rows = conjecture_table(7, [1, 2], workers=2)
    assert len(rows) == 6 + 48
    assert all(r.agrees for r in rows), [r.alpha for r in rows if not r.agrees]
    assert [r.k for r in rows] == [1] * 6 + [2] * 48
    assert sum(r.verdict == "permutation" for r in rows) == 2
    for r in rows:
        assert (r.witness is None) == (r.verdict == "permutation")


# =============================================================================
# EQUAÇÃO EM γ
# =============================================================================

def test_alpha_mu_beta_relations(f11_2):
    ctx2 = make_quadratic_extension(f11_2)
    for alpha in (f11_2.from_int(3), f11_2.from_coeffs([1, 4])):
        mu = mu_from_alpha(alpha)
        assert mu * (alpha + 2) == f11_2.one
        beta = beta_from_alpha(ctx2, alpha)
        assert beta.frobenius(1) == ctx2.lift(alpha)
    with pytest.raises(FieldError):
        mu_from_alpha(f11_2.from_int(-2))


def test_gamma_equation_invariants(rng):
    ctx2 = make_params(11, 2, 1).ctx2
    for _ in range(5):
        mu = ctx2.lift(ctx2.base.random_element(rng, nonzero=True))
        T = ctx2.random_element(rng)
        eq = GammaEquation(ctx2, mu, T)
        eq.check_invariants()
        assert eq.omega == T * T
        assert eq.displayed_coeffs()[:2] == eq.derived_coeffs()[:2]
        assert eq.derived_coeffs()[4] * 2 == eq.displayed_coeffs()[4] / 4
    with pytest.raises(FieldError):
        GammaEquation(ctx2, ctx2.zero, ctx2.one)


def test_t_parameter_undefined_on_base(f11_2):
    ctx2 = make_quadratic_extension(f11_2)
    with pytest.raises(FieldError):
        t_parameter(ctx2.lift(f11_2.from_int(5)))


@pytest.mark.parametrize("p,k,alpha", [(11, 2, 3), (11, 2, -1), (5, 3, 1), (5, 3, 2)])
def test_gamma_pipeline_matches_brute_force(p, k, alpha):
    params = make_params(p, k, alpha)
    rng = random.Random(settings.DEFAULT_SEED + p + k)
    for _ in range(4):
        h = _h_outside_base(params.ctx2, rng)
        assert gamma_root_pipeline(p, k, alpha, h) == brute_preimages(params, h)


def test_pipeline_trace_roots_are_admissible():
    params = make_params(5, 3, 1)
    h = _h_outside_base(params.ctx2, random.Random(3))
    trace = gamma_pipeline_trace(5, 3, 1, h)
    for zeta, gammas in trace.per_zeta:
        for g in gammas:
            assert g.frobenius(1) == params.ctx2.lift(zeta) * g
            assert trace.equation.evaluate(g).is_zero
    assert len(trace.solutions) == len(trace.gammas)


def test_pipeline_rejects_h_in_base():
    params = make_params(5, 2, 1)
    with pytest.raises(FieldError):
        gamma_pipeline_trace(5, 2, 1, params.ctx2.one)


# =============================================================================
# h COM T^p = -T
# =============================================================================

def test_h_construction_k3():
    base = make_field(5, 3)
    rng = random.Random(settings.DEFAULT_SEED)
    half = base.from_int(2).inverse()
    for _ in range(5):
        mu = base.random_element(rng, nonzero=True)
        if mu == half:
            continue
        T, a, kernel = h_kernel(5, 3, mu)
        assert T.frobenius(1) == -T
        assert kernel.dimension >= 1
        h = find_h_antisymmetric_T(5, 3, mu)
        assert not h.ctx.in_base(h)
        assert h.frobenius(3) == -a * h


def test_h_construction_impossible_for_k2():
    with pytest.raises(PropertyViolation):
        find_h_antisymmetric_T(7, 2, 3)
    with pytest.raises(FieldError):
        h_kernel(7, 4, 3)


# =============================================================================
# CENSO E RAMO t = 0
# =============================================================================

def test_census_structure_p11():
    report = mu_census(11)
    assert report.total == 1330
    assert report.zeta_count == 133
    assert set(report.per_zeta_root_counts.values()) == {11}
    assert report.max_shared <= 1
    assert report.lower_bound == 66
    assert report.qualifying_count <= report.union_size <= 133 * 11
    assert report.condition_mask == list(DOCUMENTED_MASK) + ["distinct_mu"]
    assert report.reference == settings.CENSUS_REFERENCE[11]
    assert report.qualifying_count == 522
    assert report.reproduces_reference is True
    located = locate_census_mask(11)
    assert located is not None
    assert located.qualifying_count == 522


def test_census_masks_order():
    masks = list(census_masks())
    assert masks[0] == ((), "distinct_mu")
    assert len(masks) == 2 * 2 ** 6
    with pytest.raises(FieldError):
        mu_census(11, ["unknown_flag"])


def test_t_zero_branch():
    base = make_field(11, 3)
    rng = random.Random(settings.DEFAULT_SEED)
    for _ in range(5):
        report = t_zero_branch(11, base.random_element(rng, nonzero=True))
        assert report.zeta is not None
        assert len(report.gammas) == len(report.admissible) == 2
        # δ e -δ compartilham a razão δ^p/δ
        assert report.admissible[0] == report.admissible[1]
    with pytest.raises(FieldError):
        t_zero_branch(11, 0)


# =============================================================================
# k = 2
# =============================================================================

def test_roots_of_unity(f11_2):
    roots = roots_of_unity(f11_2, 12)
    assert len(roots) == 12
    assert all(z ** 12 == f11_2.one for z in roots)
    with pytest.raises(FieldError):
        roots_of_unity(f11_2, 7)


def test_k2_uniqueness_random_h():
    ctx2 = make_params(11, 2, -1).ctx2
    rng = random.Random(settings.DEFAULT_SEED)
    for _ in range(50):
        h = _h_outside_base(ctx2, rng)
        report = k2_uniqueness(11, h)
        assert report.brute_force_agrees
        assert report.branch in ("closed_form", "degenerate", "zero")
        zeta = degenerate_zeta(h)
        if zeta is not None:
            assert zeta ** 12 == ctx2.one


def test_k2_uniqueness_h_in_subfield():
    ctx2 = make_params(7, 2, -1).ctx2
    h = ctx2.lift(ctx2.base.from_coeffs([2, 5]))
    report = k2_uniqueness(7, h)
    assert report.branch == "h_in_subfield"
    assert report.brute_force_agrees
    assert report.solution == report.h


@pytest.mark.parametrize("alpha", [1, 2, 3, "1,1"])
def test_k2_witness_p7(alpha):
    report = k2_nonperm_witness(7, alpha)
    assert report.exhaustive_agrees
    assert report.candidates_tried >= 1
    if report.certificate == "collision":
        assert len(report.preimages) >= 2
    else:
        assert report.preimages == []


def test_k2_witness_rejects_excluded_alpha():
    for alpha in (-1, -2):
        with pytest.raises(FieldError):
            k2_nonperm_witness(7, alpha)


@pytest.mark.parametrize("alpha,certificate,tried", [("0,1", "collision", 121), ("1,3", "missed_value", 123)])
def test_k2_witness_skips_singleton_fibers_p11(alpha, certificate, tried):
    report = k2_nonperm_witness(11, alpha)
    assert report.certificate == certificate
    assert report.candidates_tried == tried
    assert report.exhaustive_agrees


@pytest.mark.slow
def test_k2_witness_every_alpha_p11():
    base = make_field(11, 2)
    excluded = {base.zero, -base.one, base.from_int(-2)}
    for alpha in base.elements():
        if alpha in excluded:
            continue
        assert k2_nonperm_witness(11, alpha).exhaustive_agrees
