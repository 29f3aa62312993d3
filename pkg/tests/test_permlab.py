import numpy as np
import pytest

from app.models.reports import PermReport
from app.services.ffcore import make_field
from app.services.field_arrays import quad_arrays
from app.services.permlab import (
    eval_trinomial,
    eval_trinomial_batch,
    factored_value,
    fiber_sizes,
    g_alpha,
    is_permutation_exhaustive,
    make_params,
    mu_collision_search,
    mu_enumerate,
    niho_gcd,
    reduced_value,
    trace_form,
    verify_report,
)
from app.utils.errors import BudgetExceeded, FieldError


def test_trinomial_forms_agree(rng):
    params = make_params(7, 2, 3)
    ctx2 = params.ctx2
    q, p = params.q, params.p
    for _ in range(30):
        x = ctx2.random_element(rng)
        direct = x ** (q * (p - 1) + 1) + params.alpha * x ** (p * q) + x ** (q + p - 1)
        assert eval_trinomial(params, x) == direct
        assert factored_value(params, x) == direct
        assert trace_form(params, x) == direct
        assert reduced_value(params, x) == direct ** q
    assert eval_trinomial(params, ctx2.zero).is_zero


def test_batch_evaluation_matches_scalar(rng):
    params = make_params(5, 2, "1,2")
    ctx2 = params.ctx2
    Q = quad_arrays(ctx2)
    xs = [ctx2.random_element(rng) for _ in range(50)]
    batch = Q.from_indices(np.array([x.index for x in xs]))
    assert Q.to_elements(eval_trinomial_batch(params, batch)) == [eval_trinomial(params, x) for x in xs]


@pytest.mark.parametrize("p,k,alpha", [(7, 1, -3), (7, 2, -1), (11, 1, -3), (13, 1, -3)])
def test_known_permutations(p, k, alpha):
    report = is_permutation_exhaustive(make_params(p, k, alpha))
    assert report.verdict == "permutation"
    assert report.witness is None


@pytest.mark.parametrize("p,k,alpha", [(7, 1, 1), (7, 2, 1), (11, 1, 2)])
def test_non_permutations_have_verified_witness(p, k, alpha):
    report = is_permutation_exhaustive(make_params(p, k, alpha))
    assert report.verdict == "not_permutation"
    assert report.witness_kind == "f"
    assert verify_report(report)
    x, y = report.witness
    assert x != y


def test_k1_characterization_p7():
    base = make_field(7, 1)
    pp = [a for a in base.elements() if not a.is_zero
          and is_permutation_exhaustive(make_params(7, 1, a)).verdict == "permutation"]
    assert pp == [base.from_int(-3)]


def test_mu_collision_agrees_with_exhaustive():
    assert niho_gcd(7, 1) == 1
    base = make_field(7, 1)
    for a in base.elements():
        if a.is_zero:
            continue
        params = make_params(7, 1, a)
        via_mu = mu_collision_search(params.ctx2, params.alpha)
        exhaustive = is_permutation_exhaustive(params)
        assert via_mu.verdict == exhaustive.verdict
        assert via_mu.reduction_gcd == 1
        assert verify_report(via_mu)


@pytest.mark.parametrize("p,k", [(5, 2), (7, 2), (11, 2), (11, 3), (13, 3), (5, 4)])
def test_reduction_exponent_coprime_to_q_minus_1(p, k):
    # q + p - 1 ≡ p (mod q - 1)
    assert niho_gcd(p, k) == 1


def test_mu_collision_agrees_with_exhaustive_k2():
    base = make_field(7, 2)
    for a in base.elements():
        if a.is_zero:
            continue
        params = make_params(7, 2, a)
        via_mu = mu_collision_search(params.ctx2, params.alpha)
        assert via_mu.verdict == is_permutation_exhaustive(params).verdict, f"alpha = {a}"
        assert verify_report(via_mu)


def test_fiber_sizes():
    pp = fiber_sizes(make_params(7, 1, -3))
    assert pp.sum() == 49 and (pp == 1).all()
    sizes = fiber_sizes(make_params(7, 2, 1))
    assert sizes.sum() == 49 ** 2
    assert (sizes != 1).any()


def test_mu_group_enumeration():
    params = make_params(7, 2, 1)
    mu = mu_enumerate(params.ctx2)
    elems = mu.elements()
    assert mu.size == params.q + 1
    assert len(set(elems)) == params.q + 1
    assert all(x ** (params.q + 1) == params.ctx2.one for x in elems)
    assert elems[0] == params.ctx2.one


def test_g_alpha_maps_mu_group_into_itself():
    params = make_params(7, 1, 2)
    ctx2 = params.ctx2
    for x in mu_enumerate(ctx2).elements():
        g = g_alpha(ctx2, params.alpha, x)
        if not g.zero_denominator:
            assert g.value ** (params.q + 1) == ctx2.one


def test_budget_and_parameter_checks():
    with pytest.raises(BudgetExceeded):
        is_permutation_exhaustive(make_params(7, 2, 1), budget=100)
    with pytest.raises(FieldError):
        make_params(7, 1, 0)
    with pytest.raises(FieldError):
        make_params(7, 2, "1,2,3")


def test_tampered_witness_fails_verification():
    report = is_permutation_exhaustive(make_params(7, 1, 1))
    x, _ = report.witness
    tampered = report.model_copy(update={"witness": [x, x]})
    assert not verify_report(tampered)


def test_report_requires_witness_iff_not_permutation():
    with pytest.raises(ValueError):
        PermReport(p=7, k=1, alpha="1", verdict="not_permutation", method="exhaustive")
    with pytest.raises(ValueError):
        PermReport(p=7, k=1, alpha="4", verdict="permutation", method="exhaustive",
                   witness=["0", "1"], witness_kind="f")
