import random

import numpy as np
import pytest

from app.services.ffcore import make_field
from app.services.lintri import (
    KERNEL,
    NO_ROOTS,
    UNIQUE,
    LinTriInstance,
    binomial_has_kernel,
    brute_root_indices,
    brute_roots,
    classify,
    linearized_kernel,
    lintri_report,
    nullspace_mod_p,
)
from app.utils.errors import FieldError
from config import settings

# (p, l) com p^l dentro de BRUTE_ROOTS_LIMIT
ORACLE_FIELDS = [(5, 1), (5, 2), (5, 3), (5, 4), (5, 6), (7, 2), (7, 3), (7, 4), (7, 6),
                 (11, 1), (11, 2), (11, 3), (11, 4), (5, 5), (7, 5), (11, 5)]


def _random_instance(rng: random.Random) -> LinTriInstance:
    p, ell = rng.choice(ORACLE_FIELDS)
    ctx = make_field(p, ell)
    n = rng.randint(1, ell)
    A = ctx.random_element(rng, nonzero=True)
    B = ctx.random_element(rng)
    return LinTriInstance(ctx, n, A, B)


def _kernel_instance(rng: random.Random) -> LinTriInstance:
    """A com norma 1 e B na imagem, para cair no caso degenerado"""
    p, ell = rng.choice(ORACLE_FIELDS[:9])
    ctx = make_field(p, ell)
    n = rng.randint(1, ell)
    while True:
        z = ctx.random_element(rng, nonzero=True)
        A = z.frobenius(n) / z
        x = ctx.random_element(rng)
        B = x.frobenius(n) - A * x
        inst = LinTriInstance(ctx, n, A, B)
        if inst.alpha_last == ctx.one:
            return inst


def test_classify_matches_bruteforce_on_seeded_instances():
    rng = random.Random(settings.DEFAULT_SEED)
    cases = set()
    for _ in range(150):
        inst = _random_instance(rng)
        sol = classify(inst)
        cases.add(sol.case)
        assert sol.roots() == brute_roots(inst)
        assert sol.root_count == len(brute_root_indices(inst))
    for _ in range(50):
        inst = _kernel_instance(rng)
        sol = classify(inst)
        assert sol.case == KERNEL
        assert sol.root_count == inst.ctx.p ** inst.d
        assert np.array_equal(np.sort(sol.root_indices()), brute_root_indices(inst))
    assert UNIQUE in cases


@pytest.mark.parametrize("p", [5, 7, 11])
def test_degree_five_fields_match_bruteforce(p):
    ctx = make_field(p, 5)
    rng = random.Random(settings.DEFAULT_SEED + p)
    for n in range(1, 6):
        inst = LinTriInstance(ctx, n, ctx.random_element(rng, nonzero=True), ctx.random_element(rng))
        assert classify(inst).roots() == brute_roots(inst)
        # A = z^{p^n}/z tem norma 1: caso degenerado
        z = ctx.random_element(rng, nonzero=True)
        x = ctx.random_element(rng)
        A = z.frobenius(n) / z
        inst = LinTriInstance(ctx, n, A, x.frobenius(n) - A * x)
        sol = classify(inst)
        assert sol.case == KERNEL
        assert np.array_equal(np.sort(sol.root_indices()), brute_root_indices(inst))


def test_no_roots_case():
    ctx = make_field(7, 2)
    # X^7 - X - 1 sobre F_49: X^7 - X tem imagem Tr = 0, e Tr(1) = 2 != 0
    inst = LinTriInstance(ctx, 1, ctx.one, ctx.one)
    sol = classify(inst)
    assert sol.case == NO_ROOTS
    assert sol.root_count == 0
    assert brute_roots(inst) == set()


def test_recurrence_matches_closed_forms(rng):
    for _ in range(20):
        inst = _random_instance(rng)
        assert inst.alpha_last == inst.alpha_closed_form()
        assert inst.beta_last == inst.beta_closed_form()


def test_kernel_case_reports_generator_and_trace_element():
    ctx = make_field(5, 3)
    inst = LinTriInstance(ctx, 1, ctx.one, ctx.zero)
    sol = classify(inst)
    assert sol.case == KERNEL
    assert sol.root_count == 5
    assert sol.tau is not None and sol.tau.frobenius(1) == sol.tau
    # núcleo de X^5 - X em F_125 é F_5
    assert sol.roots() == {ctx.from_int(v) for v in range(5)}


def test_invalid_instances_are_rejected(f7):
    with pytest.raises(FieldError):
        LinTriInstance(f7, 1, f7.zero, f7.one)
    with pytest.raises(FieldError):
        LinTriInstance(f7, 0, f7.one, f7.one)


def test_nullspace_mod_p():
    M = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    basis = nullspace_mod_p(M, 7)
    assert len(basis) == 1
    v = np.array(basis[0], dtype=np.int64)
    assert not ((M @ v) % 7).any()


def test_binomial_kernel_norm_criterion():
    ctx = make_field(5, 4)
    rng = random.Random(11)
    for _ in range(30):
        a = ctx.random_element(rng, nonzero=True)
        r = rng.randint(1, 4)
        has = linearized_kernel(ctx, [(r, ctx.one), (0, a)]).dimension > 0
        assert binomial_has_kernel(ctx, r, a) == has


def test_lintri_report_lists_roots_and_agrees():
    ctx = make_field(11, 3)
    inst = LinTriInstance(ctx, 1, ctx.one, ctx.zero)
    report = lintri_report(inst)
    assert report.case == "kernel"
    assert report.root_count == 11
    assert report.brute_force_agrees is True
    assert report.roots == [str(v) for v in range(11)]
    assert (report.d, report.m) == (1, 3)
