import random

import pytest

from app.services.curvelab import (
    aubry_perret_window,
    bound_positivity,
    build_D_model,
    build_F_alpha,
    count_points_bruteforce,
    count_points_fiberwise,
    count_points_grid,
    curve_identities,
    default_singular_degrees,
    find_offdiagonal_collision,
    singular_probe,
)
from app.services.ffcore import make_field, make_quadratic_extension
from app.services.permlab import g_alpha
from app.utils.element_text import parse_element
from app.utils.errors import FieldError
from config import settings


def test_identities_hold_for_every_alpha(f11_2):
    minus_two = f11_2.from_int(-2)
    for alpha in f11_2.elements():
        if alpha.is_zero or alpha == minus_two:
            continue
        spec = build_F_alpha(f11_2, alpha)
        failed = [name for name, ok in curve_identities(spec).items() if not ok]
        assert not failed, f"alpha = {alpha}: {failed}"


def test_build_rejects_zero_alpha(f7):
    with pytest.raises(FieldError):
        build_F_alpha(f7, f7.zero)


def test_d_model_counts_agree_across_methods():
    ctx = make_field(5, 2)
    rng = random.Random(settings.DEFAULT_SEED)
    minus_two = ctx.from_int(-2)
    for _ in range(3):
        alpha = ctx.random_element(rng, nonzero=True)
        if alpha == minus_two:
            continue
        G = build_D_model(build_F_alpha(ctx, alpha))
        assert G.ctx is ctx
        report = count_points_fiberwise(G, workers=2)
        assert report.affine_count == count_points_grid(G)
        assert report.affine_count == count_points_bruteforce(G)
        assert report.degree == 4


def test_permutation_alpha_has_no_offdiagonal_points():
    ctx = make_field(7, 1)
    alpha = ctx.from_int(-3)
    G = build_D_model(build_F_alpha(ctx, alpha))
    assert find_offdiagonal_collision(G, alpha) is None


def test_collision_pairs_are_genuine():
    ctx = make_field(7, 2)
    rng = random.Random(5)
    for _ in range(3):
        alpha = ctx.random_element(rng, nonzero=True)
        if alpha == ctx.from_int(-2):
            continue
        G = build_D_model(build_F_alpha(ctx, alpha))
        pair = find_offdiagonal_collision(G, alpha)
        if pair is None:
            continue
        ctx2 = make_quadratic_extension(ctx)
        a, b = (parse_element(ctx2, s) for s in pair)
        assert a != b
        assert g_alpha(ctx2, alpha, a).value == g_alpha(ctx2, alpha, b).value


def test_window_and_positivity():
    lower, upper = aubry_perret_window(14641, 11)
    assert upper - 14642 == pytest.approx(72 * 121)
    assert lower == pytest.approx(14642 - 72 * 121 - 20)
    assert bound_positivity(11, 4) == 14642 - 8712 - 20
    assert bound_positivity(11, 4) > 0
    with pytest.raises(FieldError):
        bound_positivity(11, 3)


def test_singular_probe_report_shape(f7):
    spec = build_F_alpha(f7, f7.from_int(1))
    assert default_singular_degrees(7) == [4]
    report = singular_probe(spec, [1, 2])
    assert [d.m for d in report.degrees] == [1, 2]
    for entry in report.degrees:
        assert entry.total >= entry.type3
        assert entry.total >= max(entry.x_one, entry.y_one)


@pytest.mark.slow
def test_point_count_window_p11_k4():
    ctx = make_field(11, 4)
    rng = random.Random(settings.DEFAULT_SEED)
    minus_two = ctx.from_int(-2)
    sampled = 0
    while sampled < 3:
        alpha = ctx.random_element(rng, nonzero=True)
        if alpha == minus_two or alpha == -ctx.one:
            continue
        sampled += 1
        G = build_D_model(build_F_alpha(ctx, alpha))
        report = count_points_fiberwise(G, alpha, workers=settings.WORKERS)
        assert report.within_bounds
        assert report.affine_count > report.excluded_count
