"""
Curvas associadas a g_α

F_α(X,Y) = (X+α+X^{p-1})(Y^{p-1}+αY^p+Y) - (Y+α+Y^{p-1})(X^{p-1}+αX^p+X),
F^{(1)}_α = F_α/(X-Y), o modelo G_α sobre F_q obtido pela troca
X -> (X+i)/(X-i), Y -> (Y+i)/(Y-i), contagem de pontos por fibras e sondagem
de pontos singulares.
"""
import logging
import math
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.models.reports import PointCountReport, SingularDegreeCount, SingularProbeReport
from app.services.ffcore import (
    BaseFieldCtx,
    FieldCtx,
    FieldElement,
    QuadExtCtx,
    embedding,
    make_field,
    make_quadratic_extension,
    roots_in_field,
)
from app.services.field_arrays import (
    batch_degrees,
    batch_gcd_degree,
    batch_make_monic,
    batch_powmod_x,
    batch_reduce,
    flat_arrays,
)
from app.services.permlab import g_alpha, mu_parameter_element
from app.services.polynomials import BiPoly, UniPoly
from app.utils.element_text import format_element
from app.utils.errors import FieldError, PropertyViolation
from app.utils.number_theory import multiplicative_order
from app.utils.workers import chunk_ranges, partition_map

logger = logging.getLogger(__name__)

FIBER_BLOCK = 4096
GRID_BLOCK = 128


@dataclass
class CurveSpec:
    ctx: BaseFieldCtx
    alpha: FieldElement
    F: BiPoly
    F1: BiPoly
    G: Optional[BiPoly] = None

    @property
    def p(self) -> int:
        return self.ctx.p


# =============================================================================
# CONSTRUÇÃO
# =============================================================================

def _numerator_poly(ctx: BaseFieldCtx, alpha: FieldElement) -> UniPoly:
    """x + α + x^{p-1}"""
    p = ctx.p
    coeffs = [ctx.zero] * p
    coeffs[0] = alpha
    coeffs[1] = coeffs[1] + ctx.one
    coeffs[p - 1] = coeffs[p - 1] + ctx.one
    return UniPoly(ctx, coeffs)


def _denominator_poly(ctx: BaseFieldCtx, alpha: FieldElement) -> UniPoly:
    """x^{p-1} + αx^p + x"""
    p = ctx.p
    coeffs = [ctx.zero] * (p + 1)
    coeffs[1] = ctx.one
    coeffs[p - 1] = coeffs[p - 1] + ctx.one
    coeffs[p] = alpha
    return UniPoly(ctx, coeffs)


def _expanded_form(ctx: BaseFieldCtx, alpha: FieldElement) -> BiPoly:
    """α(X^{p-1}Y^p - X^pY^{p-1} + XY^p - X^pY + α(Y-X)^p + Y^{p-1} - X^{p-1} + Y - X)"""
    p = ctx.p
    one = ctx.one
    terms: Dict[Tuple[int, int], FieldElement] = {}

    def put(i, j, c):
        terms[(i, j)] = terms.get((i, j), ctx.zero) + c

    put(p - 1, p, one)
    put(p, p - 1, -one)
    put(1, p, one)
    put(p, 1, -one)
    put(0, p, alpha)
    put(p, 0, -alpha)
    put(0, p - 1, one)
    put(p - 1, 0, -one)
    put(0, 1, one)
    put(1, 0, -one)
    return BiPoly(ctx, terms).scale(alpha)


def build_F_alpha(ctx: BaseFieldCtx, alpha: FieldElement) -> CurveSpec:
    """F_α pelas duas rotas (devem coincidir) e F^{(1)}_α por divisão exata"""
    if alpha.ctx is not ctx:
        raise FieldError(f"alpha nao pertence a {ctx}")
    if alpha.is_zero:
        raise FieldError("alpha deve ser nao nulo")
    A, B = _numerator_poly(ctx, alpha), _denominator_poly(ctx, alpha)
    product_form = BiPoly.from_x(A) * BiPoly.from_y(B) - BiPoly.from_y(A) * BiPoly.from_x(B)
    expanded = _expanded_form(ctx, alpha)
    if product_form != expanded:
        raise PropertyViolation(f"As duas construcoes de F_alpha divergem para alpha = {alpha}")
    F1, R = product_form.divide_by_x_minus_y()
    if not R.is_zero:
        raise PropertyViolation("X - Y nao divide F_alpha")
    if F1 * BiPoly(ctx, {(1, 0): ctx.one, (0, 1): -ctx.one}) != product_form:
        raise PropertyViolation("F1 (X - Y) != F_alpha")
    logger.debug(f"F_alpha construido em {ctx}: {len(product_form.terms)} termos, F1 grau {F1.total_degree}")
    return CurveSpec(ctx, alpha, product_form, F1)


def curve_identities(spec: CurveSpec) -> Dict[str, bool]:
    """Identidades polinomiais de F_α e F^{(1)}_α (coeficiente a coeficiente)"""
    ctx, alpha, p = spec.ctx, spec.alpha, spec.p
    inv_alpha = alpha.inverse()
    two = alpha + 2
    y_p_minus_1 = UniPoly.monomial(ctx, p) - UniPoly.one(ctx)
    # F(1, Y): coeficientes em Y com X = 1
    f_one_y = UniPoly(ctx, [c(ctx.one) for c in spec.F.coeff_polys_in_y()]).scale(inv_alpha)
    x_minus_1 = UniPoly(ctx, [-ctx.one, ctx.one])
    power = UniPoly.one(ctx)
    for _ in range(p):
        power = power * x_minus_1
    diag_expected = (power * (UniPoly.monomial(ctx, p - 2) - UniPoly.one(ctx))).scale(-alpha)
    x_minus_y = BiPoly(ctx, {(1, 0): ctx.one, (0, 1): -ctx.one})
    return {
        "F(0,1)/alpha = alpha+2": spec.F(ctx.zero, ctx.one) * inv_alpha == two,
        "F(1,Y)/alpha = (alpha+2)(Y^p-1)": f_one_y == y_p_minus_1.scale(two),
        "F1(X,X) = -alpha(X-1)^p(X^(p-2)-1)": spec.F1.diagonal() == diag_expected,
        "F1(X-Y) = F": spec.F1 * x_minus_y == spec.F,
        "F antisymmetric": spec.F.swap() == -spec.F,
    }


def _mobius_factors(ctx2: QuadExtCtx, p: int) -> List[UniPoly]:
    """U_a = (X+i)^a (X-i)^{p-a}, a = 0..p"""
    plus = UniPoly(ctx2, [ctx2.i, ctx2.one])
    minus = UniPoly(ctx2, [-ctx2.i, ctx2.one])
    plus_pows, minus_pows = [UniPoly.one(ctx2)], [UniPoly.one(ctx2)]
    for _ in range(p):
        plus_pows.append(plus_pows[-1] * plus)
        minus_pows.append(minus_pows[-1] * minus)
    return [plus_pows[a] * minus_pows[p - a] for a in range(p + 1)]


def build_D_model(spec: CurveSpec, ctx2: Optional[QuadExtCtx] = None) -> BiPoly:
    """
    Modelo G_α sobre F_q.

    Limpa denominadores por (X-i)^p (Y-i)^p, divide por (Y-X), normaliza pelo
    primeiro coeficiente não nulo e exige coeficientes fixos pela q-Frobenius.
    """
    base = spec.ctx
    if not isinstance(base, FieldCtx):
        raise FieldError("build_D_model exige F_alpha construido sobre F_q")
    ctx2 = ctx2 or make_quadratic_extension(base)
    if ctx2.base is not base:
        raise FieldError(f"{ctx2} nao estende {base}")
    p = spec.p
    if spec.F.degree_x > p or spec.F.degree_y > p:
        raise PropertyViolation("Grau parcial de F_alpha acima de p")

    U = [u.coeffs for u in _mobius_factors(ctx2, p)]
    terms: Dict[Tuple[int, int], FieldElement] = {}
    for (a, b), c in spec.F.terms.items():
        c2 = ctx2.lift(c)
        for i, ui in enumerate(U[a]):
            cu = c2 * ui
            for j, vj in enumerate(U[b]):
                key = (i, j)
                terms[key] = terms.get(key, ctx2.zero) + cu * vj
    numerator = BiPoly(ctx2, terms)

    H, R = numerator.divide_by_x_minus_y()
    if not R.is_zero:
        raise PropertyViolation("(Y - X) nao divide o numerador substituido")
    lead_key = min(H.terms)
    lead_inv = H.terms[lead_key].inverse()
    H = H.scale(lead_inv)
    if any(not ctx2.in_base(c) for c in H.terms.values()):
        raise PropertyViolation("Coeficientes de G_alpha nao sao fixos pela q-Frobenius")
    G = H.map_coeffs(ctx2.project, base)
    if G.total_degree > spec.F1.total_degree:
        raise PropertyViolation(f"grau(G) = {G.total_degree} > grau(F1) = {spec.F1.total_degree}")
    spec.G = G
    logger.info(f"Modelo G_alpha sobre {base}: grau {G.total_degree}, {len(G.terms)} termos")
    return G


# =============================================================================
# CONTAGEM DE PONTOS
# =============================================================================

def _fiber_coefficients(G: BiPoly) -> np.ndarray:
    """Matriz (q, deg_Y + 1): coeficiente de Y^j em G(x, Y) para cada x"""
    ctx = G.ctx
    F = flat_arrays(ctx)
    xs = F.all_elements()
    cols = []
    for cy in G.coeff_polys_in_y():
        cols.append(F.horner(cy.coeffs, xs) if not cy.is_zero else np.zeros_like(xs))
    return np.stack(cols, axis=1)


def _fiber_root_counts(ctx: FieldCtx, coeffs: np.ndarray, workers: Optional[int] = None) -> np.ndarray:
    """Raízes distintas em F_q de cada fibra: grau de gcd(g_x, Y^q - Y)"""
    F = flat_arrays(ctx)
    q = ctx.order
    degs = batch_degrees(coeffs)
    counts = np.zeros(coeffs.shape[0], dtype=np.int64)
    counts[degs < 0] = q
    one = ctx.index(ctx.one)

    for n in sorted(set(int(d) for d in degs if d >= 1)):
        rows = np.nonzero(degs == n)[0]

        def run(block, rows=rows, n=n):
            sel = rows[block[0]:block[1]]
            G = batch_make_monic(F, coeffs[sel, :n + 1])
            xq = batch_powmod_x(F, q, G)
            y = np.zeros((sel.size, max(2, n)), dtype=np.int64)
            y[:, 1] = one
            r = F.sub(xq, batch_reduce(F, y, G))
            return batch_gcd_degree(F, G, r)

        parts = partition_map(run, chunk_ranges(rows.size, FIBER_BLOCK), workers)
        counts[rows] = np.concatenate(parts)
    return counts


def count_points_grid(G: BiPoly) -> int:
    """Oráculo: avalia G em todos os pares de F_q^2 (varredura dupla vetorizada)"""
    ctx = G.ctx
    F = flat_arrays(ctx)
    coeffs = _fiber_coefficients(G)
    ys = F.all_elements()
    total = 0
    for lo, hi in chunk_ranges(ctx.order, GRID_BLOCK):
        block = coeffs[lo:hi]
        acc = np.zeros((hi - lo, ys.size), dtype=np.int64)
        for j in range(block.shape[1] - 1, -1, -1):
            acc = F.add(F.mul(acc, ys[None, :]), block[:, j:j + 1])
        total += int((acc == 0).sum())
    return total


def count_points_bruteforce(G: BiPoly) -> int:
    """Dupla iteração escalar (apenas corpos muito pequenos)"""
    ctx = G.ctx
    elems = list(ctx.elements())
    return sum(1 for x in elems for y in elems if G(x, y).is_zero)


def aubry_perret_window(q: int, p: int) -> Tuple[float, float]:
    """[q+1 - (d-1)(d-2)√q - 2(p-1), q+1 + (d-1)(d-2)√q] com d = p-1"""
    d = p - 1
    spread = (d - 1) * (d - 2) * math.sqrt(q)
    return q + 1 - spread - 2 * (p - 1), q + 1 + spread


def bound_positivity(p: int, k: int) -> int:
    """p^k + 1 - (p-2)(p-3)p^{k/2} - 2(p-1) (inteiro para k par)"""
    if k % 2:
        raise FieldError("bound_positivity exige k par")
    return p ** k + 1 - (p - 2) * (p - 3) * p ** (k // 2) - 2 * (p - 1)


def count_points_fiberwise(G: BiPoly, alpha: Optional[FieldElement] = None,
                           workers: Optional[int] = None) -> PointCountReport:
    """Pontos afins de G sobre F_q por fibras x = const"""
    ctx = G.ctx
    if G.is_zero:
        raise FieldError("G deve ser nao nulo")
    if not isinstance(ctx, FieldCtx):
        raise FieldError("count_points_fiberwise exige G sobre F_q")
    start_time = time.time()
    q, p = ctx.order, ctx.p
    coeffs = _fiber_coefficients(G)
    counts = _fiber_root_counts(ctx, coeffs, workers)
    affine = int(counts.sum())

    F = flat_arrays(ctx)
    diag = G.diagonal()
    if diag.is_zero:
        on_diag = q
    else:
        on_diag = int((F.horner(diag.coeffs, F.all_elements()) == 0).sum())

    lower, upper = aubry_perret_window(q, p)
    collision = None
    if alpha is not None:
        collision = find_offdiagonal_collision(G, alpha, counts)
    report = PointCountReport(
        q=q,
        alpha=format_element(alpha) if alpha is not None else "",
        degree=p - 1,
        affine_count=affine,
        excluded_count=on_diag,
        lower_bound=lower,
        upper_bound=upper,
        within_bounds=lower <= affine <= upper,
        collision_mu=collision,
    )
    logger.info(f"Contagem em {ctx}: {affine} pontos afins, {on_diag} na diagonal "
                f"({(time.time() - start_time):.1f}s)")
    return report


def find_offdiagonal_collision(G: BiPoly, alpha: FieldElement,
                               counts: Optional[np.ndarray] = None) -> Optional[List[str]]:
    """
    Primeiro ponto (x̄, ȳ), x̄ != ȳ, de G sobre F_q, levado a μ_{q+1}; o par
    resultante é reverificado como colisão de g_α.
    """
    ctx = G.ctx
    F = flat_arrays(ctx)
    ctx2 = make_quadratic_extension(ctx)
    coeffs = _fiber_coefficients(G)
    ys = F.all_elements()
    order = range(ctx.order) if counts is None else np.nonzero(counts > 0)[0]
    for xi in order:
        row = coeffs[int(xi)]
        vals = np.zeros_like(ys)
        for c in row[::-1]:
            vals = F.add(F.mul(vals, ys), int(c))
        x_bar = ctx.from_index(int(xi))
        a = mu_parameter_element(ctx2, x_bar)
        ga = g_alpha(ctx2, alpha, a)
        for yi in np.nonzero(vals == 0)[0]:
            if int(yi) == int(xi):
                continue
            y_bar = ctx.from_index(int(yi))
            b = mu_parameter_element(ctx2, y_bar)
            gb = g_alpha(ctx2, alpha, b)
            # em μ_{q+1} numerador e denominador de g_α se anulam juntos
            if ga.zero_denominator and gb.zero_denominator:
                continue
            if ga.zero_denominator or gb.zero_denominator or ga.value != gb.value:
                raise PropertyViolation(f"Ponto ({x_bar}, {y_bar}) de G nao da colisao de g_alpha")
            return [format_element(a), format_element(b)]
    return None


# =============================================================================
# PONTOS SINGULARES
# =============================================================================

def default_singular_degrees(p: int) -> List[int]:
    """m = ordem de p módulo p-2, limitado a 6"""
    if p - 2 <= 1:
        return [1]
    return [min(multiplicative_order(p, p - 2), 6)]


def singular_probe(spec: CurveSpec, search_degrees: Optional[Sequence[int]] = None) -> SingularProbeReport:
    """
    Pontos singulares afins de F^{(1)}_α sobre F_{p^m}.

    Das derivadas, (Y^p-1)(1-X^{p-2}) = 0 = (X^p-1)(1-Y^{p-2}); os candidatos
    são os ramos X = 1, Y = 1 (raízes de F(1,Y) e F(X,1)) e os pares de raízes
    (p-2)-ésimas da unidade, filtrados por F1 = ∂F1/∂X = ∂F1/∂Y = 0.
    """
    p = spec.p
    degrees = list(search_degrees or default_singular_degrees(p))
    results = []
    for m in degrees:
        W = make_field(p, m * spec.ctx.degree // math.gcd(m, spec.ctx.degree))
        emb = embedding(spec.ctx, W)
        F = spec.F.map_coeffs(emb, W)
        F1 = spec.F1.map_coeffs(emb, W)
        F1x, F1y = F1.derivative_x(), F1.derivative_y()
        one = W.one

        candidates = set()
        for y in roots_in_field(_nonzero_or_none(F.swap().at_y(one)) or UniPoly.one(W), W):
            candidates.add((one, y))
        for x in roots_in_field(_nonzero_or_none(F.at_y(one)) or UniPoly.one(W), W):
            candidates.add((x, one))
        unity = roots_in_field(UniPoly.monomial(W, p - 2) - UniPoly.one(W), W)
        for x in unity:
            for y in unity:
                candidates.add((x, y))
        # X = 0 ou Y = 0 forçam o outro igual a 1
        candidates.update({(W.zero, one), (one, W.zero)})

        singular = [(x, y) for x, y in candidates
                    if F1(x, y).is_zero and F1x(x, y).is_zero and F1y(x, y).is_zero]
        singular.sort(key=lambda pt: (pt[0].coeffs, pt[1].coeffs))
        type3 = [pt for pt in singular
                 if pt[0] != pt[1] and one not in pt and pt[0] in unity and pt[1] in unity]
        results.append(SingularDegreeCount(
            m=m,
            total=len(singular),
            x_one=sum(1 for x, _ in singular if x == one),
            y_one=sum(1 for _, y in singular if y == one),
            type3=len(type3),
            with_xy_zero=sum(1 for x, y in singular if x.is_zero or y.is_zero),
            on_diagonal=[format_element(x) for x, y in singular if x == y],
        ))
        logger.debug(f"Sondagem singular em {W}: {len(singular)} pontos")
    return SingularProbeReport(p=p, alpha=format_element(spec.alpha), degrees=results)


def _nonzero_or_none(poly: UniPoly) -> Optional[UniPoly]:
    return None if poly.is_zero else poly
