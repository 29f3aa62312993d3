"""
Somas de caráter quadrático e busca de ζ

S(μ) = Σ_{ζ ∈ F_q} η((4(ζ-1)μ+1)ζ), comparada com a cota de Weil √q, e a
busca determinística de ζ com η(ζ) = η(4(ζ-1)μ+1) = -1.
"""
import logging
import math
from typing import List, Optional, Union

import numpy as np

from app.models.reports import CharSumReport, ZetaTally
from app.services.ffcore import FieldCtx, FieldElement, multiplicative_generator
from app.services.field_arrays import flat_arrays
from app.utils.element_text import format_element
from app.utils.errors import FieldError
from app.utils.workers import chunk_ranges, partition_map

logger = logging.getLogger(__name__)

MU_BLOCK = 256


def _check(ctx: FieldCtx, mu: Optional[FieldElement] = None):
    if ctx.p == 2:
        raise FieldError("Somas de carater exigem caracteristica impar")
    if mu is not None:
        if mu.ctx is not ctx:
            raise FieldError(f"mu nao pertence a {ctx}")
        if mu.is_zero:
            raise FieldError("mu deve ser nao nulo")


def _linear_arg(F, zetas: np.ndarray, mus: np.ndarray) -> np.ndarray:
    """4(ζ-1)μ + 1 com broadcast entre ζ e μ"""
    one = F.ctx.index(F.ctx.one)
    return F.add(F.scale_int(F.mul(F.sub(zetas, one), mus), 4), one)


def character_rows(ctx: FieldCtx, mus: np.ndarray):
    """(S, Σ η(linear)) para um bloco de índices de μ"""
    F = flat_arrays(ctx)
    z = F.all_elements()[None, :]
    m = np.asarray(mus, dtype=np.int64)[:, None]
    lin = _linear_arg(F, z, m)
    chi_lin = F.quad_char(lin)
    chi_zeta = F.quad_char(z)
    S = (chi_lin * chi_zeta).sum(axis=1)
    return S.astype(np.int64), chi_lin.sum(axis=1).astype(np.int64)


def _report(ctx: FieldCtx, mu_idx: int, S: int, lin: int) -> CharSumReport:
    q = ctx.order
    return CharSumReport(
        q=q,
        mu=format_element(ctx.from_index(mu_idx)),
        sum_value=int(S),
        bound=math.sqrt(q),
        satisfied=int(S) * int(S) <= q,
        linear_sum=int(lin),
    )


def weil_sum(ctx: FieldCtx, mu: FieldElement) -> CharSumReport:
    _check(ctx, mu)
    S, lin = character_rows(ctx, np.array([ctx.index(mu)]))
    report = _report(ctx, ctx.index(mu), int(S[0]), int(lin[0]))
    logger.debug(f"S({report.mu}) = {report.sum_value} em {ctx}")
    return report


def weil_sum_factored(ctx: FieldCtx, mu: FieldElement) -> int:
    """S(μ) por η(a)η(b) elemento a elemento (sem vetorização)"""
    _check(ctx, mu)
    from app.services.ffcore import quad_char

    total = 0
    for z in ctx.elements():
        total += quad_char(4 * (z - 1) * mu + 1) * quad_char(z)
    return total


def weil_sums_all(ctx: FieldCtx, workers: Optional[int] = None) -> List[CharSumReport]:
    """S(μ) para todo μ ∈ F_q^*, em ordem canônica"""
    _check(ctx)
    blocks = chunk_ranges(ctx.order - 1, MU_BLOCK)

    def run(block):
        mus = np.arange(block[0] + 1, block[1] + 1, dtype=np.int64)
        S, lin = character_rows(ctx, mus)
        return [(int(i), int(s), int(l)) for i, s, l in zip(mus, S, lin)]

    reports: List[CharSumReport] = []
    for rows in partition_map(run, blocks, workers):
        reports.extend(_report(ctx, i, s, l) for i, s, l in rows)
    violations = [r.mu for r in reports if not r.satisfied]
    logger.info(f"Somas de Weil em {ctx}: {len(reports)} valores de mu, {len(violations)} acima de sqrt(q)")
    return reports


def is_square_of_linear(mu: FieldElement) -> bool:
    """
    (4(Z-1)μ+1)Z = 4μZ² + (1-4μ)Z é constante vezes quadrado de um linear
    sse o discriminante (1-4μ)² se anula, isto é, μ = 1/4 (o polinômio vira Z²).
    """
    if mu.is_zero:
        raise FieldError("mu deve ser nao nulo")
    return (1 - 4 * mu).is_zero


# =============================================================================
# BUSCA DE ζ
# =============================================================================

def _zeta_mask(ctx: FieldCtx, mu: FieldElement) -> np.ndarray:
    F = flat_arrays(ctx)
    z = F.all_elements()
    lin = _linear_arg(F, z, np.full_like(z, ctx.index(mu)))
    return (F.quad_char(z) == -1) & (F.quad_char(lin) == -1)


def zeta_search(ctx: FieldCtx, mu: FieldElement) -> Optional[FieldElement]:
    """Primeiro ζ (ordem canônica) com η(ζ) = -1 e η(4(ζ-1)μ+1) = -1"""
    _check(ctx)
    if mu.ctx is not ctx:
        raise FieldError(f"mu nao pertence a {ctx}")
    hits = np.nonzero(_zeta_mask(ctx, mu))[0]
    if hits.size == 0:
        logger.warning(f"Nenhum zeta valido para mu = {format_element(mu)} em {ctx}")
        return None
    return ctx.from_index(int(hits[0]))


def zeta_tally(ctx: FieldCtx, mu: FieldElement) -> ZetaTally:
    """
    Contagem exata contra (q + S(μ))/4.

    A fórmula trata η = 0 como se fosse ±1; os termos ζ = 0 e
    4(ζ-1)μ + 1 = 0 respondem pela diferença.
    """
    _check(ctx, mu)
    mask = _zeta_mask(ctx, mu)
    exact = int(mask.sum())
    S = weil_sum(ctx, mu).sum_value
    formula = (ctx.order + S) / 4
    first = np.nonzero(mask)[0]
    return ZetaTally(
        q=ctx.order,
        mu=format_element(mu),
        exact_count=exact,
        formula_value=formula,
        discrepancy=exact - formula,
        first_zeta=format_element(ctx.from_index(int(first[0]))) if first.size else None,
    )


# =============================================================================
# SOLUÇÕES DE ζ^e = -1
# =============================================================================

def exponent_for(form: Union[str, int], p: int) -> int:
    """'p+1' ou 'p2+p+1' (ou um inteiro) para o expoente e"""
    if isinstance(form, int):
        return form
    key = form.replace(" ", "").replace("^", "").lower()
    if key == "p+1":
        return p + 1
    if key in ("p2+p+1", "pp+p+1"):
        return p * p + p + 1
    if key.isdigit():
        return int(key)
    raise FieldError(f"Forma de expoente desconhecida: {form}")


def mu_q1_roots_of_unity(ctx: FieldCtx, exponent: Union[str, int]) -> List[FieldElement]:
    """Todos os ζ ∈ ctx com ζ^e = -1, em ordem canônica"""
    e = exponent_for(exponent, ctx.p)
    n = ctx.order - 1
    half = n // 2
    d = math.gcd(e, n)
    if half % d:
        return []
    g = multiplicative_generator(ctx)
    # j·e ≡ n/2 (mod n)
    step = n // d
    j0 = (half // d) * pow(e // d, -1, step) % step
    sols = sorted((g ** (j0 + t * step) for t in range(d)), key=lambda x: x.coeffs)
    minus_one = -ctx.one
    if any(z ** e != minus_one for z in sols):
        raise FieldError(f"Raiz de zeta^{e} = -1 mal calculada em {ctx}")
    return sols
