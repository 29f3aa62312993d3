"""
Família de trinômios f_{α,β}(X) = X^{q(p-1)+1} + αX^{pq} + βX^{q+p-1} sobre F_{q^2}

Vereditos de permutação por varredura exaustiva e pela redução a
g_α(x) = (x + α + x^{p-1}) / (x^{p-1} + αx^p + x) sobre μ_{q+1}.
"""
import logging
import math
import time
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from config import settings
from app.models.reports import PermReport
from app.services.ffcore import FieldElement, QuadExtCtx, make_field, make_quadratic_extension
from app.services.field_arrays import QuadBatch, quad_arrays
from app.utils.element_text import format_element, parse_element
from app.utils.errors import BudgetExceeded, FieldError, PropertyViolation
from app.utils.workers import chunk_ranges, ordered_stream

logger = logging.getLogger(__name__)

CHUNK_SIZE = 1 << 18


# =============================================================================
# PARÂMETROS
# =============================================================================

@dataclass(frozen=True)
class TrinomialParams:
    ctx2: QuadExtCtx
    alpha: FieldElement
    beta: Optional[FieldElement] = None

    def __post_init__(self):
        ctx2 = self.ctx2
        alpha = self._in_ctx2(self.alpha)
        beta = self._in_ctx2(self.beta if self.beta is not None else ctx2.one)
        for name, v in (("alpha", alpha), ("beta", beta)):
            if not ctx2.in_base(v):
                raise FieldError(f"{name} = {v} deve pertencer a F_q")
        if alpha.is_zero:
            raise FieldError("alpha deve ser nao nulo")
        if beta.is_zero:
            raise FieldError("alpha * beta deve ser nao nulo")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def _in_ctx2(self, v: FieldElement) -> FieldElement:
        if v.ctx is self.ctx2:
            return v
        if v.ctx is self.ctx2.base:
            return self.ctx2.lift(v)
        raise FieldError(f"{v} nao pertence a {self.ctx2} nem ao seu corpo base")

    @property
    def p(self) -> int:
        return self.ctx2.p

    @property
    def k(self) -> int:
        return self.ctx2.k

    @property
    def q(self) -> int:
        return self.ctx2.q

    @property
    def alpha_text(self) -> str:
        return format_element(self.ctx2.project(self.alpha))


def make_params(p: int, k: int, alpha, beta=None) -> TrinomialParams:
    """Parâmetros a partir de texto canônico, inteiros ou elementos de F_q"""
    base = make_field(p, k)
    ctx2 = make_quadratic_extension(base)

    def coerce(v):
        if v is None or isinstance(v, FieldElement):
            return v
        if isinstance(v, int):
            return base.from_int(v)
        return parse_element(base, str(v))

    return TrinomialParams(ctx2, coerce(alpha), coerce(beta))


# =============================================================================
# AVALIAÇÃO
# =============================================================================

def eval_trinomial(params: TrinomialParams, x: FieldElement) -> FieldElement:
    """
    f(x) = conj(P)·x + α·frob(conj x) + β·conj(x)·P, com P = x^{p-1} = frob(x)/x

    Usa inv(0) = 0, de modo que f(0) = 0 sem caso especial.
    """
    ctx2 = params.ctx2
    if x.ctx is not ctx2:
        raise FieldError(f"{x} nao pertence a {ctx2}")
    xq = ctx2.conj(x)
    P = ctx2.frobenius(x, 1) * ctx2.inv(x)
    return ctx2.conj(P) * x + params.alpha * ctx2.frobenius(xq, 1) + params.beta * xq * P


def eval_trinomial_batch(params: TrinomialParams, xs: QuadBatch) -> QuadBatch:
    ctx2 = params.ctx2
    Q = quad_arrays(ctx2)
    xq = Q.conj(xs)
    P = Q.mul(Q.frobenius(xs, 1), Q.inv(xs))
    shape = xs[0].shape
    term1 = Q.mul(Q.conj(P), xs)
    term2 = Q.mul(Q.constant(params.alpha, shape), Q.frobenius(xq, 1))
    term3 = Q.mul(Q.constant(params.beta, shape), Q.mul(xq, P))
    return Q.add(Q.add(term1, term2), term3)


def h_poly_value(params: TrinomialParams, y: FieldElement) -> FieldElement:
    """h(y) = y^{p-2} + αy^{p-1} + 1"""
    p = params.p
    return y ** (p - 2) + params.alpha * y ** (p - 1) + 1


def factored_value(params: TrinomialParams, x: FieldElement) -> FieldElement:
    """x^{q+p-1}·h(x^{q-1}) (vale para β = 1)"""
    if x.is_zero:
        return x
    q, p = params.q, params.p
    return x ** (q + p - 1) * h_poly_value(params, x ** (q - 1))


def trace_form(params: TrinomialParams, x: FieldElement) -> FieldElement:
    """(αx^p + Tr(x^{q+p-1}))^q (vale para β = 1)"""
    ctx2 = params.ctx2
    inner = ctx2.conj(x) * ctx2.frobenius(x, 1) * ctx2.inv(x) if not x.is_zero else x
    tr = inner + ctx2.conj(inner)
    return ctx2.conj(params.alpha * ctx2.frobenius(x, 1) + tr)


def reduced_value(params: TrinomialParams, x: FieldElement) -> FieldElement:
    """αx^p + Tr(x^{q+p-1}), isto é, f(x)^q"""
    return params.ctx2.conj(eval_trinomial(params, x))


# =============================================================================
# VARREDURA EXAUSTIVA
# =============================================================================

def image_indices(params: TrinomialParams, start: int, stop: int) -> np.ndarray:
    """Índices canônicos de f(x) para x no intervalo [start, stop)"""
    Q = quad_arrays(params.ctx2)
    xs = Q.from_indices(np.arange(start, stop, dtype=np.int64))
    return Q.index(eval_trinomial_batch(params, xs))


def fiber_sizes(params: TrinomialParams, workers: Optional[int] = None) -> np.ndarray:
    """|f^{-1}(y)| para cada y de F_{q^2}, na ordem canônica"""
    ctx2 = params.ctx2
    size = ctx2.order
    if size > settings.PERM_EXHAUSTIVE_BUDGET:
        raise BudgetExceeded(f"q^2 = {size} excede PERM_EXHAUSTIVE_BUDGET")
    counts = np.zeros(size, dtype=np.int64)
    for imgs in ordered_stream(lambda r: image_indices(params, *r), chunk_ranges(size, CHUNK_SIZE), workers):
        counts += np.bincount(imgs, minlength=size)
    return counts


def is_permutation_exhaustive(params: TrinomialParams, budget: Optional[int] = None,
                              workers: Optional[int] = None) -> PermReport:
    """
    Marca cada imagem numa tabela de q^2 contadores saturados em 2.

    Havendo repetição, uma segunda passada localiza o menor x (ordem canônica)
    cuja imagem se repete e o y seguinte com a mesma imagem.
    """
    budget = settings.PERM_EXHAUSTIVE_BUDGET if budget is None else budget
    ctx2 = params.ctx2
    size = ctx2.order
    if size > budget:
        raise BudgetExceeded(f"q^2 = {size} excede o orcamento exaustivo {budget}; use mu_collision_search")

    start_time = time.time()
    ranges = chunk_ranges(size, CHUNK_SIZE)
    counts = np.zeros(size, dtype=np.uint8)
    for imgs in ordered_stream(lambda r: image_indices(params, *r), ranges, workers):
        uniq, hits = np.unique(imgs, return_counts=True)
        counts[uniq] = np.minimum(counts[uniq] + np.minimum(hits, 2), 2)

    witness = None
    if (counts >= 2).any():
        x_idx, target = None, None
        for (lo, hi) in ranges:
            imgs = image_indices(params, lo, hi)
            if x_idx is None:
                hit = np.nonzero(counts[imgs] >= 2)[0]
                if hit.size == 0:
                    continue
                x_idx = lo + int(hit[0])
                target = int(imgs[hit[0]])
                imgs = imgs[hit[0] + 1:]
                lo = x_idx + 1
            same = np.nonzero(imgs == target)[0]
            if same.size:
                witness = (ctx2.from_index(x_idx), ctx2.from_index(lo + int(same[0])))
                break
        if witness is None:
            raise PropertyViolation("Contador indica repeticao, mas nenhum par foi localizado")

    elapsed = (time.time() - start_time) * 1000
    report = _report(params, "exhaustive", witness, "f", elapsed)
    logger.info(f"Exaustivo p={params.p} k={params.k} alpha={params.alpha_text}: {report.verdict} ({elapsed:.0f} ms)")
    return report


def _report(params: TrinomialParams, method: str, witness, kind: str, elapsed: float,
            reduction_gcd: Optional[int] = None) -> PermReport:
    return PermReport(
        p=params.p,
        k=params.k,
        alpha=params.alpha_text,
        verdict="permutation" if witness is None else "not_permutation",
        method=method,
        witness=None if witness is None else [format_element(w) for w in witness],
        witness_kind=None if witness is None else kind,
        reduction_gcd=reduction_gcd,
        elapsed_ms=round(elapsed, 3),
    )


# =============================================================================
# μ_{q+1} E g_α
# =============================================================================

@dataclass
class MuGroup:
    """μ_{q+1} = {1} ∪ {(t+i)/(t-i) : t ∈ F_q}, nessa ordem"""

    ctx2: QuadExtCtx
    batch: QuadBatch

    @property
    def size(self) -> int:
        return int(self.batch[0].shape[0])

    def elements(self) -> List[FieldElement]:
        return quad_arrays(self.ctx2).to_elements(self.batch)

    def parameter(self, position: int) -> Optional[FieldElement]:
        """t que gera o elemento na posição dada (None para 1)"""
        if position == 0:
            return None
        return self.ctx2.base.from_index(position - 1)


def mu_enumerate(ctx2: QuadExtCtx) -> MuGroup:
    Q = quad_arrays(ctx2)
    base = ctx2.base
    t = np.arange(base.order, dtype=np.int64)
    one_idx = base.index(base.one)
    num = (t, np.full_like(t, one_idx))
    den = (t, np.full_like(t, base.index(-base.one)))
    a, b = Q.mul(num, Q.inv(den))
    batch = (np.concatenate([[one_idx], a]).astype(np.int64), np.concatenate([[0], b]).astype(np.int64))
    return MuGroup(ctx2, batch)


def mu_parameter_element(ctx2: QuadExtCtx, t: FieldElement) -> FieldElement:
    """(t+i)/(t-i) para t ∈ F_q"""
    lt = ctx2.lift(t)
    return (lt + ctx2.i) / (lt - ctx2.i)


class GValue(NamedTuple):
    value: FieldElement
    zero_denominator: bool


def g_alpha(ctx2: QuadExtCtx, alpha: FieldElement, x: FieldElement) -> GValue:
    """Valor de g_α em x; denominador nulo devolve 0 marcado"""
    if alpha.ctx is ctx2.base:
        alpha = ctx2.lift(alpha)
    xp1 = ctx2.frobenius(x, 1) * ctx2.inv(x)
    num = x + alpha + xp1
    den = xp1 + alpha * ctx2.frobenius(x, 1) + x
    if den.is_zero:
        return GValue(ctx2.zero, True)
    return GValue(num / den, False)


def g_alpha_batch(ctx2: QuadExtCtx, alpha: FieldElement, xs: QuadBatch) -> Tuple[QuadBatch, np.ndarray]:
    """(valores, máscara de denominador nulo) para x ∈ F_{q^2}^*"""
    Q = quad_arrays(ctx2)
    if alpha.ctx is ctx2.base:
        alpha = ctx2.lift(alpha)
    shape = xs[0].shape
    a = Q.constant(alpha, shape)
    xp = Q.frobenius(xs, 1)
    xp1 = Q.mul(xp, Q.inv(xs))
    num = Q.add(Q.add(xs, a), xp1)
    den = Q.add(Q.add(xp1, Q.mul(a, xp)), xs)
    zero_den = Q.is_zero(den)
    return Q.mul(num, Q.inv(den)), zero_den


def niho_gcd(p: int, k: int) -> int:
    q = p ** k
    return math.gcd(q + p - 1, q - 1)


def mu_collision_search(ctx2: QuadExtCtx, alpha: FieldElement) -> PermReport:
    """
    Veredito pela redução a μ_{q+1}.

    Denominador nulo em ω ∈ μ_{q+1} equivale a h(ω) = 0, e então f anula
    todo x com x^{q-1} = ω; o certificado é o par (0, x) do próprio trinômio.
    Caso contrário, colisões de g_α dão o certificado em μ_{q+1}.
    """
    start_time = time.time()
    p, k = ctx2.p, ctx2.k
    params = TrinomialParams(ctx2, alpha)
    g = niho_gcd(p, k)
    if g != 1:
        raise PropertyViolation(f"gcd(q+p-1, q-1) = {g} != 1 para p={p}, k={k}")

    Q = quad_arrays(ctx2)
    mu = mu_enumerate(ctx2)
    values, zero_den = g_alpha_batch(ctx2, params.alpha, mu.batch)

    witness, kind = None, "g"
    if zero_den.any():
        pos = int(np.nonzero(zero_den)[0][0])
        t = mu.parameter(pos)
        x = ctx2.one if t is None else ctx2.lift(t) - ctx2.i
        witness, kind = (ctx2.zero, x), "f"
        logger.debug(f"Denominador nulo em mu[{pos}]; certificado (0, {x})")
    else:
        idx = Q.index(values)
        member = np.isin(idx, Q.index(mu.batch))
        if not member.all():
            raise PropertyViolation("g_alpha assumiu valor fora de mu_{q+1}")
        witness = _smallest_collision(ctx2, Q.index(mu.batch), idx)

    elapsed = (time.time() - start_time) * 1000
    report = _report(params, "mu_collision", witness, kind, elapsed, reduction_gcd=g)
    logger.info(f"mu-colisao p={p} k={k} alpha={params.alpha_text}: {report.verdict} ({elapsed:.0f} ms)")
    return report


def _smallest_collision(ctx2: QuadExtCtx, inputs: np.ndarray, values: np.ndarray):
    """Menor par (x, y), x < y na ordem canônica, com valores iguais"""
    order = np.argsort(inputs, kind="stable")
    xs, vs = inputs[order], values[order]
    _, first_pos, counts = np.unique(vs, return_index=True, return_counts=True)
    dup_values = set(int(v) for v, c in zip(vs[first_pos], counts) if c > 1)
    if not dup_values:
        return None
    for i, v in enumerate(vs):
        if int(v) in dup_values:
            j = i + 1 + int(np.nonzero(vs[i + 1:] == v)[0][0])
            return ctx2.from_index(int(xs[i])), ctx2.from_index(int(xs[j]))
    return None


# =============================================================================
# VERIFICAÇÃO DE CERTIFICADOS
# =============================================================================

def verify_witness(params: TrinomialParams, kind: str, x: FieldElement, y: FieldElement) -> bool:
    if x == y:
        return False
    if kind == "f":
        return eval_trinomial(params, x) == eval_trinomial(params, y)
    if kind == "g":
        q = params.q
        if x ** (q + 1) != params.ctx2.one or y ** (q + 1) != params.ctx2.one:
            return False
        gx, gy = g_alpha(params.ctx2, params.alpha, x), g_alpha(params.ctx2, params.alpha, y)
        return gx.value == gy.value and gx.zero_denominator == gy.zero_denominator
    raise FieldError(f"Tipo de certificado desconhecido: {kind}")


def verify_report(report: PermReport, beta=None) -> bool:
    """Reavalia o certificado de um PermReport (True também para vereditos de permutação)"""
    if report.witness is None:
        return True
    params = make_params(report.p, report.k, report.alpha, beta)
    x, y = (parse_element(params.ctx2, w) for w in report.witness)
    return verify_witness(params, report.witness_kind, x, y)
