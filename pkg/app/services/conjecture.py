"""
Reprodução da conjectura do trinômio X^{q(p-1)+1} + αX^{pq} + X^{q+p-1}

Tabelas de vereditos por (p, k, α), a redução da equação f(X) = h^{pq} a
cúbicas em γ (X = -B/2 + Bγ), a construção de h com T^p = -T, o censo de μ
para k = 3 e a unicidade explícita para k = 2, α = -1.
"""
import itertools
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from config import settings
from app.models.reports import (
    CensusReport,
    ConjectureRow,
    K2UniquenessReport,
    K2WitnessReport,
    PermReport,
    TZeroBranchReport,
)
from app.services.charsum import mu_q1_roots_of_unity, zeta_search
from app.services.cubic import cubic_roots
from app.services.ffcore import (
    BaseFieldCtx,
    FieldElement,
    QuadExtCtx,
    make_field,
    multiplicative_generator,
    quad_char,
    sqrt,
)
from app.services.lintri import KERNEL, LinTriInstance, classify, linearized_kernel, binomial_has_kernel
from app.services.permlab import (
    CHUNK_SIZE,
    TrinomialParams,
    eval_trinomial,
    fiber_sizes,
    image_indices,
    is_permutation_exhaustive,
    make_params,
    mu_collision_search,
    niho_gcd,
    reduced_value,
    verify_report,
)
from app.utils.element_text import format_element, parse_element
from app.utils.errors import BudgetExceeded, FieldError, PropertyViolation
from app.utils.workers import chunk_ranges, partition_map

logger = logging.getLogger(__name__)

ElementLike = Union[FieldElement, int, str]


def _as_element(ctx: BaseFieldCtx, value: ElementLike) -> FieldElement:
    if isinstance(value, FieldElement):
        if value.ctx is ctx:
            return value
        if isinstance(ctx, QuadExtCtx) and value.ctx is ctx.base:
            return ctx.lift(value)
        raise FieldError(f"{value} nao pertence a {ctx}")
    if isinstance(value, int):
        return ctx.from_int(value)
    return parse_element(ctx, str(value))


def _mu_in(ctx2: QuadExtCtx, mu: ElementLike) -> FieldElement:
    """μ ∈ F_q (texto, inteiro ou elemento) levado a F_{q^2}"""
    if isinstance(mu, FieldElement):
        return _as_element(ctx2, mu)
    return ctx2.lift(_as_element(ctx2.base, mu))


# =============================================================================
# VEREDITOS
# =============================================================================

def verdict(p: int, k: int, alpha: ElementLike, budget: Optional[int] = None,
            workers: Optional[int] = None) -> PermReport:
    """
    Exaustivo quando q^2 <= VERDICT_EXHAUSTIVE_LIMIT; caso contrário, redução a
    μ_{q+1} (com volta ao exaustivo se gcd(q+p-1, q-1) != 1).
    """
    params = make_params(p, k, alpha)
    if params.ctx2.order <= settings.VERDICT_EXHAUSTIVE_LIMIT:
        return is_permutation_exhaustive(params, budget=budget, workers=workers)
    if niho_gcd(p, k) != 1:
        logger.warning(f"gcd(q+p-1, q-1) != 1 para p={p}, k={k}; usando varredura exaustiva")
        return is_permutation_exhaustive(params, budget=budget, workers=workers)
    return mu_collision_search(params.ctx2, params.alpha)


def expected_verdict(p: int, k: int, alpha: ElementLike) -> str:
    """Resposta conjecturada: permutação sse (k=1, α=-3) ou (k=2, α=-1)"""
    base = make_field(p, k)
    a = _as_element(base, alpha)
    if a.is_zero:
        raise FieldError("alpha deve ser nao nulo")
    if (k == 1 and a == base.from_int(-3)) or (k == 2 and a == -base.one):
        return "permutation"
    return "not_permutation"


def _table_row(p: int, k: int, alpha: FieldElement, workers: Optional[int]) -> ConjectureRow:
    try:
        report = verdict(p, k, alpha, workers=workers)
    except Exception as e:
        logger.error(f"Erro ao calcular veredito p={p} k={k} alpha={format_element(alpha)}: {e}")
        raise
    if not verify_report(report):
        raise PropertyViolation(f"Certificado invalido para p={p} k={k} alpha={report.alpha}: {report.witness}")
    expected = expected_verdict(p, k, alpha)
    return ConjectureRow(
        p=p,
        k=k,
        alpha=report.alpha,
        verdict=report.verdict,
        method=report.method,
        witness="|".join(report.witness) if report.witness else None,
        elapsed_ms=report.elapsed_ms,
        expected=expected,
        agrees=report.verdict == expected,
    )


def conjecture_table(p: int, ks: Sequence[int], workers: Optional[int] = None) -> List[ConjectureRow]:
    """Uma linha por (k, α ∈ F_q^*), ordenada por k e pela ordem canônica de α"""
    rows: List[ConjectureRow] = []
    for k in ks:
        base = make_field(p, k)
        alphas = [a for a in base.elements() if not a.is_zero]
        # paralelismo sobre α; cada veredito roda sem workers internos
        rows.extend(partition_map(lambda a: _table_row(p, k, a, 1), alphas, workers))
        disagreements = [r.alpha for r in rows if r.k == k and not r.agrees]
        logger.info(f"Tabela p={p} k={k}: {len(alphas)} valores de alpha, {len(disagreements)} divergencias")
        if disagreements:
            logger.warning(f"Divergencias em p={p} k={k}: {disagreements[:10]}")
    return rows


# =============================================================================
# EQUAÇÃO EM γ
# =============================================================================

def mu_from_alpha(alpha: FieldElement) -> FieldElement:
    """μ = 1/(α + 2)"""
    shifted = alpha + 2
    if shifted.is_zero:
        raise FieldError("alpha = -2 nao define mu")
    return shifted.inverse()


def beta_from_alpha(ctx2: QuadExtCtx, alpha: FieldElement) -> FieldElement:
    """β = α^{p^{2k-1}}, a única raiz p-ésima de α em F_{q^2}"""
    a = _as_element(ctx2, alpha)
    beta = ctx2.frobenius(a, ctx2.degree - 1)
    if ctx2.frobenius(beta, 1) != a:
        raise PropertyViolation(f"beta^p != alpha para alpha = {a}")
    return beta


def build_B(h: FieldElement, beta: FieldElement, k: int) -> FieldElement:
    """B = (h^{p^k} - h)/β"""
    if beta.is_zero:
        raise FieldError("beta deve ser nao nulo")
    if beta.ctx is not h.ctx:
        raise FieldError("h e beta devem pertencer ao mesmo corpo")
    return (h.frobenius(k) - h) / beta


@dataclass
class GammaEquation:
    """
    γ^{p+2} + c₁γ^p + c₂γ² + c₃γ + c₄ = 0 sobre F_{q^2}.

    displayed: (1, -(1-4μ)/4, -T/4, -μ, T);
    derived:   (1, -(1-4μ)/4, -T/2, -μ, T/8), obtida de αX^p + Tr(X^{q+p-1}) = h^p
    com X = B(γ - 1/2).
    """

    ctx: QuadExtCtx
    mu: FieldElement
    T: FieldElement
    t: Optional[FieldElement] = None

    def __post_init__(self):
        self.mu = _as_element(self.ctx, self.mu)
        self.T = _as_element(self.ctx, self.T)
        if self.mu.is_zero:
            raise FieldError("mu deve ser nao nulo")

    @property
    def omega(self) -> FieldElement:
        return self.T * self.T

    @property
    def alpha(self) -> FieldElement:
        return self.mu.inverse() - 2

    def _quarter(self) -> FieldElement:
        return self.ctx.from_int(4).inverse()

    def displayed_coeffs(self) -> Tuple[FieldElement, ...]:
        q4 = self._quarter()
        one = self.ctx.one
        return one, -((1 - 4 * self.mu) * q4), -(self.T * q4), -self.mu, self.T

    def derived_coeffs(self) -> Tuple[FieldElement, ...]:
        q4 = self._quarter()
        one = self.ctx.one
        return one, -((1 - 4 * self.mu) * q4), -(self.T / 2), -self.mu, self.T / 8

    def evaluate(self, gamma: FieldElement, derived: bool = True) -> FieldElement:
        c0, c1, c2, c3, c4 = self.derived_coeffs() if derived else self.displayed_coeffs()
        gp = gamma.frobenius(1)
        return c0 * gp * gamma * gamma + c1 * gp + c2 * gamma * gamma + c3 * gamma + c4

    def cubic_for(self, zeta: FieldElement, derived: bool = True) -> List[FieldElement]:
        """Coeficientes (grau baixo primeiro) da cúbica obtida com γ^p = ζγ"""
        zeta = _as_element(self.ctx, zeta)
        c0, c1, c2, c3, c4 = self.derived_coeffs() if derived else self.displayed_coeffs()
        return [c4, c1 * zeta + c3, c2, c0 * zeta]

    def check_invariants(self):
        alpha = self.alpha
        if self.mu * (alpha + 2) != self.ctx.one or self.mu * alpha != 1 - 2 * self.mu:
            raise PropertyViolation(f"Relacoes entre mu e alpha falharam para mu = {self.mu}")


def t_parameter(h: FieldElement) -> FieldElement:
    """t = (h^{pq} + h^p)/(h^{pq} - h^p)"""
    ctx2 = h.ctx
    hp = h.frobenius(1)
    hpq = ctx2.conj(hp)
    den = hpq - hp
    if den.is_zero:
        raise FieldError(f"h = {h} pertence a F_q: t indefinido")
    return (hpq + hp) / den


def gamma_equation_from_h(params: TrinomialParams, h: FieldElement) -> GammaEquation:
    mu = mu_from_alpha(params.alpha)
    t = t_parameter(h)
    eq = GammaEquation(params.ctx2, mu, (1 - 2 * mu) * t, t=t)
    eq.check_invariants()
    return eq


@dataclass
class PipelineTrace:
    params: TrinomialParams
    h: FieldElement
    B: FieldElement
    equation: GammaEquation
    per_zeta: List[Tuple[FieldElement, List[FieldElement]]] = field(default_factory=list)
    gammas: List[FieldElement] = field(default_factory=list)
    solutions: List[FieldElement] = field(default_factory=list)

    @property
    def target(self) -> FieldElement:
        """Valor de f cuja fibra foi resolvida: h^{pq}"""
        return self.params.ctx2.conj(self.h.frobenius(1))


def gamma_pipeline_trace(p: int, k: int, alpha: ElementLike, h: ElementLike) -> PipelineTrace:
    """
    Resolve f(X) = h^{pq} por X = -B/2 + Bγ com γ^{p^k} = -γ.

    γ = 0 é raiz sse T = 0; os demais γ satisfazem γ^p = ζγ com
    ζ^{(q-1)/(p-1)} = -1 e são raízes da cúbica correspondente em F_{q^2}.
    """
    params = make_params(p, k, alpha)
    ctx2 = params.ctx2
    h = _as_element(ctx2, h)
    if ctx2.in_base(h):
        raise FieldError(f"h = {format_element(h)} pertence a F_q; B = 0")
    beta = beta_from_alpha(ctx2, params.alpha)
    B = build_B(h, beta, k)
    eq = gamma_equation_from_h(params, h)

    q = params.q
    zetas = mu_q1_roots_of_unity(ctx2.base, (q - 1) // (p - 1))
    trace = PipelineTrace(params, h, B, eq)
    gammas: Set[FieldElement] = set()
    if eq.T.is_zero:
        gammas.add(ctx2.zero)
    for z in zetas:
        zl = ctx2.lift(z)
        roots = cubic_roots(eq.cubic_for(zl), ctx2)
        admissible = sorted(g for g in roots if not g.is_zero and g.frobenius(1) == zl * g)
        trace.per_zeta.append((z, admissible))
        gammas.update(admissible)

    for g in gammas:
        if not eq.evaluate(g).is_zero or g.frobenius(k) != -g:
            raise PropertyViolation(f"gamma = {g} nao satisfaz a equacao reduzida")
    trace.gammas = sorted(gammas)
    half = ctx2.from_int(2).inverse()
    trace.solutions = sorted(B * (g - half) for g in gammas)

    target = trace.target
    for X in trace.solutions:
        if eval_trinomial(params, X) != target:
            raise PropertyViolation(f"X = {X} vindo de gamma nao resolve f(X) = h^(pq)")
    logger.debug(f"Pipeline p={p} k={k} alpha={params.alpha_text}: {len(trace.solutions)} solucoes")
    return trace


def gamma_root_pipeline(p: int, k: int, alpha: ElementLike, h: ElementLike) -> Set[FieldElement]:
    return set(gamma_pipeline_trace(p, k, alpha, h).solutions)


def brute_preimages(params: TrinomialParams, h: FieldElement) -> Set[FieldElement]:
    """Oráculo: todos os X com f(X) = h^{pq}, por varredura vetorizada"""
    ctx2 = params.ctx2
    if ctx2.order > settings.PERM_EXHAUSTIVE_BUDGET:
        raise BudgetExceeded(f"q^2 = {ctx2.order} excede PERM_EXHAUSTIVE_BUDGET")
    h = _as_element(ctx2, h)
    target = ctx2.index(ctx2.conj(h.frobenius(1)))
    found: Set[FieldElement] = set()
    for lo, hi in chunk_ranges(ctx2.order, CHUNK_SIZE):
        hits = np.nonzero(image_indices(params, lo, hi) == target)[0]
        found.update(ctx2.from_index(lo + int(i)) for i in hits)
    return found


# =============================================================================
# h COM T^p = -T
# =============================================================================

def h_kernel(p: int, k: int, mu: ElementLike):
    """
    Núcleo de X^{p^k} + aX em F_{q^2}, a = (1+ℓ₀)/(1-ℓ₀), ℓ₀ = (T/(1-2μ))^{1/p},
    com T o menor elemento não nulo de ker(X^p + X).

    Devolve (T, a, núcleo).
    """
    if k not in (2, 3):
        raise FieldError(f"Construcao de h disponivel para k em (2, 3), recebeu {k}")
    ctx2 = make_params(p, k, 1).ctx2
    mu = _mu_in(ctx2, mu)
    one = ctx2.one
    if mu.is_zero or (1 - 2 * mu).is_zero:
        raise FieldError("mu deve ser diferente de 0 e de 1/2")

    T = linearized_kernel(ctx2, [(1, one), (0, one)]).smallest_nonzero()
    if T is None or T.frobenius(k) != -T:
        # T^p = -T obriga T^{p^k} = (-1)^k T; para k par só resta T = 0
        raise PropertyViolation(f"Nao existe T != 0 com T^p = -T e T^(p^{k}) = -T (k = {k})")
    ell0 = ctx2.frobenius(T / (1 - 2 * mu), ctx2.degree - 1)
    if ell0 == one:
        raise PropertyViolation("ell_0 = 1: a indefinido")
    a = (1 + ell0) / (1 - ell0)
    if not binomial_has_kernel(ctx2, k, a):
        raise PropertyViolation(f"Norma de a = {a} diferente de 1")
    kernel = linearized_kernel(ctx2, [(k, one), (0, a)])
    if kernel.dimension == 0:
        raise PropertyViolation(f"X^(p^{k}) + aX sem raizes nao nulas")
    return T, a, kernel


def find_h_antisymmetric_T(p: int, k: int, mu: ElementLike) -> FieldElement:
    """h != 0 fora de F_q com T = (1-2μ)t satisfazendo T^p = -T != 0"""
    T, _, kernel = h_kernel(p, k, mu)
    h = kernel.smallest_nonzero()
    ctx2 = h.ctx
    mu_el = _mu_in(ctx2, mu)
    T_h = (1 - 2 * mu_el) * t_parameter(h)
    if T_h != T or T_h.is_zero or T_h.frobenius(1) != -T_h:
        raise PropertyViolation(f"h = {h} nao reproduz T com T^p = -T")
    logger.info(f"h com T^p = -T para p={p} k={k}: {format_element(h)}")
    return h


# =============================================================================
# CENSO DE μ (k = 3)
# =============================================================================

CENSUS_FLAGS = (
    "zeta_nonsquare",
    "w_nonsquare",
    "w_nonzero",
    "mu_outside_prime_field",
    "mu_admissible",
    "gamma_frobenius",
)
DOCUMENTED_MASK = ("w_nonsquare", "mu_outside_prime_field")
COUNT_MODES = ("distinct_mu", "zeta_mu_pairs")


@dataclass
class CensusTable:
    """Pares (ζ, μ) com ζ^{p²+p+1} = -1 e μ raiz de μ^p - Aμ - B para esse ζ"""

    p: int
    zetas: List[FieldElement]
    roots: List[List[FieldElement]]
    pairs: List[Tuple[int, FieldElement]]
    flags: Dict[str, np.ndarray]

    @property
    def ctx(self) -> BaseFieldCtx:
        return self.zetas[0].ctx


def census_instance(zeta: FieldElement) -> LinTriInstance:
    """μ^p - (ζ-1)/(ζ²(ζ^p-1)) μ + (ζ²-1)/(4ζ²(ζ^p-1)) = 0"""
    z2 = zeta * zeta
    den = z2 * (zeta.frobenius(1) - 1)
    if den.is_zero:
        raise FieldError(f"zeta = {zeta} anula zeta^2 (zeta^p - 1)")
    A = (zeta - 1) / den
    B = -((z2 - 1) / (4 * den))
    return LinTriInstance(zeta.ctx, 1, A, B)


def _pair_flags(zeta: FieldElement, mu: FieldElement) -> Dict[str, bool]:
    ctx = zeta.ctx
    p = ctx.p
    w = 4 * (zeta - 1) * mu + 1
    gamma_ok = False
    if not w.is_zero:
        gamma_ok = (4 / w) ** ((p - 1) // 2) == zeta
    return {
        "zeta_nonsquare": quad_char(zeta) == -1,
        "w_nonsquare": quad_char(w) == -1,
        "w_nonzero": not w.is_zero,
        "mu_outside_prime_field": mu.frobenius(1) != mu,
        "mu_admissible": not mu.is_zero and not (2 * mu - 1).is_zero,
        "gamma_frobenius": gamma_ok,
    }


@lru_cache(maxsize=8)
def census_table(p: int) -> CensusTable:
    ctx = make_field(p, 3)
    zetas = mu_q1_roots_of_unity(ctx, p * p + p + 1)
    roots: List[List[FieldElement]] = []
    pairs: List[Tuple[int, FieldElement]] = []
    flag_rows: Dict[str, List[bool]] = {name: [] for name in CENSUS_FLAGS}
    for zi, z in enumerate(zetas):
        try:
            sol = classify(census_instance(z))
        except Exception as e:
            logger.error(f"Erro ao resolver a equacao em mu para zeta = {format_element(z)}: {e}")
            raise
        mus = sorted(sol.roots())
        if sol.case != KERNEL or len(mus) != p:
            raise PropertyViolation(f"zeta = {z}: esperadas {p} raizes em mu, obtidas {len(mus)}")
        roots.append(mus)
        for mu in mus:
            pairs.append((zi, mu))
            for name, value in _pair_flags(z, mu).items():
                flag_rows[name].append(value)
    flags = {name: np.array(values, dtype=bool) for name, values in flag_rows.items()}
    logger.info(f"Tabela do censo p={p}: {len(zetas)} valores de zeta, {len(pairs)} pares")
    return CensusTable(p, zetas, roots, pairs, flags)


def _mask_count(table: CensusTable, mask: Sequence[str], mode: str) -> int:
    unknown = [m for m in mask if m not in CENSUS_FLAGS]
    if unknown:
        raise FieldError(f"Condicoes desconhecidas: {unknown}")
    if mode not in COUNT_MODES:
        raise FieldError(f"Modo de contagem desconhecido: {mode}")
    keep = np.ones(len(table.pairs), dtype=bool)
    for name in mask:
        keep &= table.flags[name]
    if mode == "zeta_mu_pairs":
        return int(keep.sum())
    return len({table.pairs[i][1] for i in np.nonzero(keep)[0]})


def _max_shared(table: CensusTable) -> int:
    owners: Dict[FieldElement, List[int]] = defaultdict(list)
    for zi, mu in table.pairs:
        owners[mu].append(zi)
    shared: Counter = Counter()
    for zs in owners.values():
        for pair in itertools.combinations(sorted(zs), 2):
            shared[pair] += 1
    return max(shared.values(), default=0)


def mu_census(p: int, condition_mask: Sequence[str] = DOCUMENTED_MASK,
              mode: str = "distinct_mu") -> CensusReport:
    """Contagem de μ ∈ F_{p^3} sob a máscara de condições dada"""
    table = census_table(p)
    ctx = table.ctx
    count = _mask_count(table, condition_mask, mode)
    max_shared = _max_shared(table)
    if max_shared > 1:
        raise PropertyViolation(f"Dois valores de zeta compartilham {max_shared} valores de mu")
    reference = settings.CENSUS_REFERENCE.get(p)
    report = CensusReport(
        p=p,
        total=ctx.order - 1,
        qualifying_count=count,
        condition_mask=list(condition_mask) + [mode],
        zeta_count=len(table.zetas),
        per_zeta_root_counts={format_element(z): len(r) for z, r in zip(table.zetas, table.roots)},
        union_size=len({mu for _, mu in table.pairs}),
        max_shared=max_shared,
        lower_bound=(p * p + p) // 2,
        reference=reference,
        reproduces_reference=None if reference is None else count == reference,
    )
    logger.info(f"Censo p={p} mascara={report.condition_mask}: {count} de {report.total}")
    return report


def census_masks():
    """Máscaras candidatas em ordem fixa: modo, tamanho, ordem lexicográfica dos nomes"""
    for mode in COUNT_MODES:
        for size in range(len(CENSUS_FLAGS) + 1):
            for combo in itertools.combinations(CENSUS_FLAGS, size):
                yield combo, mode


def locate_census_mask(p: int, target: Optional[int] = None) -> Optional[CensusReport]:
    """Primeira máscara cuja contagem é target (por omissão, o valor de referência)"""
    target = settings.CENSUS_REFERENCE.get(p) if target is None else target
    if target is None:
        raise FieldError(f"Sem valor de referencia configurado para p = {p}")
    table = census_table(p)
    for mask, mode in census_masks():
        if _mask_count(table, mask, mode) == target:
            logger.info(f"Mascara que reproduz {target} para p={p}: {list(mask)} ({mode})")
            return mu_census(p, mask, mode)
    logger.warning(f"Nenhuma mascara reproduz {target} para p={p}")
    return None


# =============================================================================
# RAMO t = 0 (k = 3)
# =============================================================================

def t_zero_branch(p: int, mu: ElementLike) -> TZeroBranchReport:
    """
    Com h^{p^3} = -h (T = 0), as raízes não nulas vêm de δ = 1/γ com
    δ² = 4/(4(ζ-1)μ+1) e δ^p = ζδ.
    """
    base = make_field(p, 3)
    ctx2 = make_params(p, 3, 1).ctx2
    mu = _as_element(base, mu)
    if mu.is_zero:
        raise FieldError("mu deve ser nao nulo")

    zeta = None
    for z in mu_q1_roots_of_unity(base, p * p + p + 1):
        if quad_char(z) == -1 and quad_char(4 * (z - 1) * mu + 1) == -1:
            zeta = z
            break
    if zeta is None:
        logger.warning(f"Nenhum zeta com zeta^(p^2+p+1) = -1 serve para mu = {format_element(mu)}")
        zeta = zeta_search(base, mu)
    if zeta is None:
        return TZeroBranchReport(p=p, mu=format_element(mu))

    w = ctx2.lift(4 * (zeta - 1) * mu + 1)
    roots = sqrt(4 / w)
    if roots is None:
        raise PropertyViolation(f"4/w sem raiz quadrada em {ctx2}")
    eq = GammaEquation(ctx2, ctx2.lift(mu), ctx2.zero)
    zl = ctx2.lift(zeta)
    admissible = []
    for delta in roots:
        ok = delta.frobenius(1) == zl * delta and delta.frobenius(3) == -delta
        if ok and not eq.evaluate(delta.inverse()).is_zero:
            raise PropertyViolation(f"1/delta nao anula a equacao com T = 0 (delta = {delta})")
        admissible.append(ok)
    return TZeroBranchReport(
        p=p,
        mu=format_element(mu),
        zeta=format_element(zeta),
        gammas=[format_element(d) for d in roots],
        admissible=admissible,
    )


# =============================================================================
# k = 2, α = -1: UNICIDADE
# =============================================================================

def roots_of_unity(ctx: BaseFieldCtx, n: int) -> List[FieldElement]:
    """ζ^n = 1 em ctx, em ordem canônica (n divide |ctx| - 1)"""
    if (ctx.order - 1) % n:
        raise FieldError(f"{n} nao divide |{ctx}| - 1")
    g = multiplicative_generator(ctx)
    step = (ctx.order - 1) // n
    return sorted(g ** (step * j) for j in range(n))


def degenerate_zeta(h: FieldElement) -> Optional[FieldElement]:
    """(h^{2p³+p²} + h^{2p+1})/(h^{p³+2} + h^{2p²+p}), ou None se indefinido ou nulo"""
    a, A1, b, B1 = h, h.frobenius(1), h.frobenius(2), h.frobenius(3)
    num = B1 * B1 * b + A1 * A1 * a
    den = B1 * a * a + b * b * A1
    if den.is_zero or num.is_zero:
        return None
    return num / den


def _closed_form_u(h: FieldElement, zeta: FieldElement) -> Tuple[FieldElement, FieldElement]:
    """(numerador, denominador) de u para u^p = ζu"""
    a, A1, b, B1 = h, h.frobenius(1), h.frobenius(2), h.frobenius(3)
    z = zeta
    num = -z * B1 * a * a - z * b * b * A1 + B1 * B1 * b + A1 * A1 * a
    den = (-2 * z * B1 * a + B1 * B1 - B1 * A1 - z * z * b * b + z * z * b * a
           - 2 * z * b * A1 + 2 * z * B1 * b + 2 * z * A1 * a + A1 * A1 - a * a * z * z)
    return num, den


def k2_uniqueness(p: int, h: ElementLike, brute_force: bool = True) -> K2UniquenessReport:
    """
    Única solução X = u - h (u ∈ F_{p^2}) de -X^p + Tr(X^{p²+p-1}) = h^p.

    Para cada ζ com ζ^{p+1} = 1, u vem da forma fechada quando o coeficiente
    de u não se anula; caso contrário percorre-se a reta {u : u^p = ζu}.
    """
    params = make_params(p, 2, -1)
    ctx2 = params.ctx2
    base = ctx2.base
    h = _as_element(ctx2, h)
    target = h.frobenius(1)

    def solves(u: FieldElement) -> bool:
        return reduced_value(params, u - h) == target

    found: Dict[FieldElement, Tuple[str, Optional[FieldElement]]] = {}
    if ctx2.in_base(h):
        # em F_{p^2} a equação vira X^p = h^p: X = h, u = 2h
        u = 2 * h
        if not solves(u):
            raise PropertyViolation(f"u = 2h nao resolve a equacao para h = {h} em F_(p^2)")
        found[u] = ("h_in_subfield", None)
    else:
        if solves(ctx2.zero):
            found[ctx2.zero] = ("zero", None)
        for z in roots_of_unity(base, p + 1):
            zl = ctx2.lift(z)
            num, den = _closed_form_u(h, zl)
            if not den.is_zero:
                u = num / den
                if not u.is_zero and ctx2.in_base(u) and u.frobenius(1) == zl * u and solves(u):
                    found.setdefault(u, ("closed_form", z))
                continue
            line = linearized_kernel(base, [(1, base.one), (0, -z)])
            for e in line.elements():
                u = ctx2.lift(e)
                if not u.is_zero and solves(u):
                    found.setdefault(u, ("degenerate", z))

    if len(found) != 1:
        raise PropertyViolation(f"k=2, alpha=-1, h = {format_element(h)}: {len(found)} solucoes")
    u, (branch, zeta) = next(iter(found.items()))

    agrees = None
    if brute_force:
        brute = [ctx2.lift(e) for e in base.elements() if solves(ctx2.lift(e))]
        agrees = brute == [u]
    return K2UniquenessReport(
        p=p,
        h=format_element(h),
        u=format_element(u),
        solution=format_element(u - h),
        branch=branch,
        zeta=None if zeta is None else format_element(zeta),
        brute_force_agrees=agrees,
    )


# =============================================================================
# k = 2, α != -1: CERTIFICADOS
# =============================================================================

def _h_candidates(ctx2: QuadExtCtx, first: Optional[FieldElement]):
    if first is not None:
        yield first
    for idx in range(ctx2.order):
        h = ctx2.from_index(idx)
        if not ctx2.in_base(h) and h != first:
            yield h


def k2_nonperm_witness(p: int, alpha: ElementLike, budget: Optional[int] = None,
                       cross_check: bool = True) -> K2WitnessReport:
    """
    Procura h fora de F_{p^2} cuja fibra f(X) = h^{pq} tenha 0 ou >= 2
    soluções pelo pipeline em γ.

    Começa pela construção com T^p = -T; para k = 2 ela é impossível e a busca
    segue pela enumeração canônica de h, até H_SEARCH_BUDGET candidatos. Quando
    q^2 cabe na varredura, o tamanho das fibras é calculado uma vez e só os h
    com fibra != 1 passam pelo pipeline.
    """
    budget = settings.H_SEARCH_BUDGET if budget is None else budget
    params = make_params(p, 2, alpha)
    ctx2 = params.ctx2
    a = ctx2.project(params.alpha)
    if a == -ctx2.base.one or (a + 2).is_zero:
        raise FieldError("k2_nonperm_witness exige alpha fora de {0, -1, -2}")

    first = None
    try:
        first = find_h_antisymmetric_T(p, 2, mu_from_alpha(a))
    except PropertyViolation as e:
        logger.warning(f"Construcao com T^p = -T indisponivel para k=2 ({e}); enumerando h")

    sizes = None
    if ctx2.order <= settings.PERM_EXHAUSTIVE_BUDGET:
        # fibras de todos os alvos numa só varredura: só h com fibra != 1 passam pelo pipeline
        sizes = fiber_sizes(params)

    tried = 0
    for h in _h_candidates(ctx2, first):
        if tried >= budget:
            break
        tried += 1
        if sizes is not None and sizes[ctx2.index(ctx2.conj(h.frobenius(1)))] == 1:
            continue
        trace = gamma_pipeline_trace(p, 2, a, h)
        if len(trace.solutions) == 1:
            if sizes is not None:
                raise PropertyViolation(f"Pipeline em gamma acha 1 solucao para h = {format_element(h)}, a varredura nao")
            continue
        certificate = "missed_value" if not trace.solutions else "collision"
        agrees = None
        if cross_check and ctx2.order <= settings.VERDICT_EXHAUSTIVE_LIMIT:
            brute = brute_preimages(params, h)
            exhaustive = is_permutation_exhaustive(params)
            agrees = brute == set(trace.solutions) and exhaustive.verdict == "not_permutation"
        report = K2WitnessReport(
            p=p,
            alpha=params.alpha_text,
            h=format_element(h),
            certificate=certificate,
            target=format_element(trace.target),
            gammas=[format_element(g) for g in trace.gammas],
            preimages=[format_element(x) for x in trace.solutions],
            candidates_tried=tried,
            exhaustive_agrees=agrees,
        )
        logger.info(f"Certificado k=2 alpha={report.alpha}: {certificate} em h={report.h} apos {tried} candidatos")
        return report

    logger.error(f"Nenhum h certificador para p={p} alpha={params.alpha_text} em {tried} candidatos")
    raise BudgetExceeded(f"H_SEARCH_BUDGET = {budget} esgotado sem certificado (p={p}, alpha={params.alpha_text})")
