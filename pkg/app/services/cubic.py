"""
Raízes de cúbicas sobre corpos finitos de característica > 3

Dois caminhos independentes: o método genérico (gcd com X^Q - X seguido de
Cantor-Zassenhaus, via ffcore.roots_in_field) e as fórmulas fechadas de tipo
Cardano para a cúbica em γ

    g(γ) = ζγ³ - (T/4)γ² - ((1-4μ)/4)ζγ - μγ + T

avaliadas em um corpo de trabalho que contenha √-3, √R e uma raiz cúbica D.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from app.services.ffcore import (
    BaseFieldCtx,
    FieldElement,
    embedding,
    make_field,
    roots_in_field,
    sqrt,
)
from app.services.polynomials import UniPoly
from app.utils.errors import FieldError, PropertyViolation, RadicalMissing

logger = logging.getLogger(__name__)

# Graus relativos tentados ao procurar o corpo de trabalho
WORKING_DEGREES = (1, 2, 3, 6)


def _canonical(values) -> List[FieldElement]:
    return sorted(values, key=lambda e: e.coeffs)


def _check_characteristic(ctx: BaseFieldCtx):
    if ctx.p in (2, 3):
        raise FieldError(f"Cubicas exigem caracteristica > 3 (p = {ctx.p})")


# =============================================================================
# MÉTODO GENÉRICO
# =============================================================================

def _to_poly(coeffs: Sequence[FieldElement], search_ctx: BaseFieldCtx) -> UniPoly:
    if len(coeffs) != 4:
        raise FieldError(f"Cubica exige 4 coeficientes, recebeu {len(coeffs)}")
    src = coeffs[0].ctx
    if any(c.ctx is not src for c in coeffs):
        raise FieldError("Coeficientes de contextos diferentes")
    if src is not search_ctx:
        emb = embedding(src, search_ctx)
        coeffs = [emb(c) for c in coeffs]
    if coeffs[3].is_zero:
        raise FieldError("Coeficiente lider nulo: grau degenerado")
    return UniPoly(search_ctx, coeffs)


def cubic_roots(coeffs: Sequence[FieldElement], search_ctx: BaseFieldCtx) -> set:
    """Raízes em search_ctx de c0 + c1 X + c2 X² + c3 X³ (coeficientes de grau baixo primeiro)"""
    _check_characteristic(search_ctx)
    return roots_in_field(_to_poly(coeffs, search_ctx), search_ctx)


def root_multiset(coeffs: Sequence[FieldElement], search_ctx: BaseFieldCtx) -> Counter:
    """Raízes com multiplicidade, por divisões sucessivas por (X - r)"""
    poly = _to_poly(coeffs, search_ctx)
    multiset: Counter = Counter()
    for r in roots_in_field(poly, search_ctx):
        linear = UniPoly(search_ctx, [-r, search_ctx.one])
        rest = poly
        while rest.degree >= 1:
            quot, rem = rest.divmod(linear)
            if not rem.is_zero:
                break
            multiset[r] += 1
            rest = quot
    return multiset


@lru_cache(maxsize=None)
def _cubic_nonresidue(ctx: BaseFieldCtx) -> FieldElement:
    e = (ctx.order - 1) // 3
    for z in ctx.elements():
        if not z.is_zero and z ** e != ctx.one:
            return z
    raise FieldError(f"Sem nao-cubo em {ctx}")


def cube_roots(x: FieldElement) -> List[FieldElement]:
    """
    Todas as raízes cúbicas de x no seu corpo, em ordem canônica.

    Com 3 ∤ Q-1 a raiz é x^{3^{-1} mod (Q-1)}. Caso contrário, análogo de
    Tonelli-Shanks: Q-1 = 3^s t, uma raiz aproximada r com r³/x no
    3-subgrupo de Sylow e a correção pelo log discreto nesse subgrupo,
    dígito a dígito na base 3.
    """
    ctx = x.ctx
    if x.is_zero:
        return [x]
    qm1 = ctx.order - 1
    if qm1 % 3:
        return [x ** pow(3, -1, qm1)]
    if x ** (qm1 // 3) != ctx.one:
        return []
    s, t = 0, qm1
    while t % 3 == 0:
        t //= 3
        s += 1
    c = _cubic_nonresidue(ctx) ** t
    theta = c ** (3 ** (s - 1))
    if t % 3 == 2:
        r, w = x ** ((t + 1) // 3), x ** t
    else:
        r, w = x ** ((2 * t + 1) // 3), x ** (2 * t)
    # c^m = w^{-1}
    target, m = w.inverse(), 0
    unity = [ctx.one, theta, theta * theta]
    for i in range(s):
        h = (target * (c ** m).inverse()) ** (3 ** (s - 1 - i))
        if h not in unity:
            raise PropertyViolation(f"Log discreto no 3-subgrupo falhou para {x}")
        m += unity.index(h) * 3 ** i
    if m % 3:
        raise PropertyViolation(f"{x} passou no criterio de Euler mas nao e cubo")
    root = r * c ** (m // 3)
    if root ** 3 != x:
        raise PropertyViolation(f"Raiz cubica incorreta para {x}")
    return _canonical([root, root * theta, root * theta * theta])


# =============================================================================
# FÓRMULAS FECHADAS
# =============================================================================

def displayed_cubic_coeffs(zeta: FieldElement, mu: FieldElement, T: FieldElement) -> List[FieldElement]:
    """Coeficientes (grau baixo primeiro) de ζγ³ - (T/4)γ² - ((1-4μ)/4)ζγ - μγ + T"""
    quarter = zeta.ctx.from_int(4).inverse()
    return [
        T,
        -((1 - 4 * mu) * quarter * zeta + mu),
        -(T * quarter),
        zeta,
    ]


def cardano_invariants(zeta: FieldElement, mu: FieldElement, T: FieldElement, omega: FieldElement):
    """(P, N, R) com a₂ = P/ζ², c₁ = N/ζ³ e D³ = (T N + 6ζ√R)/ζ³"""
    P = omega + 12 * zeta * zeta - 48 * mu * zeta * (zeta - 1)
    N = omega - 18 * zeta * (4 * mu * (zeta - 1) + 47 * zeta)
    inner = 4 * mu - 4 * mu * zeta + zeta
    R = (-48 * omega * omega
         + 3 * omega * (6623 * zeta * zeta - 16 * mu * mu * (zeta - 1) * (zeta - 1)
                        + 1160 * mu * (zeta - 1) * zeta)
         - 48 * zeta * inner * inner * inner)
    return P, N, R


@dataclass
class CardanoData:
    """Dados de uma avaliação das fórmulas fechadas no corpo de trabalho ctx"""

    ctx: BaseFieldCtx
    zeta: FieldElement
    theta: FieldElement
    sqrt_minus3: FieldElement
    D: FieldElement
    omega: FieldElement
    c1: FieldElement
    d1: FieldElement
    sqrt_d1: FieldElement
    a2: FieldElement
    a3: FieldElement
    radicand: FieldElement
    branches: List[FieldElement] = field(default_factory=list)

    def triple(self, D: Optional[FieldElement] = None) -> Tuple[FieldElement, FieldElement, FieldElement]:
        """(γ₁, γ₂, γ₃) na forma 12γ = θ^j D + θ^{-j} a₂/D + a₃"""
        D = self.D if D is None else D
        if D.is_zero:
            raise FieldError("D = 0: formulas fechadas indefinidas")
        th, a2, a3 = self.theta, self.a2, self.a3
        twelfth = self.ctx.from_int(12).inverse()
        inv_d = D.inverse()
        return (
            (th * th * D + th * a2 * inv_d + a3) * twelfth,
            (th * D + th * th * a2 * inv_d + a3) * twelfth,
            (D + a2 * inv_d + a3) * twelfth,
        )

    def check(self):
        one = self.ctx.one
        if self.theta ** 3 != one or self.theta == one:
            raise PropertyViolation(f"theta = {self.theta} nao e raiz cubica primitiva da unidade")
        if self.D ** 3 != self.radicand:
            raise PropertyViolation("D^3 nao recompoe o radicando")
        if self.sqrt_d1 * self.sqrt_d1 != self.d1:
            raise PropertyViolation("sqrt(d1) inconsistente")
        T = self.a3 * self.zeta
        if T * self.c1 + self.sqrt_d1 != self.radicand:
            raise PropertyViolation("D^3 != T c1 + sqrt(d1)")


def _first_form(zeta, mu, T, omega, D, s) -> Tuple[FieldElement, FieldElement, FieldElement]:
    """γ₁, γ₂, γ₃ exatamente na forma com fator 1/24"""
    ctx = zeta.ctx
    one = ctx.one
    inv24 = ctx.from_int(24).inverse()
    inner = 12 * zeta * (4 * mu * (zeta - 1) - zeta) - omega
    den = D * zeta * zeta
    g1 = ((one - s) * inner / den - (one + s) * D + 2 * T / zeta) * inv24
    g2 = ((one + s) * inner / den - (one - s) * D + 2 * T / zeta) * inv24
    g3 = (zeta * (zeta * (D * D - 48 * mu + 12) + D * T + 48 * mu) + omega) / (12 * D * zeta * zeta)
    return g1, g2, g3


def _radicals(zeta, mu, T, omega) -> Optional[Tuple[FieldElement, FieldElement, FieldElement, List[FieldElement]]]:
    """(√-3, √R escolhida, radicando, raízes cúbicas) ou None se algum radical falta"""
    ctx = zeta.ctx
    s = sqrt(ctx.from_int(-3))
    if s is None:
        return None
    _, N, R = cardano_invariants(zeta, mu, T, omega)
    sr = sqrt(R)
    if sr is None:
        return None
    inv_z3 = (zeta * zeta * zeta).inverse()
    zero_branch = True
    for root_r in sr:
        radicand = (T * N + 6 * zeta * root_r) * inv_z3
        if radicand.is_zero:
            continue
        zero_branch = False
        cubes = cube_roots(radicand)
        if cubes:
            return s[0], root_r, radicand, cubes
        # o outro ramo difere por um cubo (produto dos radicandos = a₂³)
        return None
    if zero_branch:
        raise FieldError("D = 0 em todos os ramos: formulas fechadas indefinidas")
    return None


def minimal_working_field(zeta: FieldElement, mu: FieldElement, T: FieldElement,
                          omega: Optional[FieldElement] = None) -> BaseFieldCtx:
    """Menor extensão (graus relativos 1, 2, 3, 6) que contém √-3, √R e D"""
    K = zeta.ctx
    _check_characteristic(K)
    omega = T * T if omega is None else omega
    for e in WORKING_DEGREES:
        W = K if e == 1 else make_field(K.p, K.degree * e)
        emb = embedding(K, W) if W is not K else None
        args = [emb(v) if emb else v for v in (zeta, mu, T, omega)]
        if _radicals(*args) is not None:
            logger.debug(f"Corpo de trabalho para Cardano: {W}")
            return W
    raise RadicalMissing(f"Radicais ausentes ate grau {K.degree * WORKING_DEGREES[-1]} sobre F_{K.p}")


def cardano_roots(zeta: FieldElement, mu: FieldElement, T: FieldElement,
                  omega: Optional[FieldElement] = None,
                  working_ctx: Optional[BaseFieldCtx] = None) -> Tuple[List[FieldElement], CardanoData]:
    """
    Avalia γ₁, γ₂, γ₃ pelas duas formas fechadas no corpo de trabalho.

    Os argumentos vivem num mesmo corpo K e são mergulhados em working_ctx
    (por omissão, minimal_working_field). Entre as raízes cúbicas D do
    radicando usa-se a primeira na ordem canônica; as demais ficam em
    CardanoData.branches.
    """
    K = zeta.ctx
    if any(v.ctx is not K for v in (mu, T)):
        raise FieldError("zeta, mu e T devem pertencer ao mesmo corpo")
    _check_characteristic(K)
    if zeta.is_zero:
        raise FieldError("zeta deve ser nao nulo")
    omega = T * T if omega is None else omega

    W = working_ctx or minimal_working_field(zeta, mu, T, omega)
    if W is not K:
        emb = embedding(K, W)
        zeta, mu, T, omega = emb(zeta), emb(mu), emb(T), emb(omega)

    found = _radicals(zeta, mu, T, omega)
    if found is None:
        raise RadicalMissing(f"{W} nao contem sqrt(-3), sqrt(R) e uma raiz cubica do radicando")
    s, root_r, radicand, cubes = found

    P, N, _ = cardano_invariants(zeta, mu, T, omega)
    z2 = zeta * zeta
    theta = (W.one + s) / (W.one - s)
    data = CardanoData(
        ctx=W,
        zeta=zeta,
        theta=theta,
        sqrt_minus3=s,
        D=cubes[0],
        omega=omega,
        c1=N / (z2 * zeta),
        d1=36 * root_r * root_r / (z2 * z2),
        sqrt_d1=6 * root_r / z2,
        a2=P / z2,
        a3=T / zeta,
        radicand=radicand,
        branches=cubes,
    )
    data.check()

    triple = list(data.triple())
    first = list(_first_form(zeta, mu, T, omega, data.D, s))
    if triple != first:
        raise PropertyViolation(f"Formas fechadas divergem: {first} != {triple}")
    g = UniPoly(W, displayed_cubic_coeffs(zeta, mu, T))
    for gamma in triple:
        if not g(gamma).is_zero:
            raise PropertyViolation(f"gamma = {gamma} nao anula a cubica")
    logger.debug(f"Cardano em {W}: D = {data.D}, {len(cubes)} ramos")
    return triple, data


def branch_root_sets(data: CardanoData) -> List[Counter]:
    """Multiconjunto de raízes para cada ramo de D (todos devem coincidir)"""
    return [Counter(data.triple(D)) for D in data.branches]


def vieta_checks(roots: Sequence[FieldElement], zeta: FieldElement, mu: FieldElement,
                 T: FieldElement) -> Dict[str, bool]:
    """Relações de Vieta de g(γ)/ζ para um terno de raízes no mesmo corpo"""
    g1, g2, g3 = roots
    quarter = zeta.ctx.from_int(4).inverse()
    return {
        "sum": g1 + g2 + g3 == T * quarter / zeta,
        "pairwise": g1 * g2 + g1 * g3 + g2 * g3 == -((1 - 4 * mu) * quarter + mu / zeta),
        "product": g1 * g2 * g3 == -(T / zeta),
    }
