"""
Trinômios linearizados X^{p^n} - A X - B sobre F_{p^l}

Classificação completa (sem raízes, raiz única, núcleo transladado), núcleo de
operadores linearizados por eliminação sobre F_p e oráculo por força bruta.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from config import settings
from app.services.ffcore import FieldElement, BaseFieldCtx
from app.models.reports import LinTriReport
from app.services.field_arrays import coordinate_grid
from app.utils.element_text import format_element
from app.utils.errors import BudgetExceeded, FieldError, PropertyViolation

logger = logging.getLogger(__name__)

NO_ROOTS = "no_roots"
UNIQUE = "unique"
KERNEL = "kernel"


# =============================================================================
# ÁLGEBRA LINEAR SOBRE F_p
# =============================================================================

def nullspace_mod_p(matrix: np.ndarray, p: int) -> List[List[int]]:
    """Base do núcleo de M (linhas x colunas) em forma escalonada reduzida"""
    rows = [[int(v) % p for v in row] for row in matrix]
    n_cols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n_cols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-rows[i][fc]) % p
        basis.append(vec)
    return basis


@dataclass
class KernelBasis:
    ctx: BaseFieldCtx
    basis: List[FieldElement]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def element_indices(self) -> np.ndarray:
        """Índices canônicos de todos os p^dim elementos do núcleo"""
        ctx = self.ctx
        if not self.basis:
            return np.zeros(1, dtype=np.int64)
        B = np.array([b.coeffs for b in self.basis], dtype=np.int64)
        combos = coordinate_grid(ctx.p, self.dimension)
        coords = (combos @ B) % ctx.p
        weights = np.array([ctx.p ** (ctx.degree - 1 - j) for j in range(ctx.degree)], dtype=np.int64)
        return coords @ weights

    def elements(self) -> List[FieldElement]:
        return [self.ctx.from_index(int(i)) for i in self.element_indices()]

    def smallest_nonzero(self) -> Optional[FieldElement]:
        if not self.basis:
            return None
        idx = self.element_indices()
        return self.ctx.from_index(int(idx[idx > 0].min()))


def linearized_matrix(ctx: BaseFieldCtx, terms: Sequence[Tuple[int, FieldElement]]) -> np.ndarray:
    """Matriz sobre F_p de x -> Σ c_j x^{p^{e_j}}"""
    M = np.zeros((ctx.degree, ctx.degree), dtype=np.int64)
    for e, c in terms:
        M = (M + ctx.mul_matrix(c) @ ctx.frobenius_matrix(e)) % ctx.p
    return M


def linearized_kernel(ctx: BaseFieldCtx, terms: Sequence[Tuple[int, FieldElement]]) -> KernelBasis:
    """Núcleo do operador x -> Σ c_j x^{p^{e_j}} em ctx"""
    M = linearized_matrix(ctx, terms)
    basis = [ctx.from_vector(v) for v in nullspace_mod_p(M, ctx.p)]
    logger.debug(f"Nucleo linearizado em {ctx}: dimensao {len(basis)}")
    return KernelBasis(ctx, basis)


def binomial_has_kernel(ctx: BaseFieldCtx, r: int, a: FieldElement) -> bool:
    """
    Critério da norma: X^{p^r} + aX tem núcleo não trivial em F_{p^l}
    sse (-1)^{l/d} a^{(p^l-1)/(p^d-1)} = 1, d = gcd(r, l)
    """
    ell = ctx.degree
    d = math.gcd(r, ell)
    norm = a ** ((ctx.p ** ell - 1) // (ctx.p ** d - 1))
    sign = -1 if (ell // d) % 2 else 1
    return norm * sign == ctx.one


# =============================================================================
# INSTÂNCIAS
# =============================================================================

@dataclass
class LinTriInstance:
    """X^{p^n} - A X - B sobre ctx = F_{p^l}"""

    ctx: BaseFieldCtx
    n: int
    A: FieldElement
    B: FieldElement
    d: int = field(init=False)
    m: int = field(init=False)
    alpha_last: FieldElement = field(init=False)
    beta_last: FieldElement = field(init=False)

    def __post_init__(self):
        if self.A.is_zero:
            raise FieldError("A deve ser nao nulo")
        if self.n < 1:
            raise FieldError("n deve ser positivo")
        ell = self.ctx.degree
        self.d = math.gcd(ell, self.n)
        self.m = ell // self.d
        # α_r = A^{p^{nr}} α_{r-1};  β_r = A^{p^{nr}} β_{r-1} + B^{p^{nr}}
        alpha, beta = self.A, self.B
        for r in range(1, self.m):
            a_r = self.A.frobenius(self.n * r)
            alpha = a_r * alpha
            beta = a_r * beta + self.B.frobenius(self.n * r)
        self.alpha_last = alpha
        self.beta_last = beta

    @property
    def ell(self) -> int:
        return self.ctx.degree

    def evaluate(self, x: FieldElement) -> FieldElement:
        return x.frobenius(self.n) - self.A * x - self.B

    def alpha_closed_form(self) -> FieldElement:
        p, n, m = self.ctx.p, self.n, self.m
        return self.A ** ((p ** (n * m) - 1) // (p ** n - 1))

    def beta_closed_form(self) -> FieldElement:
        """Σ_i A^{s_i} B^{p^{ni}}, s_i = Σ_{j=i}^{m-2} p^{n(j+1)}"""
        p, n, m = self.ctx.p, self.n, self.m
        total = self.ctx.zero
        for i in range(m):
            s_i = sum(p ** (n * (j + 1)) for j in range(i, m - 1))
            total = total + self.A ** s_i * self.B.frobenius(n * i)
        return total


@dataclass
class LinTriSolution:
    case: str
    instance: LinTriInstance
    root: Optional[FieldElement] = None
    tau: Optional[FieldElement] = None
    c: Optional[FieldElement] = None
    kernel: Optional[KernelBasis] = None

    @property
    def root_count(self) -> int:
        if self.case == NO_ROOTS:
            return 0
        if self.case == UNIQUE:
            return 1
        return self.instance.ctx.p ** self.instance.d

    def root_indices(self) -> np.ndarray:
        """Índices canônicos de todas as raízes"""
        ctx = self.instance.ctx
        if self.case == NO_ROOTS:
            return np.zeros(0, dtype=np.int64)
        if self.case == UNIQUE:
            return np.array([ctx.index(self.root)], dtype=np.int64)
        p = ctx.p
        base = np.array(self.root.coeffs, dtype=np.int64)
        kern = self.kernel.element_indices()
        weights = np.array([p ** (ctx.degree - 1 - j) for j in range(ctx.degree)], dtype=np.int64)
        kcoords = np.stack([(kern // w) % p for w in weights], axis=1)
        return ((kcoords + base) % p) @ weights

    def roots(self) -> Set[FieldElement]:
        ctx = self.instance.ctx
        return {ctx.from_index(int(i)) for i in self.root_indices()}


def _trace_to_subfield(c: FieldElement, d: int, m: int) -> FieldElement:
    total = c.ctx.zero
    for j in range(m):
        total = total + c.frobenius(d * j)
    return total


def classify(inst: LinTriInstance) -> LinTriSolution:
    """Classificação das raízes de X^{p^n} - AX - B em F_{p^l}"""
    ctx = inst.ctx
    alpha, beta = inst.alpha_last, inst.beta_last

    if alpha != ctx.one:
        root = beta / (ctx.one - alpha)
        if not inst.evaluate(root).is_zero:
            raise PropertyViolation(f"Raiz unica {root} nao anula o trinomio")
        return LinTriSolution(UNIQUE, inst, root=root)

    if not beta.is_zero:
        return LinTriSolution(NO_ROOTS, inst)

    # caso degenerado: núcleo de X^{p^n} - AX transladado
    kernel = linearized_kernel(ctx, [(inst.n, ctx.one), (0, -inst.A)])
    if kernel.dimension != inst.d:
        raise PropertyViolation(f"Dimensao do nucleo {kernel.dimension} != d = {inst.d}")
    tau = kernel.smallest_nonzero()

    c = ctx.one
    if _trace_to_subfield(c, inst.d, inst.m).is_zero:
        c = next(x for x in ctx.elements() if not _trace_to_subfield(x, inst.d, inst.m).is_zero)
    tr_c = _trace_to_subfield(c, inst.d, inst.m)

    p, n, m = ctx.p, inst.n, inst.m
    acc = ctx.zero
    partial = ctx.zero
    for i in range(m):
        partial = partial + c.frobenius(n * i)
        t_i = sum(p ** (n * (j + 1)) for j in range(i, m - 1))
        acc = acc + partial * inst.A ** t_i * inst.B.frobenius(n * i)
    root = acc / tr_c
    if not inst.evaluate(root).is_zero:
        raise PropertyViolation(f"Raiz base {root} nao anula o trinomio")
    return LinTriSolution(KERNEL, inst, root=root, tau=tau, c=c, kernel=kernel)


def brute_root_indices(inst: LinTriInstance) -> np.ndarray:
    """Oráculo: índices de todas as raízes por varredura vetorizada"""
    ctx = inst.ctx
    if ctx.order > settings.BRUTE_ROOTS_LIMIT:
        raise BudgetExceeded(f"|{ctx}| = {ctx.order} excede BRUTE_ROOTS_LIMIT")
    p = ctx.p
    grid = coordinate_grid(p, ctx.degree)
    op = (ctx.frobenius_matrix(inst.n) - ctx.mul_matrix(inst.A)) % p
    values = (grid @ op.T - np.array(inst.B.coeffs, dtype=np.int64)) % p
    hits = np.nonzero(~values.any(axis=1))[0]
    return hits.astype(np.int64)


def brute_roots(inst: LinTriInstance) -> Set[FieldElement]:
    return {inst.ctx.from_index(int(i)) for i in brute_root_indices(inst)}


# Acima disso o relatório traz só a raiz base e o gerador do núcleo
ROOT_LIST_LIMIT = 64


def lintri_report(inst: LinTriInstance, brute_force: bool = True) -> LinTriReport:
    """Classifica e, quando o corpo cabe em BRUTE_ROOTS_LIMIT, confere com a varredura"""
    sol = classify(inst)
    agrees = None
    if brute_force and inst.ctx.order <= settings.BRUTE_ROOTS_LIMIT:
        agrees = np.array_equal(np.sort(sol.root_indices()), brute_root_indices(inst))
        if not agrees:
            logger.error(f"Classificacao diverge da varredura para {inst}")
    roots = None
    if sol.root_count <= ROOT_LIST_LIMIT:
        roots = [format_element(r) for r in sorted(sol.roots())]
    return LinTriReport(
        p=inst.ctx.p,
        ell=inst.ell,
        n=inst.n,
        A=format_element(inst.A),
        B=format_element(inst.B),
        case=sol.case,
        d=inst.d,
        m=inst.m,
        root_count=sol.root_count,
        root=None if sol.root is None else format_element(sol.root),
        tau=None if sol.tau is None else format_element(sol.tau),
        c=None if sol.c is None else format_element(sol.c),
        roots=roots,
        brute_force_agrees=agrees,
    )
