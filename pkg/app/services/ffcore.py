"""
Aritmética de corpos finitos F_p, F_{p^k} e da extensão quadrática F_{q^2} = F_q(i)

Todo elemento é um vetor canônico de coeficientes sobre F_p. A ordem canônica
dos elementos é a ordem lexicográfica desse vetor (coeficiente de grau baixo
primeiro), usada em todas as enumerações determinísticas do projeto.
"""
import itertools
import logging
import math
import random
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from config import settings
from app.utils.errors import FieldError
from app.utils.number_theory import is_prime, prime_divisors

logger = logging.getLogger(__name__)

IntPoly = List[int]


# =============================================================================
# POLINÔMIOS INTEIROS MOD p (coeficiente de grau baixo primeiro)
# =============================================================================

def _gf_strip(f: IntPoly) -> IntPoly:
    while f and f[-1] == 0:
        f.pop()
    return f


def _gf_sub(f: IntPoly, g: IntPoly, p: int) -> IntPoly:
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)]
    return _gf_strip(out)


def _gf_mul(f: IntPoly, g: IntPoly, p: int) -> IntPoly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _gf_strip([c % p for c in out])


def _gf_rem(f: IntPoly, g: IntPoly, p: int) -> IntPoly:
    """Resto de f por g (g não nulo)"""
    f = list(f)
    dg = len(g) - 1
    inv_lc = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and f:
        coef = f[-1] * inv_lc % p
        shift = len(f) - 1 - dg
        if coef:
            for j, b in enumerate(g):
                f[shift + j] = (f[shift + j] - coef * b) % p
        f.pop()
        _gf_strip(f)
    return f


def _gf_gcd(f: IntPoly, g: IntPoly, p: int) -> IntPoly:
    f, g = list(f), list(g)
    while g:
        f, g = g, _gf_rem(f, g, p)
    if f:
        inv_lc = pow(f[-1], p - 2, p)
        f = [c * inv_lc % p for c in f]
    return f


def _gf_powmod(base: IntPoly, e: int, m: IntPoly, p: int) -> IntPoly:
    result: IntPoly = [1]
    base = _gf_rem(base, m, p)
    while e > 0:
        if e & 1:
            result = _gf_rem(_gf_mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _gf_rem(_gf_mul(base, base, p), m, p)
    return result


def is_irreducible_mod_p(f: IntPoly, p: int) -> bool:
    """
    Teste de irredutibilidade de f mônico de grau k sobre F_p:
    X^{p^k} = X mod f e gcd(X^{p^j} - X, f) = 1 para j < k
    """
    k = len(f) - 1
    if k < 1 or f[-1] != 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    # raiz em F_p rejeita cedo
    for a in range(p):
        acc = 0
        for c in reversed(f):
            acc = (acc * a + c) % p
        if acc == 0:
            return False
    x = [0, 1]
    xpj = x
    for j in range(1, k):
        xpj = _gf_powmod(xpj, p, f, p)
        if j <= k // 2:
            if len(_gf_gcd(f, _gf_sub(xpj, x, p), p)) > 1:
                return False
    xpk = _gf_powmod(xpj, p, f, p)
    return _gf_strip(list(xpk)) == x


def find_irreducible(p: int, k: int) -> IntPoly:
    """Menor mônico irredutível de grau k na ordem lexicográfica (c0, ..., c_{k-1})"""
    if k == 1:
        return [0, 1]
    # c0 = 0 nunca é irredutível: a busca começa em c0 = 1
    ranges = [range(1, p)] + [range(p)] * (k - 1)
    for tail in itertools.product(*ranges):
        candidate = list(tail) + [1]
        if is_irreducible_mod_p(candidate, p):
            return candidate
    raise FieldError(f"Nenhum irredutivel de grau {k} sobre F_{p}")


# =============================================================================
# ELEMENTOS
# =============================================================================

class FieldElement:
    """Elemento de um corpo finito; valor imutável ligado ao seu contexto"""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: "BaseFieldCtx", coeffs: Tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    # ------------------------------------------------------------------
    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise FieldError(f"Elementos de contextos diferentes: {self.ctx} e {other.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        raise TypeError(f"Operando nao suportado: {type(other).__name__}")

    def __add__(self, other):
        return self.ctx.add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.ctx.sub(self, self._coerce(other))

    def __rsub__(self, other):
        return self.ctx.sub(self._coerce(other), self)

    def __mul__(self, other):
        return self.ctx.mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.ctx.div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return self.ctx.div(self._coerce(other), self)

    def __neg__(self):
        return self.ctx.neg(self)

    def __pow__(self, e: int):
        return self.ctx.pow(self, e)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __lt__(self, other: "FieldElement") -> bool:
        return self.coeffs < other.coeffs

    def __repr__(self):
        return f"{self.ctx.name}({','.join(str(c) for c in self.coeffs)})"

    # ------------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inverse(self) -> "FieldElement":
        return self.ctx.inv(self)

    def frobenius(self, e: int = 1) -> "FieldElement":
        return self.ctx.frobenius(self, e)

    @property
    def index(self) -> int:
        return self.ctx.index(self)


# =============================================================================
# CONTEXTOS
# =============================================================================

class BaseFieldCtx:
    """Interface comum a F_{p^k} e F_q(i); imutável após a construção"""

    p: int
    degree: int
    order: int
    name: str

    def __init__(self):
        self._frob_cols: Dict[int, List[Tuple[int, ...]]] = {}
        self._zero = FieldElement(self, (0,) * self.degree)
        self._one = FieldElement(self, (1,) + (0,) * (self.degree - 1))

    # ------------------------------------------------------------------
    # construção de elementos
    # ------------------------------------------------------------------
    @property
    def zero(self) -> FieldElement:
        return self._zero

    @property
    def one(self) -> FieldElement:
        return self._one

    def __call__(self, value: Union[int, Sequence[int]]) -> FieldElement:
        if isinstance(value, int):
            return self.from_int(value)
        return self.from_coeffs(value)

    def from_int(self, value: int) -> FieldElement:
        return FieldElement(self, (value % self.p,) + (0,) * (self.degree - 1))

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElement:
        if len(coeffs) > self.degree:
            raise FieldError(f"{len(coeffs)} coeficientes para um corpo de grau {self.degree}")
        vals = tuple(int(c) % self.p for c in coeffs) + (0,) * (self.degree - len(coeffs))
        return FieldElement(self, vals)

    def index(self, x: FieldElement) -> int:
        """Posição de x na enumeração canônica"""
        idx = 0
        for c in x.coeffs:
            idx = idx * self.p + c
        return idx

    def from_index(self, idx: int) -> FieldElement:
        coeffs = []
        for _ in range(self.degree):
            idx, c = divmod(idx, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(reversed(coeffs)))

    def elements(self) -> Iterator[FieldElement]:
        """Todos os elementos em ordem canônica"""
        for coeffs in itertools.product(range(self.p), repeat=self.degree):
            yield FieldElement(self, coeffs)

    def random_element(self, rng: random.Random, nonzero: bool = False) -> FieldElement:
        while True:
            x = FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.degree)))
            if not (nonzero and x.is_zero):
                return x

    # ------------------------------------------------------------------
    # aritmética
    # ------------------------------------------------------------------
    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.p
        return FieldElement(self, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.p
        return FieldElement(self, tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElement) -> FieldElement:
        p = self.p
        return FieldElement(self, tuple((-x) % p for x in a.coeffs))

    def scale(self, a: FieldElement, c: int) -> FieldElement:
        p = self.p
        return FieldElement(self, tuple(x * c % p for x in a.coeffs))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self, self._mul(a.coeffs, b.coeffs))

    def _mul(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
        raise NotImplementedError

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        """a^e por quadrados sucessivos; expoentes negativos passam por inv"""
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return self.one
        if a.is_zero:
            return self.zero
        e = e % (self.order - 1) or (self.order - 1)
        result = self.one.coeffs
        base = a.coeffs
        while e:
            if e & 1:
                result = self._mul(result, base)
            e >>= 1
            if e:
                base = self._mul(base, base)
        return FieldElement(self, result)

    def inv(self, a: FieldElement) -> FieldElement:
        """Convenção x^{-1} = x^{Q-2}: inv(0) = 0"""
        if a.is_zero:
            return self.zero
        return self.pow(a, self.order - 2)

    def div(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.mul(a, self.inv(b))

    # ------------------------------------------------------------------
    # Frobenius e mapas F_p-lineares
    # ------------------------------------------------------------------
    def _frob_once(self, a: FieldElement) -> FieldElement:
        return self.pow(a, self.p)

    def _frobenius_columns(self, e: int) -> List[Tuple[int, ...]]:
        cols = self._frob_cols.get(e)
        if cols is None:
            cols = []
            for j in range(self.degree):
                v = FieldElement(self, tuple(1 if i == j else 0 for i in range(self.degree)))
                for _ in range(e):
                    v = self._frob_once(v)
                cols.append(v.coeffs)
            self._frob_cols[e] = cols
        return cols

    def frobenius(self, x: FieldElement, e: int = 1) -> FieldElement:
        """x^{p^e}, aplicando a matriz pré-computada da potência e"""
        if e < 0:
            raise FieldError("Expoente de Frobenius negativo")
        e %= self.degree
        if e == 0:
            return x
        cols = self._frobenius_columns(e)
        p = self.p
        out = [0] * self.degree
        for cj, col in zip(x.coeffs, cols):
            if cj:
                for i, v in enumerate(col):
                    out[i] += cj * v
        return FieldElement(self, tuple(v % p for v in out))

    def frobenius_matrix(self, e: int = 1) -> np.ndarray:
        """Matriz (linhas = coordenadas de saída) de x -> x^{p^e}"""
        e %= self.degree
        if e == 0:
            return np.eye(self.degree, dtype=np.int64)
        return np.array(self._frobenius_columns(e), dtype=np.int64).T

    def mul_matrix(self, c: FieldElement) -> np.ndarray:
        """Matriz de x -> c*x sobre F_p"""
        cols = []
        for j in range(self.degree):
            basis = tuple(1 if i == j else 0 for i in range(self.degree))
            cols.append(self._mul(c.coeffs, basis))
        return np.array(cols, dtype=np.int64).T

    def from_vector(self, vec: Sequence[int]) -> FieldElement:
        return FieldElement(self, tuple(int(v) % self.p for v in vec))

    def __repr__(self):
        return self.name


class FieldCtx(BaseFieldCtx):
    """F_{p^k} em base polinomial sobre F_p com módulo mônico irredutível"""

    def __init__(self, p: int, k: int, modulus: IntPoly):
        self.p = p
        self.k = k
        self.degree = k
        self.q = p ** k
        self.order = self.q
        self.modulus = tuple(modulus)
        self.name = f"F_{p}^{k}" if k > 1 else f"F_{p}"
        # X^j mod f para j em [k, 2k-2]
        self._reduction: List[Tuple[int, ...]] = []
        for j in range(k, 2 * k - 1):
            xj = _gf_rem([0] * j + [1], list(modulus), p)
            self._reduction.append(tuple(xj + [0] * (k - len(xj))))
        super().__init__()

    def _mul(self, a, b):
        k, p = self.k, self.p
        if k == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        out = prod[:k]
        for j, red in enumerate(self._reduction):
            c = prod[k + j] % p
            if c:
                for i in range(k):
                    out[i] += c * red[i]
        return tuple(v % p for v in out)

    @property
    def generator_x(self) -> FieldElement:
        """Classe de X no quociente (para k = 1, a raiz do módulo)"""
        if self.k == 1:
            return self.from_int(-self.modulus[0])
        return self.from_coeffs([0, 1])


class QuadExtCtx(BaseFieldCtx):
    """F_{q^2} = F_q(i), i^2 = d com d o primeiro não-resíduo de F_q"""

    def __init__(self, base: FieldCtx, d: FieldElement):
        if d.ctx is not base:
            raise FieldError("d deve pertencer ao corpo base")
        self.base = base
        self.p = base.p
        self.k = base.k
        self.q = base.q
        self.degree = 2 * base.k
        self.order = base.q ** 2
        self.d = d
        self.name = f"F_{base.p}^{self.degree}(i)"
        # i^p = i * d^{(p-1)/2}
        self._i_frob = base.pow(d, (base.p - 1) // 2)
        super().__init__()

    def split(self, x: FieldElement) -> Tuple[FieldElement, FieldElement]:
        k = self.k
        return FieldElement(self.base, x.coeffs[:k]), FieldElement(self.base, x.coeffs[k:])

    def join(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self, a.coeffs + b.coeffs)

    def lift(self, a: FieldElement) -> FieldElement:
        """Inclusão F_q -> F_{q^2}"""
        return FieldElement(self, a.coeffs + (0,) * self.k)

    def project(self, x: FieldElement) -> FieldElement:
        """Inverso de lift; exige x em F_q"""
        a, b = self.split(x)
        if not b.is_zero:
            raise FieldError(f"{x} nao pertence ao corpo base")
        return a

    def in_base(self, x: FieldElement) -> bool:
        return not any(x.coeffs[self.k:])

    @property
    def i(self) -> FieldElement:
        return self.join(self.base.zero, self.base.one)

    def _mul(self, a, b):
        k = self.k
        bm = self.base._mul
        a0, a1, b0, b1 = a[:k], a[k:], b[:k], b[k:]
        p = self.p
        t00 = bm(a0, b0)
        t11 = bm(bm(a1, b1), self.d.coeffs)
        t01 = bm(a0, b1)
        t10 = bm(a1, b0)
        return tuple((x + y) % p for x, y in zip(t00, t11)) + tuple((x + y) % p for x, y in zip(t01, t10))

    def inv(self, a: FieldElement) -> FieldElement:
        if a.is_zero:
            return self.zero
        base = self.base
        x, y = self.split(a)
        norm = x * x - self.d * y * y
        n_inv = base.inv(norm)
        return self.join(x * n_inv, -(y * n_inv))

    def _frob_once(self, a: FieldElement) -> FieldElement:
        x, y = self.split(a)
        return self.join(self.base.frobenius(x, 1), self.base.frobenius(y, 1) * self._i_frob)

    def conj(self, a: FieldElement) -> FieldElement:
        """Frobenius de ordem q: a + bi -> a - bi"""
        x, y = self.split(a)
        return self.join(x, -y)


# =============================================================================
# CONSTRUTORES (determinísticos e com cache)
# =============================================================================

@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> FieldCtx:
    """F_{p^k} com o menor módulo irredutível na ordem canônica"""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"{p} nao e primo")
    if k < 1:
        raise FieldError(f"Grau de extensao invalido: {k}")
    modulus = find_irreducible(p, k)
    logger.debug(f"Corpo F_{p}^{k} construido com modulo {modulus}")
    return FieldCtx(p, k, modulus)


def make_field_with_modulus(p: int, modulus: Sequence[int]) -> FieldCtx:
    """F_{p^k} com módulo explícito (coeficientes de grau baixo primeiro, mônico)"""
    if not is_prime(p):
        raise FieldError(f"{p} nao e primo")
    f = [int(c) % p for c in modulus]
    _gf_strip(f)
    if len(f) < 2 or f[-1] != 1:
        raise FieldError(f"Modulo {list(modulus)} deve ser monico de grau >= 1")
    if not is_irreducible_mod_p(f, p):
        raise FieldError(f"Modulo {list(modulus)} nao e irredutivel sobre F_{p}")
    return FieldCtx(p, len(f) - 1, f)


def is_primitive_modulus(ctx: FieldCtx) -> bool:
    """X gera o grupo multiplicativo de ctx"""
    return is_generator(ctx.generator_x)


@lru_cache(maxsize=None)
def make_quadratic_extension(base: FieldCtx) -> QuadExtCtx:
    """F_q(i) com d o primeiro não-resíduo quadrático na enumeração canônica de F_q"""
    if base.p == 2:
        raise FieldError("Extensao quadratica F_q(i) exige caracteristica impar")
    for d in base.elements():
        if quad_char(d) == -1:
            return QuadExtCtx(base, d)
    raise FieldError(f"Sem nao-residuo em {base}")


def arith(a: FieldElement, b: Optional[FieldElement], op: str, e: Optional[int] = None) -> FieldElement:
    """Despacho textual das operações de corpo (add, sub, mul, div, inv, pow)"""
    if b is not None and b.ctx is not a.ctx:
        raise FieldError("Elementos de contextos diferentes")
    ctx = a.ctx
    if op == "add":
        return ctx.add(a, b)
    if op == "sub":
        return ctx.sub(a, b)
    if op == "mul":
        return ctx.mul(a, b)
    if op == "div":
        return ctx.div(a, b)
    if op == "inv":
        return ctx.inv(a)
    if op == "pow":
        return ctx.pow(a, int(e))
    raise FieldError(f"Operacao desconhecida: {op}")


def frobenius(x: FieldElement, e: int = 1) -> FieldElement:
    return x.ctx.frobenius(x, e)


# =============================================================================
# TRAÇO, NORMA, CARÁTER QUADRÁTICO E RAÍZES QUADRADAS
# =============================================================================

def rel_trace(x: FieldElement) -> FieldElement:
    """Tr(x) = x^q + x de F_{q^2} para F_q (resultado ainda em F_{q^2})"""
    ctx = x.ctx
    if not isinstance(ctx, QuadExtCtx):
        raise FieldError("rel_trace exige um elemento de F_q(i)")
    return ctx.conj(x) + x


def rel_norm(a: FieldElement, n: int, ell: Optional[int] = None) -> FieldElement:
    """a^{(p^l - 1)/(p^d - 1)} com d = gcd(n, l)"""
    ell = ell or a.ctx.degree
    d = math.gcd(n, ell)
    p = a.ctx.p
    return a ** ((p ** ell - 1) // (p ** d - 1))


def quad_char(x: FieldElement) -> int:
    """η(x) em {-1, 0, 1}"""
    ctx = x.ctx
    if ctx.p == 2:
        raise FieldError("Carater quadratico indefinido em caracteristica 2")
    if x.is_zero:
        return 0
    return 1 if ctx.pow(x, (ctx.order - 1) // 2) == ctx.one else -1


@lru_cache(maxsize=None)
def _first_nonresidue(ctx: BaseFieldCtx) -> FieldElement:
    for z in ctx.elements():
        if quad_char(z) == -1:
            return z
    raise FieldError(f"Sem nao-residuo em {ctx}")


def sqrt(x: FieldElement) -> Optional[Tuple[FieldElement, FieldElement]]:
    """Tonelli-Shanks no grupo de ordem Q-1; raízes em ordem canônica"""
    ctx = x.ctx
    if ctx.p == 2:
        raise FieldError("sqrt exige caracteristica impar")
    if x.is_zero:
        return (x, x)
    if quad_char(x) != 1:
        return None
    qm1 = ctx.order - 1
    s, odd = 0, qm1
    while odd % 2 == 0:
        odd //= 2
        s += 1
    if s == 1:
        r = x ** ((ctx.order + 1) // 4)
    else:
        z = _first_nonresidue(ctx)
        c = z ** odd
        r = x ** ((odd + 1) // 2)
        t = x ** odd
        m = s
        while t != ctx.one:
            i, t2 = 0, t
            while t2 != ctx.one:
                t2 = t2 * t2
                i += 1
            b = c ** (2 ** (m - i - 1))
            r = r * b
            c = b * b
            t = t * c
            m = i
    roots = sorted({r, -r}, key=lambda e: e.coeffs)
    return (roots[0], roots[-1])


def is_generator(g: FieldElement) -> bool:
    ctx = g.ctx
    if g.is_zero:
        return False
    qm1 = ctx.order - 1
    return all(g ** (qm1 // r) != ctx.one for r in prime_divisors(qm1))


@lru_cache(maxsize=None)
def multiplicative_generator(ctx: BaseFieldCtx) -> FieldElement:
    """Primeiro gerador de F^* na ordem canônica"""
    for g in ctx.elements():
        if is_generator(g):
            return g
    raise FieldError(f"Sem gerador em {ctx}")


# =============================================================================
# RAÍZES DE POLINÔMIOS
# =============================================================================

def roots_in_field(f, ctx: Optional[BaseFieldCtx] = None, seed: Optional[int] = None) -> Set[FieldElement]:
    """
    Raízes de f no corpo dos seus coeficientes.

    Varredura vetorizada quando |ctx| <= EXHAUSTIVE_ROOT_LIMIT; caso contrário
    g = gcd(f, X^Q - X) seguido de divisão de grau igual (Cantor-Zassenhaus).
    """
    from app.services.polynomials import UniPoly

    ctx = ctx or f.ctx
    if f.ctx is not ctx:
        raise FieldError("Polinomio e corpo de busca diferentes")
    if f.is_zero:
        raise FieldError("roots_in_field exige polinomio nao nulo")
    if f.degree <= 0:
        return set()
    if f.degree == 1:
        c0, c1 = f.coeffs
        return {-(c0 / c1)}

    if ctx.order <= settings.EXHAUSTIVE_ROOT_LIMIT:
        from app.services.field_arrays import array_backend
        backend = array_backend(ctx)
        xs = backend.all_elements()
        values = backend.horner(f.coeffs, xs)
        hits = np.nonzero(backend.is_zero(values))[0]
        return {ctx.from_index(int(i)) for i in hits}

    x = UniPoly.x(ctx)
    xq = frobenius_power_of_x(f.monic(), ctx.degree)
    g = UniPoly.gcd(f, xq - x)
    rng = random.Random(settings.DEFAULT_SEED if seed is None else seed)
    return set(_split_linear(g, rng))


def frobenius_power_of_x(f, e: int):
    """X^{p^e} mod f usando (Σ c_j X^j)^p = Σ frob(c_j) X^{jp}"""
    from app.services.polynomials import UniPoly

    ctx = f.ctx
    x = UniPoly.x(ctx)
    xp = x.powmod(ctx.p, f)
    n = f.degree
    # H_j = X^{jp} mod f
    powers = [UniPoly.one(ctx)]
    for _ in range(1, n):
        powers.append((powers[-1] * xp) % f)
    cur = x % f
    for _ in range(e):
        acc = UniPoly.zero(ctx)
        for j, c in enumerate(cur.coeffs):
            if not c.is_zero:
                acc = acc + powers[j].scale(ctx.frobenius(c, 1))
        cur = acc % f
    return cur


def _split_linear(g, rng: random.Random) -> List[FieldElement]:
    """Fatora g, produto de lineares distintos, em raízes"""
    from app.services.polynomials import UniPoly

    if g.degree <= 0:
        return []
    if g.degree == 1:
        c0, c1 = g.coeffs
        return [-(c0 / c1)]
    ctx = g.ctx
    if ctx.p == 2:
        raise FieldError("Divisao de grau igual implementada apenas para p impar")
    exponent = (ctx.order - 1) // 2
    while True:
        r = ctx.random_element(rng)
        h = UniPoly(ctx, [r, ctx.one]).powmod(exponent, g) - UniPoly.one(ctx)
        d = UniPoly.gcd(g, h)
        if 0 < d.degree < g.degree:
            return _split_linear(d, rng) + _split_linear(g // d, rng)


# =============================================================================
# MERGULHOS ENTRE CORPOS
# =============================================================================

class Embedding:
    """Homomorfismo F_p-linear de src em dst dado pelas imagens da base"""

    def __init__(self, src: BaseFieldCtx, dst: BaseFieldCtx, images: List[FieldElement]):
        self.src = src
        self.dst = dst
        self.images = images
        self.matrix = np.array([im.coeffs for im in images], dtype=np.int64).T

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.ctx is not self.src:
            raise FieldError("Elemento fora do dominio do mergulho")
        p = self.dst.p
        out = [0] * self.dst.degree
        for c, im in zip(x.coeffs, self.images):
            if c:
                for i, v in enumerate(im.coeffs):
                    out[i] += c * v
        return FieldElement(self.dst, tuple(v % p for v in out))


@lru_cache(maxsize=None)
def embedding(src: BaseFieldCtx, dst: BaseFieldCtx) -> Embedding:
    """Mergulho determinístico de src em dst (exige grau de src dividindo grau de dst)"""
    from app.services.polynomials import UniPoly

    if src.p != dst.p or dst.degree % src.degree:
        raise FieldError(f"Nao ha mergulho de {src} em {dst}")
    if src is dst:
        return Embedding(src, dst, [src.from_coeffs([1 if i == j else 0 for i in range(src.degree)])
                                    for j in range(src.degree)])

    def base_images(field: FieldCtx) -> List[FieldElement]:
        if field.k == 1:
            return [dst.one]
        poly = UniPoly(dst, [dst.from_int(c) for c in field.modulus])
        root = min(roots_in_field(poly, dst), key=lambda e: e.coeffs)
        imgs = [dst.one]
        for _ in range(1, field.k):
            imgs.append(imgs[-1] * root)
        return imgs

    if isinstance(src, QuadExtCtx):
        base_map = Embedding(src.base, dst, base_images(src.base))
        d_img = base_map(src.d)
        roots = sqrt(d_img)
        if roots is None:
            raise FieldError(f"{dst} nao contem sqrt(d)")
        s = roots[0]
        images = list(base_map.images) + [im * s for im in base_map.images]
        return Embedding(src, dst, images)
    return Embedding(src, dst, base_images(src))
