"""
Camada vetorizada (numpy) sobre corpos inteiros

Lotes de elementos são arrays de índices canônicos (FlatArrays) ou pares de
arrays de índices do corpo base (QuadArrays, a + b i). A multiplicação usa
tabelas de logaritmo/exponencial de um gerador; a soma usa a tabela de dígitos.
"""
import logging
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import numpy as np

from config import settings
from app.services.ffcore import (
    BaseFieldCtx,
    FieldCtx,
    FieldElement,
    QuadExtCtx,
    multiplicative_generator,
)
from app.utils.errors import BudgetExceeded, FieldError

logger = logging.getLogger(__name__)

QuadBatch = Tuple[np.ndarray, np.ndarray]


class FlatArrays:
    """Tabelas de log/exp e dígitos para F_{p^k} com |F| <= FIELD_TABLE_LIMIT"""

    def __init__(self, ctx: FieldCtx):
        if ctx.order > settings.FIELD_TABLE_LIMIT:
            raise BudgetExceeded(f"{ctx} excede FIELD_TABLE_LIMIT={settings.FIELD_TABLE_LIMIT}")
        self.ctx = ctx
        self.p = ctx.p
        self.n = ctx.degree
        self.size = ctx.order
        q, p, n = self.size, self.p, self.n

        idx = np.arange(q, dtype=np.int64)
        self.weights = np.array([p ** (n - 1 - j) for j in range(n)], dtype=np.int64)
        self.digits = np.stack([(idx // w) % p for w in self.weights], axis=1).astype(np.int64)

        # exp[t] = índice de g^t, por duplicação de blocos
        g = multiplicative_generator(ctx)
        exp = np.empty(q - 1, dtype=np.int64)
        block = np.array([ctx.one.coeffs], dtype=np.int64)
        filled = 1
        exp[0] = ctx.index(ctx.one)
        while filled < q - 1:
            step = ctx.mul_matrix(g ** filled)
            nxt = (block @ step.T) % p
            take = min(filled, q - 1 - filled)
            exp[filled:filled + take] = nxt[:take] @ self.weights
            block = np.concatenate([block, nxt[:take]], axis=0)
            filled += take
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        self.exp = exp
        self.log = log
        self.generator = g
        logger.debug(f"Tabelas de {ctx} construidas (gerador {g})")

    # ------------------------------------------------------------------
    def all_elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def constant(self, x: FieldElement, shape) -> np.ndarray:
        return np.full(shape, self.ctx.index(x), dtype=np.int64)

    def to_elements(self, batch: np.ndarray) -> List[FieldElement]:
        return [self.ctx.from_index(int(i)) for i in np.asarray(batch).ravel()]

    def index(self, batch: np.ndarray) -> np.ndarray:
        return batch

    def is_zero(self, batch: np.ndarray) -> np.ndarray:
        return batch == 0

    # ------------------------------------------------------------------
    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.weights

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return ((self.digits[a] - self.digits[b]) % self.p) @ self.weights

    def neg(self, a: np.ndarray) -> np.ndarray:
        return ((-self.digits[a]) % self.p) @ self.weights

    def scale_int(self, a: np.ndarray, c: int) -> np.ndarray:
        return ((self.digits[a] * (c % self.p)) % self.p) @ self.weights

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = self.exp[(self.log[a] + self.log[b]) % (self.size - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a: np.ndarray) -> np.ndarray:
        out = self.exp[(-self.log[a]) % (self.size - 1)]
        return np.where(a == 0, 0, out)

    def pow_int(self, a: np.ndarray, e: int) -> np.ndarray:
        if e == 0:
            return np.full_like(a, self.ctx.index(self.ctx.one))
        if e < 0:
            return self.pow_int(self.inv(a), -e)
        out = self.exp[(self.log[a] * (e % (self.size - 1))) % (self.size - 1)]
        return np.where(a == 0, 0, out)

    def frobenius(self, a: np.ndarray, e: int = 1) -> np.ndarray:
        shift = pow(self.p, e % self.n, self.size - 1)
        out = self.exp[(self.log[a] * shift) % (self.size - 1)]
        return np.where(a == 0, 0, out)

    def quad_char(self, a: np.ndarray) -> np.ndarray:
        """η por paridade do logaritmo discreto (o gerador não é quadrado)"""
        if self.p == 2:
            raise FieldError("Carater quadratico indefinido em caracteristica 2")
        return np.where(a == 0, 0, np.where(self.log[a] % 2 == 0, 1, -1))

    def horner(self, coeffs: Sequence[FieldElement], xs: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(xs)
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, xs), self.ctx.index(c))
        return acc


class QuadArrays:
    """Lotes a + b i em F_q(i) usando as tabelas do corpo base"""

    def __init__(self, ctx: QuadExtCtx):
        self.ctx = ctx
        self.base = flat_arrays(ctx.base)
        self.q = ctx.q
        self.d = ctx.base.index(ctx.d)
        self.i_frob = ctx.base.index(ctx._i_frob)

    def all_elements(self) -> QuadBatch:
        """Ordem canônica: índice = a * q + b"""
        q = self.q
        r = np.arange(q, dtype=np.int64)
        return np.repeat(r, q), np.tile(r, q)

    def from_indices(self, idx: np.ndarray) -> QuadBatch:
        idx = np.asarray(idx, dtype=np.int64)
        return idx // self.q, idx % self.q

    def constant(self, x: FieldElement, shape) -> QuadBatch:
        a, b = self.ctx.split(x)
        return (np.full(shape, self.ctx.base.index(a), dtype=np.int64),
                np.full(shape, self.ctx.base.index(b), dtype=np.int64))

    def lift(self, a: np.ndarray) -> QuadBatch:
        return a, np.zeros_like(a)

    def to_elements(self, batch: QuadBatch) -> List[FieldElement]:
        return [self.ctx.from_index(int(i)) for i in self.index(batch).ravel()]

    def index(self, batch: QuadBatch) -> np.ndarray:
        return batch[0] * self.q + batch[1]

    def is_zero(self, batch: QuadBatch) -> np.ndarray:
        return (batch[0] == 0) & (batch[1] == 0)

    # ------------------------------------------------------------------
    def add(self, x: QuadBatch, y: QuadBatch) -> QuadBatch:
        B = self.base
        return B.add(x[0], y[0]), B.add(x[1], y[1])

    def sub(self, x: QuadBatch, y: QuadBatch) -> QuadBatch:
        B = self.base
        return B.sub(x[0], y[0]), B.sub(x[1], y[1])

    def neg(self, x: QuadBatch) -> QuadBatch:
        return self.base.neg(x[0]), self.base.neg(x[1])

    def mul(self, x: QuadBatch, y: QuadBatch) -> QuadBatch:
        B = self.base
        re = B.add(B.mul(x[0], y[0]), B.mul(B.mul(x[1], y[1]), self.d))
        im = B.add(B.mul(x[0], y[1]), B.mul(x[1], y[0]))
        return re, im

    def conj(self, x: QuadBatch) -> QuadBatch:
        return x[0], self.base.neg(x[1])

    def inv(self, x: QuadBatch) -> QuadBatch:
        B = self.base
        norm = B.sub(B.mul(x[0], x[0]), B.mul(B.mul(x[1], x[1]), self.d))
        n_inv = B.inv(norm)
        return B.mul(x[0], n_inv), B.neg(B.mul(x[1], n_inv))

    def frobenius(self, x: QuadBatch, e: int = 1) -> QuadBatch:
        e %= self.ctx.degree
        a, b = x
        for _ in range(e):
            a, b = self.base.frobenius(a, 1), self.base.mul(self.base.frobenius(b, 1), self.i_frob)
        return a, b

    def pow_int(self, x: QuadBatch, e: int) -> QuadBatch:
        if e < 0:
            return self.pow_int(self.inv(x), -e)
        one = self.ctx.base.index(self.ctx.base.one)
        result = (np.full_like(x[0], one), np.zeros_like(x[0]))
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def horner(self, coeffs: Sequence[FieldElement], xs: QuadBatch) -> QuadBatch:
        acc = (np.zeros_like(xs[0]), np.zeros_like(xs[0]))
        for c in reversed(coeffs):
            a, b = self.ctx.split(c)
            acc = self.mul(acc, xs)
            acc = (self.base.add(acc[0], self.ctx.base.index(a)), self.base.add(acc[1], self.ctx.base.index(b)))
        return acc


@lru_cache(maxsize=None)
def flat_arrays(ctx: FieldCtx) -> FlatArrays:
    return FlatArrays(ctx)


@lru_cache(maxsize=None)
def quad_arrays(ctx: QuadExtCtx) -> QuadArrays:
    return QuadArrays(ctx)


def array_backend(ctx: BaseFieldCtx) -> Union[FlatArrays, QuadArrays]:
    if isinstance(ctx, QuadExtCtx):
        return quad_arrays(ctx)
    return flat_arrays(ctx)


def coordinate_grid(p: int, n: int) -> np.ndarray:
    """Todos os vetores de F_p^n em ordem canônica, uma linha por elemento"""
    size = p ** n
    idx = np.arange(size, dtype=np.int64)
    return np.stack([(idx // p ** (n - 1 - j)) % p for j in range(n)], axis=1)


# =============================================================================
# POLINÔMIOS EM LOTE (uma linha por polinômio, grau baixo primeiro)
# =============================================================================

def batch_degrees(M: np.ndarray) -> np.ndarray:
    """Grau de cada linha (-1 para a linha nula)"""
    nz = M != 0
    width = M.shape[1]
    last = width - 1 - np.argmax(nz[:, ::-1], axis=1)
    return np.where(nz.any(axis=1), last, -1)


def batch_reduce(F: FlatArrays, C: np.ndarray, G: np.ndarray) -> np.ndarray:
    """C mod G com G mônico de grau n em todas as linhas; devolve largura n"""
    n = G.shape[1] - 1
    C = C.copy()
    for t in range(C.shape[1] - 1, n - 1, -1):
        c = C[:, t]
        if not c.any():
            continue
        C[:, t - n:t] = F.sub(C[:, t - n:t], F.mul(c[:, None], G[:, :n]))
        C[:, t] = 0
    out = np.zeros((C.shape[0], n), dtype=np.int64)
    w = min(n, C.shape[1])
    out[:, :w] = C[:, :w]
    return out


def batch_mulmod(F: FlatArrays, A: np.ndarray, B: np.ndarray, G: np.ndarray) -> np.ndarray:
    n = A.shape[1]
    C = np.zeros((A.shape[0], 2 * n - 1), dtype=np.int64)
    for i in range(n):
        a = A[:, i:i + 1]
        if not a.any():
            continue
        C[:, i:i + n] = F.add(C[:, i:i + n], F.mul(a, B))
    return batch_reduce(F, C, G)


def batch_powmod_x(F: FlatArrays, e: int, G: np.ndarray) -> np.ndarray:
    """X^e mod G linha a linha"""
    N, n = G.shape[0], G.shape[1] - 1
    one = F.ctx.index(F.ctx.one)
    x = np.zeros((N, max(2, n)), dtype=np.int64)
    x[:, 1] = one
    base = batch_reduce(F, x, G)
    result = np.zeros((N, n), dtype=np.int64)
    result[:, 0] = one
    while e:
        if e & 1:
            result = batch_mulmod(F, result, base, G)
        e >>= 1
        if e:
            base = batch_mulmod(F, base, base, G)
    return result


def batch_make_monic(F: FlatArrays, M: np.ndarray) -> np.ndarray:
    """Divide cada linha pelo coeficiente líder (linhas de mesmo grau, largura grau+1)"""
    lead = F.inv(M[:, -1])
    return F.mul(M, lead[:, None])


def batch_gcd_degree(F: FlatArrays, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Grau de gcd(A, B) por linha, via Euclides simultâneo"""
    width = max(A.shape[1], B.shape[1])
    A2 = np.zeros((A.shape[0], width), dtype=np.int64)
    B2 = np.zeros_like(A2)
    A2[:, :A.shape[1]] = A
    B2[:, :B.shape[1]] = B
    A, B = A2, B2
    dA, dB = batch_degrees(A), batch_degrees(B)
    while True:
        swap = (dB >= 0) & (dA < dB)
        if swap.any():
            tmp = A[swap].copy()
            A[swap] = B[swap]
            B[swap] = tmp
            dA[swap], dB[swap] = dB[swap], dA[swap].copy()
        rows = np.nonzero(dB >= 0)[0]
        if rows.size == 0:
            return dA
        shift = dA[rows] - dB[rows]
        c = F.mul(A[rows, dA[rows]], F.inv(B[rows, dB[rows]]))
        for j in range(width):
            tgt = j + shift
            ok = (tgt < width) & (B[rows, j] != 0)
            if not ok.any():
                continue
            r, t = rows[ok], tgt[ok]
            A[r, t] = F.sub(A[r, t], F.mul(c[ok], B[r, j]))
        dA[rows] = batch_degrees(A[rows])
