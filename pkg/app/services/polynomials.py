"""
Polinômios densos univariados e esparsos bivariados sobre um corpo finito
"""
import logging
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from app.services.ffcore import BaseFieldCtx, FieldElement
from app.utils.errors import FieldError

logger = logging.getLogger(__name__)


class UniPoly:
    """Coeficientes de grau baixo primeiro, zeros finais removidos"""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: BaseFieldCtx, coeffs: Sequence[FieldElement]):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        self.ctx = ctx
        self.coeffs: Tuple[FieldElement, ...] = tuple(coeffs)

    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, ctx: BaseFieldCtx) -> "UniPoly":
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx: BaseFieldCtx) -> "UniPoly":
        return cls(ctx, [ctx.one])

    @classmethod
    def x(cls, ctx: BaseFieldCtx) -> "UniPoly":
        return cls(ctx, [ctx.zero, ctx.one])

    @classmethod
    def monomial(cls, ctx: BaseFieldCtx, degree: int, coeff: Optional[FieldElement] = None) -> "UniPoly":
        return cls(ctx, [ctx.zero] * degree + [coeff if coeff is not None else ctx.one])

    @classmethod
    def from_ints(cls, ctx: BaseFieldCtx, values: Iterable[int]) -> "UniPoly":
        return cls(ctx, [ctx.from_int(v) for v in values])

    @classmethod
    def from_roots(cls, ctx: BaseFieldCtx, roots: Iterable[FieldElement]) -> "UniPoly":
        out = cls.one(ctx)
        for r in roots:
            out = out * cls(ctx, [-r, ctx.one])
        return out

    # ------------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.ctx.zero

    def coeff(self, j: int) -> FieldElement:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else self.ctx.zero

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __repr__(self):
        return f"UniPoly({[c.coeffs for c in self.coeffs]})"

    # ------------------------------------------------------------------
    def _check(self, other: "UniPoly"):
        if other.ctx is not self.ctx:
            raise FieldError("Polinomios de contextos diferentes")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ctx, [self.coeff(j) + other.coeff(j) for j in range(n)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ctx, [self.coeff(j) - other.coeff(j) for j in range(n)])

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.ctx, [-c for c in self.coeffs])

    def scale(self, c: FieldElement) -> "UniPoly":
        return UniPoly(self.ctx, [a * c for a in self.coeffs])

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, FieldElement):
            return self.scale(other)
        self._check(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(self.ctx)
        ctx = self.ctx
        out = [ctx.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(ctx, out)

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        self._check(other)
        if other.is_zero:
            raise FieldError("Divisao por polinomio nulo")
        ctx = self.ctx
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly.zero(ctx), self
        quot = [ctx.zero] * (dq + 1)
        inv_lc = ctx.inv(other.leading)
        dg = other.degree
        for shift in range(dq, -1, -1):
            c = rem[shift + dg] * inv_lc
            quot[shift] = c
            if c.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - c * b
        return UniPoly(ctx, quot), UniPoly(ctx, rem[:dg])

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self.scale(self.ctx.inv(self.leading))

    @staticmethod
    def gcd(f: "UniPoly", g: "UniPoly") -> "UniPoly":
        """MDC mônico"""
        while not g.is_zero:
            f, g = g, f % g
        return f.monic()

    def powmod(self, e: int, m: "UniPoly") -> "UniPoly":
        """self^e mod m por quadrados sucessivos"""
        if m.is_zero:
            raise FieldError("Modulo nulo em powmod")
        result = UniPoly.one(self.ctx) % m
        base = self % m
        while e > 0:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(self.ctx, [c * j for j, c in enumerate(self.coeffs)][1:])

    def map_coeffs(self, fn: Callable[[FieldElement], FieldElement], ctx: Optional[BaseFieldCtx] = None) -> "UniPoly":
        return UniPoly(ctx or self.ctx, [fn(c) for c in self.coeffs])


def poly_powmod(base: UniPoly, e: int, m: UniPoly) -> UniPoly:
    return base.powmod(e, m)


class BiPoly:
    """Mapa esparso (i, j) -> coeficiente não nulo de X^i Y^j"""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: BaseFieldCtx, terms: Optional[Dict[Tuple[int, int], FieldElement]] = None):
        self.ctx = ctx
        self.terms: Dict[Tuple[int, int], FieldElement] = {
            key: c for key, c in (terms or {}).items() if not c.is_zero
        }

    @classmethod
    def monomial(cls, ctx: BaseFieldCtx, i: int, j: int, coeff: Optional[FieldElement] = None) -> "BiPoly":
        return cls(ctx, {(i, j): coeff if coeff is not None else ctx.one})

    @classmethod
    def from_x(cls, poly: UniPoly) -> "BiPoly":
        return cls(poly.ctx, {(i, 0): c for i, c in enumerate(poly.coeffs)})

    @classmethod
    def from_y(cls, poly: UniPoly) -> "BiPoly":
        return cls(poly.ctx, {(0, j): c for j, c in enumerate(poly.coeffs)})

    # ------------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __repr__(self):
        return f"BiPoly({len(self.terms)} termos, grau {self.total_degree})"

    # ------------------------------------------------------------------
    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out[key] + c if key in out else c
        return BiPoly(self.ctx, out)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.ctx, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def scale(self, c: FieldElement) -> "BiPoly":
        return BiPoly(self.ctx, {key: v * c for key, v in self.terms.items()})

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, FieldElement):
            return self.scale(other)
        out: Dict[Tuple[int, int], FieldElement] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out[key] + a * b if key in out else a * b
        return BiPoly(self.ctx, out)

    def swap(self) -> "BiPoly":
        """F(Y, X)"""
        return BiPoly(self.ctx, {(j, i): c for (i, j), c in self.terms.items()})

    def __call__(self, x: FieldElement, y: FieldElement) -> FieldElement:
        ctx = self.ctx
        acc = ctx.zero
        xp: Dict[int, FieldElement] = {}
        yp: Dict[int, FieldElement] = {}
        for (i, j), c in self.terms.items():
            if i not in xp:
                xp[i] = x ** i
            if j not in yp:
                yp[j] = y ** j
            acc = acc + c * xp[i] * yp[j]
        return acc

    def coeff_polys_in_y(self) -> List[UniPoly]:
        """Lista c_j(X) com F = Σ_j c_j(X) Y^j"""
        ctx = self.ctx
        dy = self.degree_y
        buckets: List[Dict[int, FieldElement]] = [dict() for _ in range(dy + 1)]
        for (i, j), c in self.terms.items():
            buckets[j][i] = c
        out = []
        for b in buckets:
            dx = max(b, default=-1)
            out.append(UniPoly(ctx, [b.get(i, ctx.zero) for i in range(dx + 1)]))
        return out

    def at_x(self, x: FieldElement) -> UniPoly:
        """F(x, Y) como polinômio em Y"""
        return UniPoly(self.ctx, [c(x) for c in self.coeff_polys_in_y()])

    def at_y(self, y: FieldElement) -> UniPoly:
        """F(X, y) como polinômio em X"""
        return self.swap().at_x(y)

    def diagonal(self) -> UniPoly:
        """F(X, X)"""
        ctx = self.ctx
        n = self.total_degree
        coeffs = [ctx.zero] * (n + 1)
        for (i, j), c in self.terms.items():
            coeffs[i + j] = coeffs[i + j] + c
        return UniPoly(ctx, coeffs)

    def divide_by_x_minus_y(self) -> Tuple["BiPoly", "BiPoly"]:
        """
        Divisão sintética em X por (X - Y): F = Q (X - Y) + R(Y).
        Devolve (Q, R); R deve ser nulo quando X - Y divide F.
        """
        ctx = self.ctx
        dx = self.degree_x
        if dx < 0:
            return BiPoly(ctx), BiPoly(ctx)
        # coeficientes em X como polinômios em Y
        rows: List[Dict[int, FieldElement]] = [dict() for _ in range(dx + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        quotient: Dict[Tuple[int, int], FieldElement] = {}
        carry: Dict[int, FieldElement] = {}
        # Q_{i-1} = c_i + Y Q_i, de cima para baixo
        for i in range(dx, 0, -1):
            cur = dict(rows[i])
            for j, c in carry.items():
                key = j + 1
                cur[key] = cur[key] + c if key in cur else c
            cur = {j: c for j, c in cur.items() if not c.is_zero}
            for j, c in cur.items():
                quotient[(i - 1, j)] = c
            carry = cur
        remainder = dict(rows[0])
        for j, c in carry.items():
            key = j + 1
            remainder[key] = remainder[key] + c if key in remainder else c
        return BiPoly(ctx, quotient), BiPoly(ctx, {(0, j): c for j, c in remainder.items()})

    def map_coeffs(self, fn: Callable[[FieldElement], FieldElement], ctx: Optional[BaseFieldCtx] = None) -> "BiPoly":
        return BiPoly(ctx or self.ctx, {key: fn(c) for key, c in self.terms.items()})

    def derivative_x(self) -> "BiPoly":
        return BiPoly(self.ctx, {(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def derivative_y(self) -> "BiPoly":
        return BiPoly(self.ctx, {(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

