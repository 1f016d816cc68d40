"""Exact integer polynomials and real-root isolation by Sturm sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _strip(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _primitive_from_rational(coeffs: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling of a rational coefficient list to coprime integers."""
    c = _strip(coeffs)
    if not c:
        return ()
    den = 1
    for x in c:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in c]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints)


def _divmod(a: Sequence[Number], b: Sequence[Number]) -> tuple[list[Fraction], list[Fraction]]:
    a = [Fraction(x) for x in a]
    b = _strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db, lb = len(b) - 1, Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - db, 1)
    while len(_strip(a)) - 1 >= db and _strip(a):
        a = list(_strip(a))
        shift = len(a) - 1 - db
        f = a[-1] / lb
        q[shift] = f
        for i, x in enumerate(b):
            a[i + shift] -= f * x
    return q, list(_strip(a))


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of x**i."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = _strip(self.coeffs)
        if any(not isinstance(x, int) for x in c):
            raise TypeError("IntPolynomial coefficients must be int")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        o = other.coeffs if isinstance(other, IntPolynomial) else (other,)
        n = max(len(self.coeffs), len(o))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o + (0,) * (n - len(o))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        o = other if isinstance(other, IntPolynomial) else IntPolynomial((other,))
        return self + (-o)

    def __rsub__(self, other: int) -> "IntPolynomial":
        return IntPolynomial((other,)) - self

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if not isinstance(other, IntPolynomial):
            return IntPolynomial(tuple(x * other for x in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def primitive(self) -> "IntPolynomial":
        """Divide out the content; leading coefficient made positive."""
        c = _primitive_from_rational(self.coeffs)
        if c and c[-1] < 0:
            c = tuple(-x for x in c)
        return IntPolynomial(c)

    def divides_exactly(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient self / other over Q, rescaled to a primitive integer polynomial."""
        q, r = _divmod(self.coeffs, other.coeffs)
        if r:
            raise ValueError("division is not exact")
        return IntPolynomial(_primitive_from_rational(q))

    def gcd(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.primitive(), other.primitive()
        while b:
            _, r = _divmod(a.coeffs, b.coeffs)
            a, b = b, IntPolynomial(_primitive_from_rational(r))
        return a.primitive()

    def squarefree(self) -> "IntPolynomial":
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self.primitive()
        return self.divides_exactly(g).primitive()

    def sign_at(self, num: int, den: int = 1) -> int:
        """Sign of p(num/den) for den > 0, in integer arithmetic."""
        if not self.coeffs:
            return 0
        # Homogeneous Horner: sum c_i num^i den^(d-i).
        acc = self.coeffs[-1]
        dpow = 1
        for c in reversed(self.coeffs[:-1]):
            dpow *= den
            acc = acc * num + c * dpow
        return (acc > 0) - (acc < 0)

    @cached_property
    def sturm_chain(self) -> tuple["IntPolynomial", ...]:
        """Sturm sequence of the square-free part, each term rescaled positively."""
        p0 = self.squarefree()
        if p0.degree <= 0:
            return (p0,)
        chain = [p0, p0.derivative()]
        while chain[-1].degree > 0:
            _, r = _divmod(chain[-2].coeffs, chain[-1].coeffs)
            if not r:
                break
            chain.append(-IntPolynomial(_primitive_from_rational(r)))
        return tuple(chain)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and i) else str(mag)
            var = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body + var))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s


def sign(p: IntPolynomial, x: Number) -> int:
    """Exact sign of p(x) at a rational point."""
    x = Fraction(x)
    return p.sign_at(x.numerator, x.denominator)


def _variations(chain: Sequence[IntPolynomial], x: Fraction | None, at_minus_inf: bool = False) -> int:
    signs = []
    for q in chain:
        if x is None:
            s = 1 if q.leading > 0 else -1
            if at_minus_inf and q.degree % 2:
                s = -s
        else:
            s = sign(q, x)
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: IntPolynomial, lo: Number | None = None, hi: Number | None = None) -> int:
    """Number of distinct real roots in (lo, hi]; ``None`` means infinite."""
    chain = p.sturm_chain
    if chain[0].degree <= 0:
        return 0
    va = _variations(chain, None if lo is None else Fraction(lo), at_minus_inf=True)
    vb = _variations(chain, None if hi is None else Fraction(hi))
    return va - vb


def root_bound(p: IntPolynomial) -> int:
    """Cauchy bound: every real root lies in [-B, B]."""
    lead = abs(p.leading)
    return 1 + max((abs(c) + lead - 1) // lead for c in p.coeffs[:-1]) if p.degree > 0 else 1


@dataclass(frozen=True)
class RootInterval:
    """A real root r of ``poly`` known to lie in (lo, hi] (or equal lo == hi)."""

    poly: IntPolynomial
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def to_decimal(self, digits: int = 30) -> str:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            m = self.midpoint
            d = Decimal(m.numerator) / Decimal(m.denominator)
            return format(d.quantize(Decimal(1).scaleb(-digits)), "f")

    def refine(self, width: Number) -> "RootInterval":
        """Bisect (by Sturm counts) until the width is at most ``width``."""
        lo, hi = self.lo, self.hi
        if lo == hi:
            return self
        q = self.poly.sturm_chain[0]
        while hi - lo > width:
            mid = (lo + hi) / 2
            if count_roots(q, mid, hi) >= 1:
                lo = mid
            else:
                hi = mid
        if sign(q, hi) == 0:
            return RootInterval(self.poly, hi, hi)
        return RootInterval(self.poly, lo, hi)


DEFAULT_PRECISION = Fraction(1, 10 ** 30)


def isolate_largest_root(p: IntPolynomial) -> RootInterval:
    """Interval (lo, hi] holding the largest real root and no other root."""
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    b = root_bound(p)
    lo, hi = Fraction(-b), Fraction(b)
    if count_roots(p, lo, hi) == 0:
        raise ValueError(f"no real root of {p} in [-{b}, {b}]")
    while count_roots(p, lo, hi) > 1:
        mid = (lo + hi) / 2
        if count_roots(p, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return RootInterval(p, lo, hi)


def largest_real_root(p: IntPolynomial, prec: Number = DEFAULT_PRECISION) -> RootInterval:
    """Largest real root of ``p`` to interval width ``prec``."""
    return isolate_largest_root(p).refine(Fraction(prec))


def compare_largest_roots(p1: IntPolynomial, p2: IntPolynomial) -> int:
    """Exact sign of (largest root of p1) - (largest root of p2)."""
    r1, r2 = isolate_largest_root(p1), isolate_largest_root(p2)
    g = p1.gcd(p2)
    if g.degree >= 1 and count_roots(g) > 0:
        # Equal largest roots must be the largest common root.
        rg = isolate_largest_root(g)
        while count_roots(p1, rg.lo, rg.hi) > 1 or count_roots(p2, rg.lo, rg.hi) > 1:
            rg = rg.refine(rg.width / 2)
        if count_roots(p1, rg.hi) == 0 and count_roots(p2, rg.hi) == 0:
            return 0
    # Distinct roots: shrink the closed hulls [lo, hi] until they separate.
    width = max(r1.width, r2.width)
    while True:
        if r1.hi < r2.lo:
            return -1
        if r2.hi < r1.lo:
            return 1
        width /= 4
        r1, r2 = r1.refine(width), r2.refine(width)


def char_poly_exact(matrix: Sequence[Sequence[int]], max_dim: int = 16) -> IntPolynomial:
    """det(xI - M) for an integer matrix by the Faddeev-LeVerrier recurrence."""
    n = len(matrix)
    if n > max_dim:
        raise ValueError(f"dimension {n} exceeds cap {max_dim}")
    a = [[int(x) for x in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prev = m
        m = [[sum(a[i][t] * prev[t][j] for t in range(n) if a[i][t]) for j in range(n)] for i in range(n)]
        c = coeffs[n - k + 1]
        for i in range(n):
            m[i][i] += c
        tr = sum(a[i][t] * m[t][i] for i in range(n) for t in range(n) if a[i][t])
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[n - k] = -tr // k
    return IntPolynomial(tuple(coeffs))
