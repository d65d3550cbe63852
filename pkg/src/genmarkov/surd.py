"""Exact real quadratic irrationals (p + q*sqrt(D)) / r.

Comparisons, floors and decimal expansions are decided with integer
arithmetic only (isolate the radical, square, track signs).
"""
from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence, Union

from sympy import factorint

from .errors import DomainError
from .seqcore import as_seq, partial_continuant, reverse

Number = Union[int, Fraction, "Surd"]

_TRIAL_LIMIT = 10_000
_FACTOR_LIMIT = 10**30


@functools.lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, m) with n == s*s*m and m squarefree.

    Radicands above 10**30 that survive trial division are only checked for
    being a perfect square; arithmetic still aligns mismatched radicands, so
    exactness never depends on this split being complete.
    """
    if n < 0:
        raise DomainError("negative radicand")
    if n == 0:
        return 0, 0
    s, m = 1, 1
    rest = n
    p = 2
    while p <= _TRIAL_LIMIT and p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        m *= p ** (e % 2)
        p += 1 if p == 2 else 2
    if rest > 1:
        r = isqrt(rest)
        if r * r == rest:
            s *= r
        elif rest < _FACTOR_LIMIT and rest > _TRIAL_LIMIT**2:
            for prime, e in factorint(rest).items():
                s *= prime ** (e // 2)
                m *= prime ** (e % 2)
        else:
            m *= rest
    return s, m


@functools.total_ordering
class Surd:
    """The real number (p + q*sqrt(D)) / r, normalised on construction."""

    __slots__ = ("p", "q", "D", "r")

    def __init__(self, p: int, q: int = 0, D: int = 0, r: int = 1):
        p, q, D, r = int(p), int(q), int(D), int(r)
        if r == 0:
            raise ZeroDivisionError("surd with zero denominator")
        if D < 0:
            raise DomainError("only real surds are supported")
        if q != 0 and D != 0:
            s, m = squarefree_split(D)
            q *= s
            D = m
            if D == 1:
                p, q, D = p + q, 0, 0
        if q == 0 or D == 0:
            q, D = 0, 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(p, q), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        self.p, self.q, self.D, self.r = p, q, D, r

    # -- construction helpers -------------------------------------------
    @classmethod
    def coerce(cls, x: Number) -> "Surd":
        if isinstance(x, Surd):
            return x
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, Fraction):
            return cls(x.numerator, 0, 0, x.denominator)
        raise TypeError(f"cannot convert {type(x).__name__} to Surd")

    @classmethod
    def sqrt(cls, n: int) -> "Surd":
        return cls(0, 1, n, 1)

    # -- inspection --------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError("irrational surd has no exact fraction")
        return Fraction(self.p, self.r)

    def conjugate(self) -> "Surd":
        return Surd(self.p, -self.q, self.D, self.r)

    def sign(self) -> int:
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        sq = 1 if q > 0 else -1
        if p == 0:
            return sq
        sp = 1 if p > 0 else -1
        if sp == sq:
            return sp
        return sp if p * p > q * q * self.D else sq

    # -- arithmetic --------------------------------------------------------
    def _aligned(self, other: "Surd") -> tuple["Surd", "Surd"]:
        if self.q == 0 or other.q == 0 or self.D == other.D:
            return self, other
        prod = self.D * other.D
        t = isqrt(prod)
        if t * t != prod:
            raise DomainError(
                f"incompatible radicands sqrt({self.D}) and sqrt({other.D})")
        # q*sqrt(D2) == q*t/D1 * sqrt(D1)
        o = other
        return self, _raw(o.p * self.D, o.q * t, self.D, o.r * self.D)

    def __add__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._aligned(other)
        D = a.D or b.D
        return Surd(a.p * b.r + b.p * a.r, a.q * b.r + b.q * a.r, D, a.r * b.r)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.D, self.r)

    def __sub__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Surd.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._aligned(other)
        D = a.D or b.D
        return Surd(a.p * b.p + a.q * b.q * D, a.p * b.q + a.q * b.p, D, a.r * b.r)

    __rmul__ = __mul__

    def recip(self) -> "Surd":
        norm = self.p * self.p - self.q * self.q * self.D
        if norm == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return Surd(self.r * self.p, -self.r * self.q, self.D, norm)

    def __truediv__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.recip()

    def __rtruediv__(self, other):
        return Surd.coerce(other) * self.recip()

    # -- ordering ----------------------------------------------------------
    def compare(self, other: Number) -> int:
        other = Surd.coerce(other)
        if self.q and other.q and self.D != other.D:
            prod = self.D * other.D
            if isqrt(prod) ** 2 != prod:
                return _cross_field_sign(self, other)
        return (self - other).sign()

    def __eq__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self.compare(other) == 0

    def __lt__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self.compare(other) < 0

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.D, self.r))

    def floor(self) -> int:
        if self.q == 0:
            return self.p // self.r
        t = isqrt(self.q * self.q * self.D)  # floor(|q| sqrt D), never exact
        if self.q > 0:
            return (self.p + t) // self.r
        return (self.p - t - 1) // self.r

    def __floor__(self):
        return self.floor()

    def __float__(self):
        return float(self.to_decimal(20))

    # -- rendering ---------------------------------------------------------
    def to_decimal(self, digits: int, rounding: str = "nearest") -> str:
        """Decimal string with ``digits`` places.

        ``rounding="nearest"`` rounds correctly (ties, possible only for
        rationals, go up); ``rounding="down"`` truncates toward zero.
        """
        if digits < 0 or digits > 10000:
            raise DomainError("digits must be in 0..10000")
        scaled = self * (10 ** digits)
        neg = self.sign() < 0
        if rounding == "nearest":
            n = (scaled + Fraction(1, 2)).floor() if not neg else -((-scaled + Fraction(1, 2)).floor())
        elif rounding == "down":
            n = scaled.floor() if not neg else -((-scaled).floor())
        else:
            raise DomainError(f"unknown rounding {rounding!r}")
        sign = "-" if n < 0 else ""
        n = abs(n)
        if digits == 0:
            return f"{sign}{n}"
        whole, frac = divmod(n, 10 ** digits)
        return f"{sign}{whole}.{frac:0{digits}d}"

    def __str__(self):
        if self.q == 0:
            return str(self.p) if self.r == 1 else f"{self.p}/{self.r}"
        rad = f"sqrt({self.D})" if abs(self.q) == 1 else f"{abs(self.q)}*sqrt({self.D})"
        if self.p == 0:
            num = rad if self.q > 0 else f"-{rad}"
            bare = True
        else:
            num = f"{self.p} {'+' if self.q > 0 else '-'} {rad}"
            bare = False
        if self.r == 1:
            return num
        return f"{num}/{self.r}" if bare and self.q > 0 else f"({num})/{self.r}"

    def __repr__(self):
        return f"Surd({self.p}, {self.q}, {self.D}, {self.r})"


def _raw(p, q, D, r) -> Surd:
    # bypass radicand splitting when D is already the target radicand
    s = Surd.__new__(Surd)
    if r < 0:
        p, q, r = -p, -q, -r
    g = gcd(gcd(p, q), r)
    s.p, s.q, s.D, s.r = p // g, q // g, D, r // g
    return s


def _cross_field_sign(x: Surd, y: Surd) -> int:
    """sign(x - y) for surds over unrelated radicands."""
    # r_x r_y (x - y) = X - Y with X = u + v sqrt(m), Y = w sqrt(n)
    X = Surd(x.p * y.r - y.p * x.r, x.q * y.r, x.D)
    w, n = y.q * x.r, y.D
    sx, sy = X.sign(), (1 if w > 0 else -1)
    if sx == 0:
        return -sy
    if sx == -sy:
        return sx
    # same signs: compare X^2 with w^2 n
    diff = X * X - w * w * n
    return sx * diff.sign()


def arith(a: Number, op: str, b: Number | None = None) -> Surd:
    """Dispatch form of the arithmetic operators: add, sub, mul, div, neg, recip."""
    a = Surd.coerce(a)
    if op == "neg":
        return -a
    if op == "recip":
        return a.recip()
    b = Surd.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise DomainError(f"unknown operation {op!r}")


def compare(a: Number, b: Number) -> int:
    return Surd.coerce(a).compare(b)


# ---------------------------------------------------------------------------
# periodic continued fractions
# ---------------------------------------------------------------------------

def periodic_cf_quadratic(period: Sequence[int]) -> tuple[int, int, int]:
    """Integer coefficients (A, B, C) of A x^2 + B x + C = 0 solved by [<period>]."""
    s = as_seq(period, allow_empty=False)
    n = len(s)
    k1n = partial_continuant(s, 1, n)
    k1n1 = partial_continuant(s, 1, n - 1)
    k2n = partial_continuant(s, 2, n)
    k2n1 = partial_continuant(s, 2, n - 1)
    return k2n, k2n1 - k1n, -k1n1


def periodic_cf_value(period: Sequence[int]) -> Surd:
    """[<a_1; a_2, ..., a_n>], the root > 1 of its defining quadratic."""
    A, B, C = periodic_cf_quadratic(period)
    disc = B * B - 4 * A * C
    return Surd(-B, 1, disc, 2 * A)


def neg_periodic_tail(period: Sequence[int]) -> Surd:
    """-[0; <a_n, ..., a_1>], which lies in (-1, 0)."""
    return -periodic_cf_value(reverse(as_seq(period, allow_empty=False))).recip()


def surd_to_cf(x: Surd, terms: int) -> tuple[int, ...]:
    """First ``terms`` continued-fraction elements of x (stops early at a rational end)."""
    out = []
    for _ in range(terms):
        a = x.floor()
        out.append(a)
        frac = x - a
        if frac.sign() == 0:
            break
        x = frac.recip()
    return tuple(out)
