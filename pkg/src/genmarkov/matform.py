"""Reduced matrices, associated forms and their spectrum values.

Matrices follow the display ((a, c), (b, d)): upper row a c, lower row b d,
so for a sequence the lower-left entry b is the breve continuant.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from sympy import factorint

from .errors import DomainError
from .seqcore import Seq, _require_even, as_seq, continuant, partial_continuant, rational_to_cf
from .surd import Surd


@dataclass(frozen=True)
class Mat2:
    a: int
    c: int
    b: int
    d: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise DomainError(f"matrix determinant must be +-1, got {self.det}")

    @property
    def det(self) -> int:
        return self.a * self.d - self.c * self.b

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.c * o.b, self.a * o.c + self.c * o.d,
                    self.b * o.a + self.d * o.b, self.b * o.c + self.d * o.d)

    def apply(self, x: int, y: int) -> tuple[int, int]:
        """Action on the column vector (x, y)."""
        return self.a * x + self.c * y, self.b * x + self.d * y

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.c), (self.b, self.d)

    def to_json(self) -> list:
        return [[str(self.a), str(self.c)], [str(self.b), str(self.d)]]

    def __str__(self):
        return f"({self.a}, {self.c}; {self.b}, {self.d})"


IDENTITY = Mat2(1, 0, 0, 1)


def elementary(a: int) -> Mat2:
    """M_a = ((0, 1), (1, a))."""
    return Mat2(0, 1, 1, a)


@dataclass(frozen=True)
class QuadForm:
    """A x^2 + B xy + C y^2."""
    A: int
    B: int
    C: int

    def __call__(self, x: int, y: int) -> int:
        return self.A * x * x + self.B * x * y + self.C * y * y

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def transform(self, p: int, q: int, r: int, s: int) -> "QuadForm":
        """g(x, y) = f(p x + q y, r x + s y)."""
        A, B, C = self.A, self.B, self.C
        return QuadForm(self(p, r), 2 * A * p * q + B * (p * s + q * r) + 2 * C * r * s, self(q, s))

    def to_json(self) -> dict:
        return {"A": str(self.A), "B": str(self.B), "C": str(self.C)}

    def __str__(self):
        def term(coef, mono, first):
            if coef == 0:
                return ""
            sign = "-" if coef < 0 else ("" if first else "+")
            mag = abs(coef)
            body = mono if mag == 1 else f"{mag}{mono}"
            return f"{sign}{body}"
        out = ""
        for coef, mono in ((self.A, "x^2"), (self.B, "xy"), (self.C, "y^2")):
            out += term(coef, mono, not out)
        return out or "0"


def discriminant(f: QuadForm) -> int:
    return f.discriminant


# ---------------------------------------------------------------------------
# radical ratios sqrt(N)/d
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=4096)
def _factor(n: int) -> dict:
    return factorint(n)


@functools.total_ordering
class RadicalRatio:
    """The positive real sqrt(N)/d with the smallest possible denominator d."""

    __slots__ = ("N", "d")

    def __init__(self, N: int, d: int):
        N, d = int(N), int(d)
        if N < 0 or d <= 0:
            raise DomainError("RadicalRatio needs N >= 0 and d > 0")
        # value^2 = N / d^2 = P / Q in lowest terms with g = gcd(N, d^2).  The least
        # d' with Q | d'^2 is d / k, where k = prod p^floor(e/2) over g = prod p^e:
        # primes outside g keep an even exponent in Q.  Only g needs factoring.
        g = gcd(N, d * d)
        k = 1
        for p, e in _factor(g).items():
            k *= p ** (e // 2)
        self.N = N // (k * k)
        self.d = d // k

    @property
    def raw(self) -> tuple[int, int]:
        return self.N, self.d

    def _key(self, other: "RadicalRatio") -> tuple[int, int]:
        return self.N * other.d * other.d, other.N * self.d * self.d

    def __eq__(self, other):
        if not isinstance(other, RadicalRatio):
            return NotImplemented
        l, r = self._key(other)
        return l == r

    def __lt__(self, other):
        if not isinstance(other, RadicalRatio):
            return NotImplemented
        l, r = self._key(other)
        return l < r

    def __hash__(self):
        return hash((self.N, self.d))

    def to_surd(self) -> Surd:
        return Surd(0, 1, self.N, self.d)

    def decimal(self, digits: int = 30) -> str:
        return self.to_surd().to_decimal(digits)

    def to_json(self, digits: int = 30) -> dict:
        return {"N": str(self.N), "d": str(self.d), "decimal": self.decimal(digits)}

    def __str__(self):
        return f"sqrt({self.N})" if self.d == 1 else f"sqrt({self.N})/{self.d}"

    def __repr__(self):
        return f"RadicalRatio({self.N}, {self.d})"


# ---------------------------------------------------------------------------
# the diagram maps
# ---------------------------------------------------------------------------

def _continuant_block(s: Seq) -> tuple[int, int, int, int]:
    n = len(s)
    return (partial_continuant(s, 2, n - 1), partial_continuant(s, 2, n),
            partial_continuant(s, 1, n - 1), partial_continuant(s, 1, n))


def reduced_matrix(s: Sequence[int]) -> Mat2:
    """M_s for any nonempty s (det = (-1)^n)."""
    s = as_seq(s, allow_empty=False)
    return Mat2(*_continuant_block(s))


def map_A(s: Sequence[int]) -> Mat2:
    """Even sequence -> reduced SL(2,Z) matrix (K_2^{n-1}, K_2^n; K_1^{n-1}, K_1^n)."""
    s = as_seq(s)
    _require_even(s)
    return reduced_matrix(s)


def map_B(m: Mat2) -> Seq:
    """Reduced matrix -> even sequence: odd expansion of b/a, then floor((d-1)/b)."""
    a, b, d = m.a, m.b, m.d
    if m.det != 1:
        raise DomainError("map_B needs det = +1")
    if a == 0:
        raise DomainError("map_B undefined for a = 0")
    if not (d > b >= a >= 1):
        raise DomainError(f"map_B needs d > b >= a >= 1, got {m}")
    head = rational_to_cf(b, a, "odd")
    return as_seq(head + ((d - 1) // b,))


def map_C(s: Sequence[int]) -> QuadForm:
    """K_1^{n-1} x^2 + (K_1^n - K_2^{n-1}) xy - K_2^n y^2."""
    s = as_seq(s)
    _require_even(s)
    k2n1, k2n, k1n1, k1n = _continuant_block(s)
    return QuadForm(k1n1, k1n - k2n1, -k2n)


def associated_form(s: Sequence[int]) -> QuadForm:
    """map_C without the parity restriction."""
    s = as_seq(s, allow_empty=False)
    k2n1, k2n, k1n1, k1n = _continuant_block(s)
    return QuadForm(k1n1, k1n - k2n1, -k2n)


def map_E(m: Mat2) -> QuadForm:
    return QuadForm(m.b, m.d - m.a, -m.c)


def map_F(f: QuadForm) -> Mat2:
    """Inverse of map_E on forms coming from SL(2,Z) matrices."""
    A, B, C = f.A, f.B, f.C
    disc = B * B - 4 * A * C + 4
    if disc < 0:
        raise DomainError("B^2 - 4AC + 4 is negative")
    root = isqrt(disc)
    if root * root != disc:
        raise DomainError(f"B^2 - 4AC + 4 = {disc} is not a perfect square")
    # root and B always share parity, so a below is an integer
    a = (root - B) // 2
    return Mat2(a, -C, A, a + B)


def form_to_seq(f: QuadForm) -> Seq:
    """Map D = B o F."""
    return map_B(map_F(f))


def map_W(s: Sequence[int]) -> RadicalRatio:
    """sqrt((K_1^n + K_2^{n-1})^2 - 4) / K_1^{n-1}."""
    s = as_seq(s)
    _require_even(s)
    k2n1, _, k1n1, k1n = _continuant_block(s)
    t = k1n + k2n1
    return RadicalRatio(t * t - 4, k1n1)


def map_X(f: QuadForm) -> RadicalRatio:
    """sqrt(disc f) / f(1, 0)."""
    if f.A <= 0:
        raise DomainError("map_X needs f(1,0) > 0")
    if f.discriminant <= 0:
        raise DomainError("map_X needs a positive discriminant")
    return RadicalRatio(f.discriminant, f.A)


def map_Z(m: Mat2) -> RadicalRatio:
    """sqrt((a+d)^2 - 4) / b."""
    t = m.trace
    if m.b <= 0 or t * t <= 4:
        raise DomainError("map_Z needs b > 0 and |trace| > 2")
    return RadicalRatio(t * t - 4, m.b)


def mat_ops(m1: Mat2, op: str, m2: Mat2 | None = None):
    """``mul`` returns a matrix; ``det`` and ``trace`` return ints."""
    if op == "mul":
        return m1 @ m2
    if op == "det":
        return m1.det
    if op == "trace":
        return m1.trace
    raise DomainError(f"unknown matrix operation {op!r}")


def form_value_ratio(f: QuadForm, x: int, y: int) -> Fraction:
    """f(x, y) / f(1, 0), the normalised value used for extremality."""
    return Fraction(f(x, y), f.A)
