"""Finite integer sequences, continuants and rational continued fractions.

Sequences are plain tuples of Python ints.  Everything here is exact; no
floating point is ever used.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError

Seq = tuple  # tuple[int, ...]


def as_seq(s: Iterable[int], *, allow_empty: bool = True) -> Seq:
    """Coerce to a tuple of positive ints, raising DomainError otherwise."""
    t = tuple(int(x) for x in s)
    if not allow_empty and not t:
        raise DomainError("sequence must be nonempty")
    for x in t:
        if x < 1:
            raise DomainError(f"sequence elements must be >= 1, got {x}")
    return t


def _require_even(s: Sequence[int], what: str = "sequence") -> None:
    if len(s) == 0 or len(s) % 2:
        raise DomainError(f"{what} must have even positive length, got length {len(s)}")


# ---------------------------------------------------------------------------
# continuants
# ---------------------------------------------------------------------------

def continuant(s: Sequence[int]) -> int:
    """K(a_1, ..., a_n) via K_n = a_n K_{n-1} + K_{n-2}, with K() = 1."""
    prev, cur = 0, 1
    for a in s:
        prev, cur = cur, a * cur + prev
    return cur


def partial_continuant(s: Sequence[int], i: int, j: int) -> int:
    """K_i^j(s) = K(a_i, ..., a_j) with 1-based inclusive indices.

    ``j == i - 1`` gives 1 and ``j == i - 2`` gives 0, which closes the
    two-term recurrence at its lower end.
    """
    n = len(s)
    if j == i - 2 and 1 <= i <= n + 2:
        return 0
    if not (1 <= i <= j + 1 <= n + 1):
        raise DomainError(f"partial continuant index out of range: i={i}, j={j}, n={n}")
    return continuant(s[i - 1:j])


def breve(s: Sequence[int]) -> int:
    """Continuant with the last element dropped."""
    if not s:
        raise DomainError("breve of an empty sequence")
    return continuant(s[:-1])


def trace_coefficient(s: Sequence[int]) -> int:
    """K_1^n(s) + K_2^{n-1}(s), the integer ratio breve(s+s)/breve(s)."""
    n = len(s)
    if n == 0:
        raise DomainError("trace coefficient of an empty sequence")
    return continuant(s) + partial_continuant(s, 2, n - 1)


def concat(a: Sequence[int], b: Sequence[int]) -> Seq:
    return tuple(a) + tuple(b)


def reverse(s: Sequence[int]) -> Seq:
    return tuple(reversed(s))


def is_cyclically_equivalent(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff b is a cyclic rotation of a."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    n = len(a)
    return any(doubled[k:k + n] == b for k in range(n))


# ---------------------------------------------------------------------------
# periodic streams and the skew-lexicographic order
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EventuallyPeriodicSeq:
    preperiod: Seq
    period: Seq

    def __post_init__(self):
        object.__setattr__(self, "preperiod", as_seq(self.preperiod))
        object.__setattr__(self, "period", as_seq(self.period, allow_empty=False))

    def __getitem__(self, k: int) -> int:
        """Element at 1-based position k."""
        if k < 1:
            raise IndexError(k)
        m = len(self.preperiod)
        if k <= m:
            return self.preperiod[k - 1]
        return self.period[(k - m - 1) % len(self.period)]

    def prefix(self, n: int) -> Seq:
        return tuple(self[k] for k in range(1, n + 1))


def periodisation(s: Sequence[int]) -> EventuallyPeriodicSeq:
    return EventuallyPeriodicSeq((), tuple(s))


def skew_lex_compare_periodic(a: EventuallyPeriodicSeq, b: EventuallyPeriodicSeq) -> int:
    """Return 1, 0 or -1 as a is skew-lexicographically above, equal to, or below b.

    At the first differing 1-based position k the larger element wins when k
    is odd and the smaller one wins when k is even, so the order agrees with
    the order of the continued-fraction values.
    """
    bound = max(len(a.preperiod), len(b.preperiod)) + len(a.period) + len(b.period)
    for k in range(1, bound + 1):
        x, y = a[k], b[k]
        if x != y:
            bigger = 1 if x > y else -1
            return bigger if k % 2 else -bigger
    return 0


def periodic_precedes(a: Sequence[int], b: Sequence[int]) -> bool:
    """<a> strictly below <b> in skew-lexicographic order."""
    return skew_lex_compare_periodic(periodisation(a), periodisation(b)) < 0


# ---------------------------------------------------------------------------
# evenness predicates
# ---------------------------------------------------------------------------

def is_evenly_prime(s: Sequence[int]) -> bool:
    """False iff s is a k-fold repetition (k >= 2) of an even-length block."""
    s = tuple(s)
    _require_even(s)
    n = len(s)
    for d in range(2, n, 2):
        if n % d == 0 and s[:d] * (n // d) == s:
            return False
    return True


def is_evenly_palindromic(s: Sequence[int]) -> bool:
    """Some k gives a[(k+m) mod 2n] == a[(k-m-1) mod 2n] for every m."""
    s = tuple(s)
    _require_even(s)
    n = len(s)
    for k in range(n):
        if all(s[(k + m) % n] == s[(k - m - 1) % n] for m in range(n)):
            return True
    return False


# ---------------------------------------------------------------------------
# rational continued fractions
# ---------------------------------------------------------------------------

def rational_to_cf(p: int, q: int, parity: str = "canonical") -> Seq:
    """Regular continued fraction of p/q.

    ``parity`` is ``"canonical"`` (last element >= 2 unless the value is an
    integer), ``"odd"`` or ``"even"`` (number of elements).  The first element
    is floor(p/q) and may be zero or negative.
    """
    if q < 1:
        raise DomainError("denominator must be positive")
    if parity not in ("canonical", "odd", "even"):
        raise DomainError(f"unknown parity {parity!r}")
    out = []
    while True:
        a, r = divmod(p, q)
        out.append(a)
        if r == 0:
            break
        p, q = q, r
    if parity == "canonical":
        return tuple(out)
    if Fraction(*_cf_num_den(out)) <= 0:
        raise DomainError("odd/even expansions are only defined for positive values")
    want_odd = parity == "odd"
    if (len(out) % 2 == 1) == want_odd:
        return tuple(out)
    # toggle parity
    # [.., a] = [.., a-1, 1]; a lone leading element may drop to zero
    if out[-1] >= 2 or len(out) == 1:
        return tuple(out[:-1]) + (out[-1] - 1, 1)
    return tuple(out[:-2]) + (out[-2] + 1,)


def _cf_num_den(s: Sequence[int]) -> tuple[int, int]:
    # numerator K(a_1..a_n), denominator K(a_2..a_n)
    return continuant(s), continuant(s[1:])


def cf_to_rational(s: Sequence[int]) -> Fraction:
    """[a_1; a_2, ..., a_n] as an exact Fraction (a_1 may be any integer)."""
    if not s:
        raise DomainError("empty continued fraction")
    if any(a < 1 for a in s[1:]):
        raise DomainError("continued fraction tail elements must be positive")
    num, den = _cf_num_den(s)
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# sequence literals:  seq := term (',' term)* ; term := INT | '(' INT (',' INT)* ')' '^' INT
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|\(([\d,\s]+)\)\s*\^\s*(\d+))\s*(?:,|$)")


def parse_seq(text: str) -> Seq:
    """Parse ``4,4,(11)^8`` style literals."""
    src = text.strip()
    if not src:
        raise DomainError("empty sequence literal")
    out: list[int] = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse sequence literal at {src[pos:]!r}")
        if m.group(1) is not None:
            out.append(int(m.group(1)))
        else:
            block = [int(x) for x in m.group(2).split(",") if x.strip()]
            if not block:
                raise DomainError("empty repeated block")
            out.extend(block * int(m.group(3)))
        pos = m.end()
        if src[pos - 1] == "," and pos == len(src):
            raise DomainError("trailing comma in sequence literal")
    return as_seq(out, allow_empty=False)


def format_seq(s: Sequence[int], min_run: int = 3) -> str:
    """Inverse of parse_seq; runs of at least ``min_run`` equal elements are folded."""
    parts = []
    i = 0
    s = tuple(s)
    while i < len(s):
        j = i
        while j < len(s) and s[j] == s[i]:
            j += 1
        run = j - i
        if run >= min_run:
            parts.append(f"({s[i]})^{run}")
        else:
            parts.extend(str(s[i]) for _ in range(run))
        i = j
    return ",".join(parts)
