"""Exact Perron-identity evaluation for periodic marked LLS sequences.

For a bi-infinite periodic sequence (..., a_{i-1}, a_i, a_{i+1}, ...) put

    E_i = a_i + [0; a_{i+1}, a_{i+2}, ...] + [0; a_{i-1}, a_{i-2}, ...].

Both tails are purely periodic, so every E_i is a quadratic surd in the same
field.  The spectrum value of the arrangement is max_i E_i, and the Markov
minimum of the normalised form is its reciprocal: m(f) = sqrt(disc) / max E_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .matform import map_W
from .seqcore import Seq, as_seq
from .surd import Surd, periodic_cf_value


class NotExtremalError(DomainError):
    """The sequence does not attain its Markov minimum at (1, 0)."""


@dataclass(frozen=True)
class MarkedPeriodicLLS:
    period: Seq
    mark: int = 0

    def __post_init__(self):
        object.__setattr__(self, "period", as_seq(self.period, allow_empty=False))
        if not 0 <= self.mark < len(self.period):
            raise DomainError("mark must index into the period")

    def rotated(self, k: int) -> "MarkedPeriodicLLS":
        p = self.period
        k %= len(p)
        return MarkedPeriodicLLS(p[k:] + p[:k], 0)


def perron_terms(m: MarkedPeriodicLLS) -> list[Surd]:
    """E_i for each index of the period, counted from the mark."""
    p = m.period[m.mark:] + m.period[:m.mark]
    n = len(p)
    out = []
    for i in range(n):
        forward = p[i + 1:] + p[:i + 1]
        back = tuple(p[(i - 1 - k) % n] for k in range(n))
        out.append(p[i] + periodic_cf_value(forward).recip()
                   + periodic_cf_value(back).recip())
    return out


def perron_extremum(m: MarkedPeriodicLLS) -> tuple[Surd, int]:
    """(max_i E_i, smallest index attaining it), index counted from the mark."""
    terms = perron_terms(m)
    best = 0
    for i in range(1, len(terms)):
        if terms[i] > terms[best]:
            best = i
    return terms[best], best


def perron_matches_spectrum(s: Sequence[int]) -> bool:
    """perron_extremum(<s>) == map_W(s) as exact reals; s must be extremal."""
    from .sail import is_extremal

    s = as_seq(s)
    if not is_extremal(s).extremal:
        raise NotExtremalError(f"{s} is not extremal")
    value, _ = perron_extremum(MarkedPeriodicLLS(s))
    return value == map_W(s).to_surd()
