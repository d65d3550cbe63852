"""Classical Markov triples and the forms and periods attached to them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError
from .matform import Mat2, QuadForm, RadicalRatio
from .seqcore import Seq, breve, rational_to_cf
from .triplegraph import TripleNode, enumerate_nodes, markov_root, markov_sigma


def markov_equation_check(a: int, b: int, c: int) -> bool:
    return a * a + b * b + c * c == 3 * a * b * c


@dataclass(frozen=True)
class MarkovTriple:
    """Ordered Markov triple a <= b <= M."""
    a: int
    M: int
    b: int

    def __post_init__(self):
        if not (1 <= self.a <= self.b <= self.M):
            raise DomainError(f"need 1 <= a <= b <= M, got {(self.a, self.M, self.b)}")
        if not markov_equation_check(self.a, self.M, self.b):
            raise DomainError(f"{(self.a, self.M, self.b)} is not a Markov triple")

    @classmethod
    def from_any(cls, x: int, y: int, z: int) -> "MarkovTriple":
        """Accept the three numbers in any order."""
        lo, mid, hi = sorted((x, y, z))
        return cls(lo, hi, mid)


@dataclass(frozen=True)
class MarkovFormData:
    triple: MarkovTriple
    u: int
    v: int

    def to_json(self) -> dict:
        t = self.triple
        return {"a": str(t.a), "M": str(t.M), "b": str(t.b), "u": str(self.u), "v": str(self.v)}


def _least_u(x: int, y: int, m: int) -> int:
    """Least positive u with u*x = +-y (mod m)."""
    try:
        inv = pow(x, -1, m)
    except ValueError as exc:
        raise DomainError(f"{x} is not invertible modulo {m}") from exc
    r = (y * inv) % m
    cands = [u for u in (r, (m - r) % m) if u > 0]
    if not cands:
        raise DomainError("no positive residue solves the congruence")
    return min(cands)


def _v_of(u: int, m: int) -> int:
    q, r = divmod(u * u + 1, m)
    if r:
        raise DomainError(f"(u^2 + 1)/M = ({u}^2 + 1)/{m} is not an integer")
    return q


def compute_uv(t: MarkovTriple) -> MarkovFormData:
    if t.M == 1:
        raise DomainError("u is undefined for M = 1")
    u = _least_u(t.a, t.b, t.M)
    return MarkovFormData(t, u, _v_of(u, t.M))


def map_P(node: TripleNode) -> tuple[int, int, int]:
    return tuple(breve(x) for x in node.triple)


def map_Q(t: MarkovTriple) -> Seq:
    """Odd expansion of M/u, reversed, with 2 appended."""
    u = compute_uv(t).u
    head = rational_to_cf(t.M, u, "odd")
    return tuple(reversed(head)) + (2,)


def map_S(t: MarkovTriple) -> QuadForm:
    d = compute_uv(t)
    M, u, v = t.M, d.u, d.v
    return QuadForm(M, M + 2 * u, u + v - 2 * M)


def markov_theorem_form(m: int, m1: int, m2: int) -> QuadForm:
    """m x^2 + (3m - 2u) xy + (v - 3u) y^2 with m2*u = +-m1 (mod m)."""
    if not (m >= m1 >= m2 >= 1) or not markov_equation_check(m, m1, m2):
        raise DomainError(f"{(m, m1, m2)} is not an ordered Markov triple")
    if m == 1:
        raise DomainError("u is undefined for m = 1")
    u = _least_u(m2, m1, m)
    v = _v_of(u, m)
    return QuadForm(m, 3 * m - 2 * u, v - 3 * u)


def map_Y(t: MarkovTriple) -> RadicalRatio:
    return RadicalRatio(9 * t.M * t.M - 4, t.M)


def map_R(forms: Sequence[QuadForm]) -> tuple:
    return tuple(f(1, 0) for f in forms)


def map_T(mats: Sequence[Mat2]) -> tuple:
    return tuple(m.b for m in mats)


def classical_tree(depth: int, max_depth: int = 24) -> Iterator[tuple[int, int, int]]:
    """Positional triples of the Markov tree rooted at (1, 5, 2) to ``depth``."""
    for node in enumerate_nodes(markov_root(), markov_sigma, depth, max_depth):
        yield node.triple


def all_markov_triples(depth: int) -> list[MarkovTriple]:
    """The two degenerate triples (1,1,1), (1,2,1) followed by the tree to ``depth``."""
    out = [MarkovTriple(1, 1, 1), MarkovTriple(1, 2, 1)]
    out += [MarkovTriple.from_any(*t) for t in classical_tree(depth)]
    return out


def spectrum_head(depth: int, count: int = 5) -> list[RadicalRatio]:
    """The ``count`` smallest distinct map_Y values over all triples to ``depth``."""
    values = sorted(set(map_Y(t) for t in all_markov_triples(depth)))
    return values[:count]
