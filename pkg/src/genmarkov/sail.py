"""Lattice geometry: cones, sails, LLS sequences and brute-force Markov minima.

This module is deliberately independent of the continuant algebra.  Sails
are convex hulls of explicitly enumerated lattice points, so they can be
used to check the algebraic maps rather than repeat them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .matform import QuadForm, map_A, map_C
from .seqcore import Seq, _require_even, as_seq, reverse
from .surd import Surd, neg_periodic_tail, periodic_cf_value

Point = tuple  # (x, y)


@dataclass(frozen=True)
class Cone:
    """Open cone {x > 0, low*x < y < high*x} with high > 1 and -1 < low < 0."""
    slope_high: Surd
    slope_low: Surd

    def __post_init__(self):
        if not (self.slope_high > 1 and -1 < self.slope_low < 0):
            raise DomainError("cone slopes must satisfy high > 1 and -1 < low < 0")

    def contains(self, x: int, y: int) -> bool:
        return x > 0 and self.slope_low * x < y < self.slope_high * x


@dataclass(frozen=True)
class SailPolyline:
    vertices: tuple
    x_bound: int
    # vertices with x <= reliable_x are trusted (conservative margin)
    reliable_x: int

    def index(self, pt: Point) -> int:
        return self.vertices.index(tuple(pt))

    def trimmed(self) -> "SailPolyline":
        keep = tuple(v for v in self.vertices if v[0] <= self.reliable_x)
        return SailPolyline(keep, self.x_bound, self.reliable_x)


@dataclass(frozen=True)
class LLSData:
    sequence: tuple
    marked_index: int | None

    def window(self, n: int, start: int | None = None) -> Seq:
        """n consecutive elements starting at the mark (or at ``start``)."""
        k = self.marked_index if start is None else start
        if k is None or k + n > len(self.sequence):
            raise DomainError("LLS window exceeds the computed sail")
        return self.sequence[k:k + n]

    def has_period(self, n: int) -> bool:
        seq = self.sequence
        return all(seq[i] == seq[i + n] for i in range(len(seq) - n))


def cone_of_sequence(s: Sequence[int]) -> Cone:
    """The cone containing (1, 0) bounded by the eigenlines of M_s."""
    s = as_seq(s)
    _require_even(s)
    return Cone(periodic_cf_value(s), neg_periodic_tail(s))


def adjacent_cone(s: Sequence[int]) -> Cone:
    """The cone containing (0, 1), written in the rotated coordinates (u, w) = (y, -x).

    In those coordinates it is the (1, 0)-cone of the reversed sequence.
    """
    return cone_of_sequence(reverse(as_seq(s)))


def rotate_back(pt: Point) -> Point:
    """(u, w) -> (x, y) = (-w, u), inverse of the rotation used by adjacent_cone."""
    u, w = pt
    return (-w, u)


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points: list) -> list:
    """Convex hull, counterclockwise, collinear points dropped (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _floor_times(v: Surd, x: int) -> tuple[int, bool]:
    """(floor(v*x), whether v*x is an integer) for x >= 1, integers only."""
    p, q, D, r = v.p, v.q, v.D, v.r
    if q == 0:
        n, rem = divmod(p * x, r)
        return n, rem == 0
    t = isqrt(q * q * D * x * x)  # never exact: D is not a square
    if q > 0:
        return (p * x + t) // r, False
    return (p * x - t - 1) // r, False


def _column_range(cone: Cone, x: int) -> tuple[int, int]:
    top, exact = _floor_times(cone.slope_high, x)
    if exact:
        top -= 1
    bottom = _floor_times(cone.slope_low, x)[0] + 1
    return bottom, top


def sail_of_cone(cone: Cone, x_bound: int) -> SailPolyline:
    """Sail vertices of the lattice points of ``cone`` with 1 <= x <= x_bound.

    Vertices are ordered counterclockwise (increasing slope y/x).  Every true
    sail vertex with x <= x_bound appears and consecutive true vertices are
    joined correctly; spurious vertices caused by the truncation can only
    follow the last true vertex on each arm.
    """
    if x_bound < 2:
        raise DomainError("x_bound must be at least 2")
    pts = []
    for x in range(1, x_bound + 1):
        lo, hi = _column_range(cone, x)
        if lo <= hi:
            pts.append((x, lo))
            pts.append((x, hi))
    hull = _hull(pts)
    origin = (0, 0)
    m = len(hull)
    if m <= 2:
        chain = hull
    else:
        visible = [_cross(hull[i], hull[(i + 1) % m], origin) < 0 for i in range(m)]
        chain_set = set()
        for i in range(m):
            if visible[i]:
                chain_set.add(hull[i])
                chain_set.add(hull[(i + 1) % m])
        chain = list(chain_set)
    chain.sort(key=lambda p: Fraction(p[1], p[0]))
    slope = max(abs(cone.slope_high.floor()) + 1, 1)
    return SailPolyline(tuple(chain), x_bound, x_bound // (slope + 1))


def integer_length(a: Point, b: Point) -> int:
    return gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))


def integer_sine(a: Point, b: Point, c: Point) -> int:
    """lsin of the angle ABC at vertex B."""
    det = abs((b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]))
    return det // (integer_length(a, b) * integer_length(b, c))


def lls_from_sail(sail: SailPolyline, mark_at: Point = (1, 0)) -> LLSData:
    """Alternating integer lengths and sines along the sail.

    The marked element is the length of the edge leaving ``mark_at``
    counterclockwise.
    """
    v = sail.vertices
    if len(v) < 2:
        raise DomainError("need at least two sail vertices")
    seq: list[int] = []
    mark = None
    for k in range(len(v) - 1):
        if k > 0:
            seq.append(integer_sine(v[k - 1], v[k], v[k + 1]))
        if v[k] == tuple(mark_at):
            mark = len(seq)
        seq.append(integer_length(v[k], v[k + 1]))
    return LLSData(tuple(seq), mark)


def sail_period_bound(s: Sequence[int]) -> int:
    """An x_bound after which one full LLS period past the mark is exact.

    M_s maps the sail vertex (1, s_1) to a true vertex with x = a + c*s_1.
    """
    s = as_seq(s)
    m = map_A(s)
    return m.a + m.c * s[0] + 1


def sail_window_bound(s: Sequence[int]) -> int:
    """A smaller x_bound covering the vertices from the one before (1, 0) to M_s(1, 0).

    The vertex preceding (1, 0) is (1 + s_{n-1}*s_n, -s_{n-1}), and M_s(1, 0)
    has x = a.  Reading n elements from one position before the mark then
    gives a full period.
    """
    s = as_seq(s)
    return max(map_A(s).a, 1 + s[-2] * s[-1]) + 1


# ---------------------------------------------------------------------------
# brute-force minima and extremality
# ---------------------------------------------------------------------------

def _tie_key(pt: Point) -> tuple:
    x, y = pt
    return (abs(x), abs(y), x < 0, y < 0)


def markov_minimum_bruteforce(f: QuadForm, box: int) -> tuple[int, Point]:
    """min |f| over nonzero integer points with max(|x|, |y|) <= box, with a witness."""
    if f.discriminant <= 0:
        raise DomainError("form must have positive discriminant")
    if box < 1:
        raise DomainError("box must be positive")
    bound = max(abs(f.A), abs(f.B), abs(f.C)) * 3 * box * box
    if bound < 2**62:
        r = np.arange(-box, box + 1, dtype=np.int64)
        X, Y = np.meshgrid(r, r, indexing="ij")
        vals = np.abs(f.A * X * X + f.B * X * Y + f.C * Y * Y)
        vals[box, box] = np.iinfo(np.int64).max
        best = int(vals.min())
        xs, ys = np.nonzero(vals == best)
        cands = [(int(x) - box, int(y) - box) for x, y in zip(xs, ys)]
    else:
        best, cands = None, []
        for x in range(-box, box + 1):
            for y in range(-box, box + 1):
                if x == 0 and y == 0:
                    continue
                v = abs(f(x, y))
                if best is None or v < best:
                    best, cands = v, [(x, y)]
                elif v == best:
                    cands.append((x, y))
    return best, min(cands, key=_tie_key)


@dataclass
class ExtremalityCertificate:
    sequence: tuple
    extremal: bool
    value_at_10: int
    minimum: int
    witness: Point
    minimizers: list = field(default_factory=list)
    checked_vertices: int = 0


def _one_period(s: Seq) -> list:
    """Sail vertices of one period in the (1,0)-cone of s, starting at (1,0)."""
    m = map_A(s)
    end = m.apply(1, 0)
    sail = sail_of_cone(cone_of_sequence(s), max(end[0], 2) + 1)
    try:
        i, j = sail.index((1, 0)), sail.index(end)
    except ValueError as exc:
        raise DomainError(f"sail period for {s} not found") from exc
    return list(sail.vertices[i:j])


def is_extremal(s: Sequence[int]) -> ExtremalityCertificate:
    """Does map_C(s) attain its Markov minimum at (1, 0)?

    f takes equal values at v and -v, so the four cones reduce to two: the
    (1,0)-cone and the (0,1)-cone.  One period of each sail is enumerated
    (the automorphism M_s shifts the sail by a period) and |f| minimised
    over those vertices.
    """
    s = as_seq(s)
    _require_even(s)
    f = map_C(s)
    verts = _one_period(s)
    verts += [rotate_back(p) for p in _one_period(reverse(s))]
    values = [(abs(f(*p)), p) for p in verts]
    best = min(v for v, _ in values)
    minimizers = sorted((p for v, p in values if v == best), key=_tie_key)
    f10 = f(1, 0)
    return ExtremalityCertificate(
        sequence=s,
        extremal=best == f10,
        value_at_10=f10,
        minimum=best,
        witness=(1, 0) if best == f10 else minimizers[0],
        minimizers=minimizers,
        checked_vertices=len(verts),
    )


# ---------------------------------------------------------------------------
# SVG export
# ---------------------------------------------------------------------------

def sails_to_svg(polylines: Iterable[Sequence[Point]], path: str, scale: int = 20) -> None:
    """Write one SVG polyline per sail (already in common coordinates)."""
    polylines = [list(p) for p in polylines]
    xs = [x for pl in polylines for x, _ in pl] + [0]
    ys = [y for pl in polylines for _, y in pl] + [0]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    w, h = (x1 - x0) * scale, (y1 - y0) * scale
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">']
    for k, pl in enumerate(polylines):
        pts = " ".join(f"{(x - x0) * scale},{(y1 - y) * scale}" for x, y in pl)
        lines.append(f'<polyline fill="none" stroke="{colors[k % 4]}" points="{pts}"/>')
    lines.append(f'<circle cx="{-x0 * scale}" cy="{y1 * scale}" r="3"/>')
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
