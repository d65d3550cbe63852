"""Triple-graphs: L/R operations, Farey codes, generalised Markov trees.

A node is a triple (left, middle, right) reached from a root by a word in
L and R, where for a ternary operation sigma

    L(a, b, c) = (a, sigma(a, b, c), b)
    R(a, b, c) = (b, sigma(b, c, a), c).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Generic, Iterator, Sequence, TypeVar

import numpy as np

from .errors import ConsistencyError, DomainError, ResourceLimitError
from .matform import Mat2, map_A, map_C
from .seqcore import (Seq, _require_even, as_seq, breve, cf_to_rational, concat,
                      format_seq, is_evenly_palindromic, is_evenly_prime,
                      periodic_precedes, periodisation, reverse,
                      skew_lex_compare_periodic, trace_coefficient)

T = TypeVar("T")

DEFAULT_MAX_DEPTH = 24


# ---------------------------------------------------------------------------
# Farey codes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class FareyCode:
    """Exponents (a_1, ..., a_2n): L^{a_1}, then R^{a_2}, then L^{a_3}, ..."""
    exponents: tuple = (0, 0)

    def __post_init__(self):
        e = tuple(int(x) for x in self.exponents) or (0, 0)
        if len(e) % 2:
            raise DomainError("Farey code needs an even number of exponents")
        if any(x < 0 for x in e) or any(x < 1 for x in e[1:-1]):
            raise DomainError(f"invalid Farey code {e}")
        object.__setattr__(self, "exponents", e)

    @classmethod
    def from_word(cls, word: str) -> "FareyCode":
        code = cls()
        for ch in word.upper():
            code = code.extend(ch)
        return code

    @classmethod
    def from_heap_index(cls, index: int) -> "FareyCode":
        """Root is 1; the children of node i are 2i (L) and 2i+1 (R)."""
        if index < 1:
            raise DomainError("heap index must be positive")
        bits = bin(index)[3:]
        return cls.from_word(bits.replace("0", "L").replace("1", "R"))

    def extend(self, direction: str) -> "FareyCode":
        e = list(self.exponents)
        if direction == "L":
            if e[-1] == 0:
                e[-2] += 1
            else:
                e += [1, 0]
        elif direction == "R":
            e[-1] += 1
        else:
            raise DomainError(f"direction must be L or R, got {direction!r}")
        return FareyCode(tuple(e))

    @property
    def word(self) -> str:
        return "".join(("L" if k % 2 == 0 else "R") * a for k, a in enumerate(self.exponents))

    @property
    def depth(self) -> int:
        return sum(self.exponents)

    def to_json(self) -> list:
        return [str(a) for a in self.exponents]

    def __str__(self):
        return self.word or "root"


def farey_coordinate(code: FareyCode) -> Fraction:
    """[0; a_1+1, a_2, ..., a_{2n-1}, a_{2n}+1]."""
    e = list(code.exponents)
    e[0] += 1
    e[-1] += 1
    return cf_to_rational([0] + e)


# ---------------------------------------------------------------------------
# generic triple-graph machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TripleNode(Generic[T]):
    left: Any
    middle: Any
    right: Any
    code: FareyCode = field(default_factory=FareyCode)

    @property
    def triple(self) -> tuple:
        return (self.left, self.middle, self.right)


Sigma = Callable[[Any, Any, Any], Any]


def step(node: TripleNode, direction: str, sigma: Sigma) -> TripleNode:
    a, b, c = node.triple
    if direction == "L":
        return TripleNode(a, sigma(a, b, c), b, node.code.extend("L"))
    if direction == "R":
        return TripleNode(b, sigma(b, c, a), c, node.code.extend("R"))
    raise DomainError(f"direction must be L or R, got {direction!r}")


def _check_depth(depth: int, limit: int) -> None:
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    if depth > limit:
        raise ResourceLimitError(f"depth {depth} exceeds the configured limit {limit}")


def enumerate_nodes(root: TripleNode, sigma: Sigma, depth: int,
                    max_depth: int = DEFAULT_MAX_DEPTH) -> Iterator[TripleNode]:
    """Breadth-first, left before right: 2**(depth+1) - 1 nodes."""
    _check_depth(depth, max_depth)
    level = [root]
    for d in range(depth + 1):
        yield from level
        if d < depth:
            level = [step(n, k, sigma) for n in level for k in "LR"]


# standard instances

def farey_sigma(a: Fraction, b: Fraction, c: Fraction) -> Fraction:
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def concat_sigma(a: Seq, b: Seq, c: Seq) -> Seq:
    return concat(a, b)


def markov_sigma(x: int, y: int, z: int) -> int:
    return 3 * x * y - z


def matrix_sigma(a: Mat2, b: Mat2, c: Mat2) -> Mat2:
    return a @ b


def farey_root() -> TripleNode:
    return TripleNode(Fraction(0), Fraction(1, 2), Fraction(1))


def markov_root() -> TripleNode:
    return TripleNode(1, 5, 2)


def sequence_root(mu: Sequence[int], nu: Sequence[int]) -> TripleNode:
    mu, nu = as_seq(mu, allow_empty=False), as_seq(nu, allow_empty=False)
    return TripleNode(mu, concat(mu, nu), nu)


def matrix_root(mu: Sequence[int], nu: Sequence[int]) -> TripleNode:
    a, b = map_A(mu), map_A(nu)
    return TripleNode(a, a @ b, b)


def farey_middle_identity_check(depth: int) -> bool:
    if depth > 12:
        raise ResourceLimitError("farey_middle_identity_check is limited to depth 12")
    return all(n.middle == farey_coordinate(n.code)
               for n in enumerate_nodes(farey_root(), farey_sigma, depth))


# ---------------------------------------------------------------------------
# generalised Markov trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenMarkovNode:
    seq_triple: TripleNode
    num_triple: tuple
    trace_triple: tuple

    @property
    def code(self) -> FareyCode:
        return self.seq_triple.code


def gen_markov_root(mu: Sequence[int], nu: Sequence[int]) -> GenMarkovNode:
    node = sequence_root(mu, nu)
    return GenMarkovNode(node, tuple(breve(x) for x in node.triple),
                         tuple(trace_coefficient(x) for x in node.triple))


def gen_markov_child(node: GenMarkovNode, direction: str) -> GenMarkovNode:
    """Child by the trace recursion, checked against the direct breve.

    L: middle = t(left) * b - c.   R: middle = t(right) * b - a.
    Traces follow the same rule because tr(XY) = tr(X) tr(Y) - tr(X^-1 Y)
    in SL(2, Z).
    """
    a, b, c = node.num_triple
    ta, tb, tc = node.trace_triple
    child = step(node.seq_triple, direction, concat_sigma)
    if direction == "L":
        nums, traces = (a, ta * b - c, b), (ta, ta * tb - tc, tb)
    else:
        nums, traces = (b, tc * b - a, c), (tb, tc * tb - ta, tc)
    direct = breve(child.middle)
    if nums[1] != direct:
        raise ConsistencyError(
            f"recursion gives {nums[1]} but breve of the middle is {direct} at {child.code}")
    if traces[1] != trace_coefficient(child.middle):
        raise ConsistencyError(f"trace recursion failed at {child.code}")
    return GenMarkovNode(child, nums, traces)


def enumerate_gen_markov(mu: Sequence[int], nu: Sequence[int], depth: int,
                         max_depth: int = DEFAULT_MAX_DEPTH) -> Iterator[GenMarkovNode]:
    _check_depth(depth, max_depth)
    level = [gen_markov_root(mu, nu)]
    for d in range(depth + 1):
        yield from level
        if d < depth:
            level = [gen_markov_child(n, k) for n in level for k in "LR"]


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------

@dataclass
class MarkovGraphReport:
    mu: Seq
    nu: Seq
    depth: int
    evenly_prime: bool
    order_forward: bool
    order_reverse: bool
    extremal: bool
    palindromic: bool

    @property
    def order(self) -> bool:
        return self.order_forward and self.order_reverse

    @property
    def almost_markov(self) -> bool:
        return self.evenly_prime and self.order and self.extremal

    @property
    def markov(self) -> bool:
        return self.almost_markov and self.palindromic

    def to_json(self) -> dict:
        return {
            "mu": format_seq(self.mu), "nu": format_seq(self.nu), "depth": str(self.depth),
            "evenly_prime": self.evenly_prime, "order_forward": self.order_forward,
            "order_reverse": self.order_reverse, "extremal": self.extremal,
            "palindromic_to_depth": self.palindromic,
            "almost_markov": self.almost_markov, "markov": self.markov,
        }


def verify_markov_llsgraph(mu: Sequence[int], nu: Sequence[int], depth: int,
                           max_depth: int = 12) -> MarkovGraphReport:
    from .sail import is_extremal

    mu, nu = as_seq(mu), as_seq(nu)
    _require_even(mu, "mu")
    _require_even(nu, "nu")
    pal = all(is_evenly_palindromic(x)
              for n in enumerate_nodes(sequence_root(mu, nu), concat_sigma, depth, max_depth)
              for x in n.triple)
    return MarkovGraphReport(
        mu, nu, depth,
        evenly_prime=is_evenly_prime(mu) and is_evenly_prime(nu),
        order_forward=periodic_precedes(mu, nu),
        order_reverse=periodic_precedes(reverse(mu), reverse(nu)),
        extremal=is_extremal(mu).extremal and is_extremal(nu).extremal,
        palindromic=pal,
    )


def _require_ordered_pair(mu: Seq, nu: Seq) -> None:
    _require_even(mu, "mu")
    _require_even(nu, "nu")
    if not (is_evenly_prime(mu) and is_evenly_prime(nu)):
        raise DomainError("mu and nu must be evenly prime")
    if not periodic_precedes(mu, nu):
        raise DomainError(f"need <mu> strictly below <nu>; got mu={mu}, nu={nu}")


def monotonicity_check(mu: Sequence[int], nu: Sequence[int], depth: int) -> bool:
    """Farey-coordinate order of nodes agrees with skew-lex order of middles."""
    mu, nu = as_seq(mu), as_seq(nu)
    _require_ordered_pair(mu, nu)
    nodes = sorted(enumerate_nodes(sequence_root(mu, nu), concat_sigma, depth),
                   key=lambda n: farey_coordinate(n.code))
    return all(periodic_precedes(x.middle, y.middle) for x, y in zip(nodes, nodes[1:]))


def free_generation_check(mu: Sequence[int], nu: Sequence[int], depth: int) -> bool:
    """All triples to the given depth are pairwise distinct."""
    seen = set()
    for n in enumerate_nodes(sequence_root(mu, nu), concat_sigma, depth):
        if n.triple in seen:
            return False
        seen.add(n.triple)
    return True


def nested_order_check(mu: Sequence[int], nu: Sequence[int], depth: int) -> bool:
    """Every middle lies strictly between the outer elements of each ancestor triple."""
    root = sequence_root(mu, nu)
    stack = [(root, ())]
    while stack:
        node, bounds = stack.pop()
        bounds = bounds + ((node.left, node.right),)
        for lo, hi in bounds:
            if not (periodic_precedes(lo, node.middle) and periodic_precedes(node.middle, hi)):
                return False
        if node.code.depth < depth:
            for k in "LR":
                stack.append((step(node, k, concat_sigma), bounds))
    return True


def matrix_graph_check(mu: Sequence[int], nu: Sequence[int], depth: int) -> bool:
    """map_A applied to the sequence tree gives the matrix-product tree."""
    seqs = enumerate_nodes(sequence_root(mu, nu), concat_sigma, depth)
    mats = enumerate_nodes(matrix_root(mu, nu), matrix_sigma, depth)
    return all(tuple(map_A(x) for x in s.triple) == m.triple and s.code == m.code
               for s, m in zip(seqs, mats))


def reconstruct_from_middle(target: Sequence[int], mu: Sequence[int], nu: Sequence[int],
                            max_depth: int = 64, method: str = "descent") -> TripleNode | None:
    """The node of G(mu, nu) whose middle is ``target``, or None.

    ``descent`` walks down using the skew-lex order of periodisations
    (smaller goes left); middles strictly lengthen along every edge, which
    bounds the walk.  ``bfs`` scans level by level.
    """
    target, mu, nu = as_seq(target), as_seq(mu), as_seq(nu)
    _require_ordered_pair(mu, nu)
    node = sequence_root(mu, nu)
    if method == "bfs":
        for n in enumerate_nodes(node, concat_sigma, max_depth, max_depth):
            if n.middle == target:
                return n
        return None
    if method != "descent":
        raise DomainError(f"unknown method {method!r}")
    for _ in range(max_depth + 1):
        if node.middle == target:
            return node
        if len(node.middle) >= len(target):
            return None
        c = skew_lex_compare_periodic(periodisation(target), periodisation(node.middle))
        if c == 0:
            return None
        node = step(node, "L" if c < 0 else "R", concat_sigma)
    return None


# ---------------------------------------------------------------------------
# collision search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CollisionGroup:
    value: int
    codes: tuple  # FareyCode, or "mu"/"nu" for the root outer elements

    def to_json(self, mu: Seq | None = None, nu: Seq | None = None) -> dict:
        out = {"value": str(self.value),
               "codes": [c if isinstance(c, str) else c.word or "root" for c in self.codes]}
        if mu is not None:
            seqs = [middle_at(mu, nu, c) for c in self.codes]
            out["sequences"] = [format_seq(s) for s in seqs]
            out["forms"] = [map_C(s).to_json() for s in seqs]
        return out


def middle_at(mu: Sequence[int], nu: Sequence[int], code: FareyCode | str) -> Seq:
    if code == "mu":
        return as_seq(mu)
    if code == "nu":
        return as_seq(nu)
    node = sequence_root(mu, nu)
    for ch in code.word:
        node = step(node, ch, concat_sigma)
    return node.middle


def _numbers_at(root: tuple, word: str) -> tuple:
    (a, b, c), (ta, tb, tc) = root
    for ch in word:
        if ch == "L":
            a, b, c, ta, tb, tc = a, ta * b - c, b, ta, ta * tb - tc, tb
        else:
            a, b, c, ta, tb, tc = b, tc * b - a, c, tb, tc * tb - ta, tc
    return (a, b, c)


def _root_numbers(mu: Seq, nu: Seq) -> tuple:
    mid = concat(mu, nu)
    return ((breve(mu), breve(mid), breve(nu)),
            (trace_coefficient(mu), trace_coefficient(mid), trace_coefficient(nu)))


def _group(pairs) -> list[CollisionGroup]:
    buckets: dict = defaultdict(list)
    for value, idx in pairs:
        buckets[value].append(idx)
    out = []
    for value in sorted(buckets):
        idxs = sorted(set(buckets[value]), key=lambda i: (i > 0, abs(i)))
        if len(idxs) > 1:
            out.append(CollisionGroup(value, tuple(_label(i) for i in idxs)))
    return out


def _label(idx: int):
    # 0 and -1 mark the outer root elements mu and nu; they sort before every middle
    if idx == 0:
        return "mu"
    if idx == -1:
        return "nu"
    return FareyCode.from_heap_index(idx)


def _exact_middles(root: tuple, depth: int) -> Iterator[tuple[int, int]]:
    (a, b, c), (ta, tb, tc) = root
    level = [(a, b, c, ta, tb, tc)]
    for d in range(depth + 1):
        base = 1 << d
        for j, (a, b, c, ta, tb, tc) in enumerate(level):
            yield b, base + j
        if d < depth:
            nxt = []
            for a, b, c, ta, tb, tc in level:
                nxt.append((a, ta * b - c, b, ta, ta * tb - tc, tb))
                nxt.append((b, tc * b - a, c, tb, tc * tb - ta, tc))
            level = nxt


_PRIMES = (2147483647, 2147483629)


def _modular_keys(root: tuple, depth: int, split: int = 10,
                  chunk_nodes: int = 1 << 20) -> np.ndarray:
    """keys[i] = (m mod p1) * p2 + (m mod p2) for the middle m at heap index i.

    Slot 0 and the last slot are left for the caller.
    """
    size = (1 << (depth + 1)) + 1  # last slot is spare
    keys = np.zeros(size, dtype=np.int64)
    (a, b, c), (ta, tb, tc) = root

    def init(vals):
        return [np.array([v % p for v in vals], dtype=np.int64) for p in _PRIMES]

    state = [init([x]) for x in (a, b, c, ta, tb, tc)]  # state[k][prime] -> array

    def advance(st):
        a, b, c, ta, tb, tc = st
        out = [[None, None] for _ in range(6)]
        for q, p in enumerate(_PRIMES):
            A, B, C, TA, TB, TC = (x[q] for x in st)
            n = len(A)
            new = [np.empty(2 * n, dtype=np.int64) for _ in range(6)]
            # L child
            new[0][0::2] = A
            new[1][0::2] = (TA * B - C) % p
            new[2][0::2] = B
            new[3][0::2] = TA
            new[4][0::2] = (TA * TB - TC) % p
            new[5][0::2] = TB
            # R child
            new[0][1::2] = B
            new[1][1::2] = (TC * B - A) % p
            new[2][1::2] = C
            new[3][1::2] = TB
            new[4][1::2] = (TC * TB - TA) % p
            new[5][1::2] = TC
            for k in range(6):
                out[k][q] = new[k]
        return out

    def store(st, level, offset):
        mid = st[1]
        idx = (1 << level) + offset
        keys[idx:idx + len(mid[0])] = mid[0] * _PRIMES[1] + mid[1]

    top = min(depth, split)
    for d in range(top + 1):
        store(state, d, 0)
        if d < top:
            state = advance(state)
    if depth == top:
        return keys
    # expand blocks of consecutive level-``top`` nodes; their descendants
    # stay contiguous in heap order, and memory stays near chunk_nodes
    width = len(state[0][0])
    block = max(1, chunk_nodes >> (depth - top))
    for j in range(0, width, block):
        sub = [[x[q][j:j + block] for q in range(2)] for x in state]
        for k in range(1, depth - top + 1):
            sub = advance(sub)
            store(sub, top + k, j << k)
    return keys


def collision_search(mu: Sequence[int], nu: Sequence[int], depth: int,
                     method: str = "auto", include_outer: bool = False,
                     max_depth: int = DEFAULT_MAX_DEPTH) -> list[CollisionGroup]:
    """Groups of equal middle numbers (breve values) at distinct nodes up to ``depth``.

    ``exact`` enumerates big integers directly.  ``modular`` hashes every
    middle modulo two 31-bit primes, sorts the hashes, and confirms each
    candidate group with exact arithmetic along its path, so reported groups
    are always exact.  ``auto`` picks exact up to depth 16.
    """
    mu, nu = as_seq(mu), as_seq(nu)
    _require_even(mu, "mu")
    _require_even(nu, "nu")
    _check_depth(depth, max_depth)
    root = _root_numbers(mu, nu)
    outer = [(root[0][0], 0), (root[0][2], -1)] if include_outer else []
    if method == "auto":
        method = "exact" if depth <= 16 else "modular"
    if method == "exact":
        return _group(list(_exact_middles(root, depth)) + outer)
    if method != "modular":
        raise DomainError(f"unknown method {method!r}")

    keys = _modular_keys(root, depth)
    nu_slot = keys.size - 1
    # slot 0 and the final slot hold mu and nu, or unique sentinels
    if include_outer:
        for slot, v in ((0, root[0][0]), (nu_slot, root[0][2])):
            keys[slot] = (v % _PRIMES[0]) * _PRIMES[1] + v % _PRIMES[1]
    else:
        keys[0], keys[nu_slot] = -1, -2
    order = np.argsort(keys, kind="stable")
    sk = keys[order]
    dup = np.flatnonzero(sk[1:] == sk[:-1])
    cand = np.unique(np.concatenate([order[dup], order[dup + 1]])).tolist()
    del order, sk, keys
    pairs = []
    for i in cand:
        if i == 0:
            pairs.append((root[0][0], 0))
        elif i == nu_slot:
            pairs.append((root[0][2], -1))
        else:
            pairs.append((_numbers_at(root, FareyCode.from_heap_index(i).word)[1], i))
    return _group(pairs)


# ---------------------------------------------------------------------------
# serialisation
# ---------------------------------------------------------------------------

def _payload(x) -> Any:
    if isinstance(x, tuple):
        return format_seq(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, Mat2):
        return x.to_json()
    return str(x)


def node_to_json(node: TripleNode | GenMarkovNode) -> dict:
    if isinstance(node, GenMarkovNode):
        t = node.seq_triple
        out = node_to_json(t)
        out["numbers"] = [str(x) for x in node.num_triple]
        return out
    c = farey_coordinate(node.code)
    return {"code": node.code.to_json(), "coordinate": f"{c.numerator}/{c.denominator}",
            "left": _payload(node.left), "middle": _payload(node.middle),
            "right": _payload(node.right)}
