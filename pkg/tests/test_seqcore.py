import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from genmarkov.errors import DomainError
from genmarkov.seqcore import (EventuallyPeriodicSeq, as_seq, breve, cf_to_rational,
                               concat, continuant, format_seq, is_cyclically_equivalent,
                               is_evenly_palindromic, is_evenly_prime, parse_seq,
                               partial_continuant, periodic_precedes, periodisation,
                               rational_to_cf, reverse, skew_lex_compare_periodic,
                               trace_coefficient)
from genmarkov.surd import periodic_cf_value

seqs = st.lists(st.integers(1, 9), min_size=1, max_size=12).map(tuple)
even_seqs = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.integers(1, 9), min_size=2 * n, max_size=2 * n).map(tuple))


def test_continuant_small_values():
    assert continuant(()) == 1
    assert continuant((7,)) == 7
    assert continuant((2, 2, 3, 3)) == 56
    assert breve((2, 2, 3, 3)) == 17
    assert trace_coefficient((2, 2, 3, 3)) == 63


def test_partial_continuant_edges():
    s = (2, 2, 3, 3)
    assert partial_continuant(s, 2, 4) == 23
    assert partial_continuant(s, 3, 2) == 1
    assert partial_continuant(s, 3, 1) == 0
    with pytest.raises(DomainError):
        partial_continuant(s, 1, 7)


def test_counterexample_breves():
    a = parse_seq("4,4,(11)^8")
    b = parse_seq("(4)^12,11,11")
    assert breve(a) == breve(b) == 355318099
    assert not is_cyclically_equivalent(a, b)
    assert breve(parse_seq("4,4,(11)^14")) == 661068612553111


def test_elements_must_be_positive():
    with pytest.raises(DomainError):
        as_seq((1, 0, 2))


@given(seqs)
def test_continuant_is_reversal_symmetric(s):
    assert continuant(s) == continuant(reverse(s))


@given(seqs, st.data())
def test_splitting_identity(s, data):
    n = len(s)
    k = data.draw(st.integers(1, n))
    lhs = partial_continuant(s, 1, n)
    rhs = (partial_continuant(s, 1, k) * partial_continuant(s, k + 1, n)
           + partial_continuant(s, 1, k - 1) * partial_continuant(s, k + 2, n))
    assert lhs == rhs


@given(seqs)
def test_trace_times_breve_is_breve_of_square(s):
    assert trace_coefficient(s) * breve(s) == breve(concat(s, s))


@given(even_seqs, seqs, seqs)
def test_three_part_identity(alpha, lam, rho):
    lhs = breve(lam + alpha + alpha + rho) + breve(lam + rho)
    assert lhs == trace_coefficient(alpha) * breve(lam + alpha + rho)


def test_shape_formula_exhaustive():
    # alpha = (1, p, mid, p+1, q) with mid palindromic
    mids = [()]
    for L in range(1, 5):
        half = (L + 1) // 2
        for h in itertools.product(range(1, 6), repeat=half):
            mids.append(h + tuple(reversed(h[: L // 2])))
    count = 0
    for p in range(1, 6):
        for q in range(1, 6):
            for mid in mids:
                a = (1, p) + mid + (p + 1, q)
                assert trace_coefficient(a) == (q + 1) * breve(a)
                count += 1
    assert count == 25 * len(mids)


def test_rational_to_cf_parities():
    assert rational_to_cf(17, 7, "odd") == (2, 2, 3)
    assert rational_to_cf(5, 2, "odd") == (2, 1, 1)
    assert rational_to_cf(3, 1) == (3,)
    assert rational_to_cf(12, 7, "even") == (1, 1, 2, 2)
    assert cf_to_rational((2, 2, 3)) == Fraction(17, 7)
    assert cf_to_rational((1, 1, 2, 2)) == Fraction(12, 7)


@given(st.integers(1, 10**6), st.integers(1, 10**6), st.sampled_from(["canonical", "odd", "even"]))
def test_cf_roundtrip(p, q, parity):
    cf = rational_to_cf(p, q, parity)
    assert cf_to_rational(cf) == Fraction(p, q)
    if parity == "odd":
        assert len(cf) % 2 == 1
    if parity == "even":
        assert len(cf) % 2 == 0


def test_skew_lex_order_examples():
    assert periodic_precedes((1, 1, 1, 1, 2, 2), (1, 1, 2, 2))
    assert periodic_precedes((4, 4), (11, 11))
    assert not periodic_precedes((2, 2), (2, 2))
    # the two values differ in the first element only
    a = EventuallyPeriodicSeq((3,), (1, 2))
    b = EventuallyPeriodicSeq((), (1, 2))
    assert skew_lex_compare_periodic(a, b) == 1


@settings(max_examples=300)
@given(even_seqs, even_seqs)
def test_skew_lex_matches_value_order(a, b):
    c = skew_lex_compare_periodic(periodisation(a), periodisation(b))
    assert c == periodic_cf_value(a).compare(periodic_cf_value(b))


@settings(max_examples=300)
@given(even_seqs, even_seqs)
def test_concatenation_lies_between(a, b):
    if not (is_evenly_prime(a) and is_evenly_prime(b) and periodic_precedes(a, b)):
        return
    assert periodic_precedes(a, a + b) and periodic_precedes(a + b, b)
    assert periodic_precedes(a, b + a) and periodic_precedes(b + a, b)


def test_evenness_predicates():
    assert is_evenly_prime((1, 1, 2, 2))
    assert not is_evenly_prime((1, 2, 1, 2))
    assert is_evenly_prime((1, 1, 1, 1)) is False
    assert is_evenly_palindromic((1, 1, 2, 2))
    assert is_evenly_palindromic((4, 4, 11, 11, 11, 11))
    assert not is_evenly_palindromic((1, 2, 3, 4))
    with pytest.raises(DomainError):
        is_evenly_prime((1, 2, 3))


def test_literals():
    assert parse_seq("4,4,(11)^8") == (4, 4) + (11,) * 8
    assert parse_seq("(1,2)^2,3") == (1, 2, 1, 2, 3)
    assert format_seq((4, 4) + (11,) * 8) == "4,4,(11)^8"
    for bad in ("", "1,,2", "0", "a", "1,"):
        with pytest.raises(DomainError):
            parse_seq(bad)


@given(seqs)
def test_literal_roundtrip(s):
    assert parse_seq(format_seq(s)) == s
