import pytest
from hypothesis import given, strategies as st

from genmarkov.errors import DomainError
from genmarkov.matform import (IDENTITY, Mat2, QuadForm, RadicalRatio, elementary,
                               form_to_seq, map_A, map_B, map_C, map_E, map_F, map_W,
                               map_X, map_Z, mat_ops, reduced_matrix)
from genmarkov.seqcore import breve, parse_seq
from genmarkov.surd import Surd

even_seqs = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.integers(1, 9), min_size=2 * n, max_size=2 * n).map(tuple))

TABLE = [
    ((2, 2, 3, 3), (7, 23, 17, 56), (17, 49, -23), (3965, 17)),
    ((2, 2, 3, 3, 3, 3), (76, 251, 185, 611), (185, 535, -251), (471965, 185)),
    ((2, 2, 2, 2, 3, 3), (41, 135, 99, 326), (99, 285, -135), (14965, 33)),
    ((2, 2, 3, 3, 2, 2, 3, 3, 3, 3), (4787, 15810, 11652, 38483), (11652, 33696, -15810),
     (13002034, 971)),
]


@pytest.mark.parametrize("s, mat, form, ratio", TABLE)
def test_example_rows(s, mat, form, ratio):
    assert map_A(s) == Mat2(*mat)
    assert map_C(s) == QuadForm(*form)
    w = map_W(s)
    assert (w.N, w.d) == ratio


@pytest.mark.parametrize("p", range(1, 8))
def test_pp_row(p):
    assert map_A((p, p)) == Mat2(1, p, p, p * p + 1)
    assert map_C((p, p)) == QuadForm(p, p * p, -p)
    # the Markov element of <p> is p + 2/[<p>] = sqrt(p^2 + 4)
    x = Surd(p) + 2 * Surd(p, 1, p * p + 4, 2).recip()
    assert map_W((p, p)).to_surd() == x == Surd(0, 1, p * p + 4)


def test_counterexample_forms():
    a, b = parse_seq("4,4,(11)^8"), parse_seq("(4)^12,11,11")
    assert map_C(a) == QuadForm(355318099, 3856825285, -928389367)
    assert map_C(b) == QuadForm(355318099, 3856242857, -930136651)
    c, d = parse_seq("4,4,(11)^14"), parse_seq("(4)^22,11,11")
    assert map_C(c) == QuadForm(661068612553111, 7175615729089857, -1727266560524267)
    assert map_C(d) == QuadForm(661068612553111, 7174532122960713, -1730517378911699)


def test_xi_form():
    f = map_C((1, 1, 2, 2, 2, 2, 1, 1, 2, 2))
    assert f == QuadForm(437, 787, -611)
    assert f(17, 29) == 433


def test_matrix_basics():
    assert elementary(3) @ elementary(4) == reduced_matrix((3, 4))
    assert (IDENTITY @ map_A((1, 1))) == map_A((1, 1))
    assert mat_ops(map_A((1, 1)), "trace") == 3
    assert mat_ops(map_A((1, 1)), "det") == 1
    with pytest.raises(DomainError):
        Mat2(1, 2, 3, 4)
    assert map_A((1, 1)).to_json() == [["1", "1"], ["1", "2"]]


def test_odd_length_rejected():
    for f in (map_A, map_C, map_W):
        with pytest.raises(DomainError):
            f((1, 2, 3))
    assert reduced_matrix((1, 2, 3)).det == -1


def test_map_F_errors():
    with pytest.raises(DomainError):
        map_F(QuadForm(2, 0, 1))  # negative
    with pytest.raises(DomainError):
        map_F(QuadForm(1, 0, -1))  # 8 not a square


def test_map_B_domain():
    with pytest.raises(DomainError):
        map_B(Mat2(0, 1, 1, 0) @ Mat2(0, 1, 1, 0) @ Mat2(1, 1, 0, 1))
    assert map_B(map_A((1, 1))) == (1, 1)


def test_radical_ratio_canonical():
    assert RadicalRatio(32, 2) == RadicalRatio(8, 1)
    assert RadicalRatio(32, 2).raw == (8, 1)
    assert RadicalRatio(3965 * 9, 51).raw == (3965, 17)
    assert str(RadicalRatio(221, 5)) == "sqrt(221)/5"
    assert RadicalRatio(5, 1) < RadicalRatio(8, 1)
    assert RadicalRatio(221, 5).to_json(6)["decimal"] == "2.973214"


@given(even_seqs)
def test_B_after_A_is_identity(s):
    assert map_B(map_A(s)) == s


@given(even_seqs)
def test_E_after_A_is_C(s):
    assert map_E(map_A(s)) == map_C(s)
    assert map_F(map_C(s)) == map_A(s)
    assert form_to_seq(map_C(s)) == s


@given(even_seqs)
def test_three_routes_to_spectrum_value(s):
    assert map_W(s) == map_X(map_C(s)) == map_Z(map_A(s))


@given(even_seqs)
def test_lower_left_is_breve(s):
    m = map_A(s)
    assert m.b == breve(s) == map_C(s)(1, 0)
    assert m.det == 1


@given(even_seqs)
def test_eigenline_slopes_are_roots_of_form(s):
    from genmarkov.surd import neg_periodic_tail, periodic_cf_value
    f = map_C(s)
    for slope in (periodic_cf_value(s), neg_periodic_tail(s)):
        # f(1, slope) == 0 exactly
        assert f.A + f.B * slope + f.C * slope * slope == 0


@given(st.integers(0, 5000), st.integers(1, 300))
def test_radical_ratio_smallest_denominator(N, d):
    r = RadicalRatio(N, d)
    least = next(e for e in range(1, d + 1) if (N * e * e) % (d * d) == 0)
    assert r.d == least
    assert r.N * d * d == N * r.d * r.d
