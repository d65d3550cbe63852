from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from genmarkov.errors import DomainError, ResourceLimitError
from genmarkov.seqcore import breve, format_seq, parse_seq
from genmarkov.triplegraph import (FareyCode, collision_search, concat_sigma,
                                   enumerate_gen_markov, enumerate_nodes,
                                   farey_coordinate, farey_middle_identity_check,
                                   farey_root, farey_sigma, free_generation_check,
                                   gen_markov_child, gen_markov_root, nested_order_check,
                                   markov_root, markov_sigma, matrix_graph_check,
                                   monotonicity_check, node_to_json,
                                   reconstruct_from_middle, sequence_root, step,
                                   verify_markov_llsgraph)


def test_steps():
    n = step(farey_root(), "L", farey_sigma)
    assert n.triple == (Fraction(0), Fraction(1, 3), Fraction(1, 2))
    r = step(sequence_root((1, 1), (2, 2)), "R", concat_sigma)
    assert r.triple == ((1, 1, 2, 2), (1, 1, 2, 2, 2, 2), (2, 2))
    assert step(markov_root(), "L", markov_sigma).triple == (1, 13, 5)
    assert step(markov_root(), "R", markov_sigma).triple == (5, 29, 2)
    with pytest.raises(DomainError):
        step(markov_root(), "X", markov_sigma)


def test_codes():
    assert FareyCode().exponents == (0, 0)
    assert FareyCode(()).exponents == (0, 0)
    assert FareyCode.from_word("L").exponents == (1, 0)
    assert FareyCode.from_word("R").exponents == (0, 1)
    assert FareyCode.from_word("LR").exponents == (1, 1)
    assert FareyCode.from_word("RL").exponents == (0, 1, 1, 0)
    assert FareyCode.from_heap_index(1) == FareyCode()
    assert FareyCode.from_heap_index(0b1011).word == "LRR"
    with pytest.raises(DomainError):
        FareyCode((1, 0, 2, 1))
    with pytest.raises(DomainError):
        FareyCode((1, 2, 3))


def test_coordinates():
    assert farey_coordinate(FareyCode((0, 0))) == Fraction(1, 2)
    assert farey_coordinate(FareyCode((1, 0))) == Fraction(1, 3)
    assert farey_coordinate(FareyCode((0, 1))) == Fraction(2, 3)
    assert farey_coordinate(FareyCode((1, 1))) == Fraction(2, 5)


@given(st.text(alphabet="LR", max_size=12))
def test_word_roundtrip(word):
    assert FareyCode.from_word(word).word == word


@pytest.mark.parametrize("depth", [0, 3, 10])
def test_farey_middles_are_coordinates(depth):
    assert farey_middle_identity_check(depth)


def test_enumeration_counts_and_order():
    nodes = list(enumerate_nodes(markov_root(), markov_sigma, 2))
    assert len(nodes) == 7
    assert {n.middle for n in nodes} == {5, 13, 29, 34, 194, 433, 169}
    assert [n.code.word for n in nodes] == ["", "L", "R", "LL", "LR", "RL", "RR"]
    with pytest.raises(ResourceLimitError):
        list(enumerate_nodes(markov_root(), markov_sigma, 30))


def test_sequence_tree_depth1():
    mids = [n.middle for n in enumerate_nodes(sequence_root((4, 4), (11, 11)), concat_sigma, 1)]
    assert mids == [(4, 4, 11, 11), (4, 4, 4, 4, 11, 11), (4, 4, 11, 11, 11, 11)]


def test_markov_equation_to_depth_10():
    for n in enumerate_nodes(markov_root(), markov_sigma, 10):
        a, b, c = n.triple
        assert a * a + b * b + c * c == 3 * a * b * c


def test_gen_markov_children():
    root = gen_markov_root((4, 4), (11, 11))
    assert root.num_triple == (4, 191, 11)
    left = gen_markov_child(root, "L")
    assert left.num_triple[1] == 18 * 191 - 11 == 3427 == breve((4, 4, 4, 4, 11, 11))
    c = gen_markov_root((1, 1), (2, 2))
    assert c.num_triple == (1, 5, 2)
    assert gen_markov_child(c, "L").num_triple[1] == 13
    assert gen_markov_child(c, "R").num_triple[1] == 29


@pytest.mark.parametrize("mu, nu", [((1, 1), (2, 2)), ((4, 4), (11, 11)), ((1, 2, 1, 1), (3, 3))])
def test_recursion_matches_breve_everywhere(mu, nu):
    # gen_markov_child raises on any mismatch
    assert sum(1 for _ in enumerate_gen_markov(mu, nu, 8)) == 2**9 - 1


def test_verify_graph_reports():
    r = verify_markov_llsgraph((1, 1), (2, 2), 5)
    assert r.markov
    r = verify_markov_llsgraph((4, 4), (11, 11), 4)
    assert r.markov
    r = verify_markov_llsgraph((1, 1, 2, 2, 2, 2), (1, 1, 2, 2), 2)
    assert r.evenly_prime and r.extremal
    assert not r.order_reverse
    assert not r.almost_markov


def test_monotonicity():
    assert monotonicity_check((1, 1), (2, 2), 4)
    assert monotonicity_check((4, 4), (11, 11), 4)
    with pytest.raises(DomainError):
        monotonicity_check((2, 2), (2, 2), 2)


def test_structure_checks():
    assert free_generation_check((1, 1), (2, 2), 6)
    assert nested_order_check((1, 1), (2, 2), 6)
    assert matrix_graph_check((4, 4), (11, 11), 5)


def test_reconstruction():
    n = reconstruct_from_middle((1, 1, 2, 2, 2, 2), (1, 1), (2, 2))
    assert n.code == FareyCode((0, 1))
    assert n.triple == ((1, 1, 2, 2), (1, 1, 2, 2, 2, 2), (2, 2))
    assert reconstruct_from_middle((1, 1), (1, 1), (2, 2)) is None
    t = parse_seq("4,4,(11)^8")
    assert reconstruct_from_middle(t, (4, 4), (11, 11)).code.word == "RRR"


def test_reconstruction_methods_agree():
    for n in enumerate_nodes(sequence_root((1, 1), (2, 2)), concat_sigma, 5):
        a = reconstruct_from_middle(n.middle, (1, 1), (2, 2))
        b = reconstruct_from_middle(n.middle, (1, 1), (2, 2), max_depth=5, method="bfs")
        assert a == b == n


def test_collisions_small():
    groups = collision_search((4, 4), (11, 11), 8)
    assert [g.value for g in groups] == [355318099]
    assert [c.word for c in groups[0].codes] == ["RRR", "LLLLL"]
    assert collision_search((1, 1), (2, 2), 8) == []


@pytest.mark.parametrize("mu, nu", [((4, 4), (11, 11)), ((1, 1), (2, 2)), ((1, 2, 1, 1), (2, 2)),
                                    ((3, 3), (5, 5))])
def test_modular_matches_exact(mu, nu):
    for depth in (3, 11, 13):
        for outer in (False, True):
            exact = collision_search(mu, nu, depth, method="exact", include_outer=outer)
            modular = collision_search(mu, nu, depth, method="modular", include_outer=outer)
            assert exact == modular


def test_outer_keys():
    # breve(1,1,1,1) == breve(3,3) == 3, visible only when outer entries are keyed
    for method in ("exact", "modular"):
        groups = collision_search((1, 1, 1, 1), (3, 3), 6, method=method, include_outer=True)
        assert groups[0].value == 3 and groups[0].codes == ("mu", "nu")
        assert collision_search((1, 1, 1, 1), (3, 3), 6, method=method) == groups[1:]
    assert collision_search((1, 1), (2, 2), 6, include_outer=True) == []


def test_json_lines():
    root = gen_markov_root((4, 4), (11, 11))
    row = node_to_json(root)
    assert row == {"code": ["0", "0"], "coordinate": "1/2", "left": "4,4",
                   "middle": "4,4,11,11", "right": "11,11", "numbers": ["4", "191", "11"]}
    assert node_to_json(farey_root())["middle"] == "1/2"
