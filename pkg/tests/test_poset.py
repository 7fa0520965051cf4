import itertools
from math import comb, factorial

import pytest
from hypothesis import given

from doubleloop import poset
from doubleloop.errors import BoundsError, DomainError
from doubleloop.poset import OrderedPartition, leq, leq_oracle

from strategies import cells


def brute_force_cells(n):
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        for cuts in itertools.product([0, 1], repeat=n - 1):
            blocks, cur = [], [perm[0]]
            for v, c in zip(perm[1:], cuts):
                if c:
                    blocks.append(tuple(cur))
                    cur = []
                cur.append(v)
            blocks.append(tuple(cur))
            out.append(OrderedPartition(blocks))
    return out


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_matches_brute_force(n):
    assert sorted(poset.enumerate_cells(n), key=str) == sorted(brute_force_cells(n), key=str)


@pytest.mark.parametrize("n", range(1, 9))
def test_census_formula(n):
    census = poset.cell_census(n)
    assert [census[i] for i in range(n)] == [factorial(n) * comb(n - 1, i) for i in range(n)]


def test_small_levels_frozen():
    assert {str(c) for c in poset.enumerate_cells(2)} == {"1|2", "2|1", "12", "21"}
    assert len(poset.enumerate_cells(3, 2)) == 6


def test_parse_and_str():
    a = OrderedPartition.parse("235|741|6")
    assert a.blocks == ((2, 3, 5), (7, 4, 1), (6,))
    assert a.degree == 4
    assert str(a) == "235|741|6"
    assert OrderedPartition.parse("2,3|1") == OrderedPartition([[2, 3], [1]])


@pytest.mark.parametrize("bad", [[[1], []], [[1, 1]], [[2]], []])
def test_invalid_cells_rejected(bad):
    with pytest.raises(DomainError):
        OrderedPartition(bad)


def test_bounds_enforced():
    with pytest.raises(BoundsError):
        poset.enumerate_cells(poset.MAX_N + 1)


@given(cells(max_n=7))
def test_pair_form_round_trip(a):
    perm, surj = a.pair_form()
    assert OrderedPartition.from_pair(perm, surj) == a
    assert OrderedPartition.from_json(a.to_json()) == a
    assert OrderedPartition.parse(str(a)) == a


@given(cells(max_n=6))
def test_covers_are_one_dimension_up(a):
    for c in poset.upper_covers(a):
        assert c.degree == a.degree + 1
        assert leq(a, c) and not leq(c, a)


@given(cells(max_n=5), cells(max_n=5))
def test_leq_matches_oracle(a, b):
    if a.n == b.n:
        assert leq(a, b) == leq_oracle(a, b)


@given(cells(max_n=5))
def test_top_cells_above(a):
    # every cell lies below exactly the top cells whose word is a shuffle of its blocks
    tops = [c for c in poset.enumerate_cells(a.n, a.n - 1) if leq(a, c)]
    expected = {tuple(w) for w in itertools.permutations(range(1, a.n + 1))
                if all(
                    [x for x in w if x in set(b)] == list(b) for b in a.blocks
                )}
    assert {c.word for c in tops} == expected


def test_hasse_edges_against_oracle():
    for n in range(1, 5):
        cl = poset.enumerate_cells(n)
        edges = {(a, b) for a in cl for b in cl if b.degree == a.degree + 1 and leq_oracle(a, b)}
        assert set(poset.cover_relations(n)) == edges


def test_hasse_dot_shape():
    dot = poset.hasse_dot(3)
    assert dot.startswith("digraph L3 {")
    assert dot.count("->") == len(poset.cover_relations(3))
