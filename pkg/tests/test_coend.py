import itertools
import json
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from doubleloop import coend, poset, preoperad
from doubleloop.errors import DomainError

from strategies import cells


@st.composite
def labelled(draw, max_n=5, max_s=3):
    a = draw(cells(max_n=max_n))
    s = draw(st.integers(0, max_s))
    labels = draw(st.lists(st.integers(0, s), min_size=a.n, max_size=a.n))
    return a, labels, s


@given(labelled(max_n=4))
def test_orbit_form_is_lexicographic_minimum(data):
    a, labels, _ = data
    orb = coend.orbit_class(a, labels)
    blocks, by_value = coend.orbit_min_bruteforce(a, labels)
    assert orb.cell.blocks == blocks
    assert orb.labels == by_value


@given(labelled())
def test_canonical_form_idempotent(data):
    a, labels, s = data
    c = coend.canonicalize(a, labels, s)
    if c.cell is not None:
        assert coend.canonicalize(c.cell, c.labels) == c
        assert 0 not in c.labels


@given(labelled(max_n=4))
def test_fast_matches_relations(data):
    a, labels, _ = data
    assert coend.canonicalize(a, labels) == coend.canonicalize_by_relations(a, labels)


@given(labelled(max_n=5), st.data())
def test_canonical_form_is_symmetric_invariant(data, d):
    a, labels, _ = data
    sigma = d.draw(st.permutations(list(range(1, a.n + 1))))
    moved = preoperad.symmetric_action(sigma, a)
    moved_labels = [labels[sigma[u - 1] - 1] for u in range(1, a.n + 1)]
    assert coend.canonicalize(moved, moved_labels) == coend.canonicalize(a, labels)


@pytest.mark.parametrize("s", range(0, 4))
def test_class_counts(s):
    # free-abelian-like count: 2^(k-1) s^k nondegenerate classes of size k
    classes = coend.enumerate_coend(s, 4)
    assert len(classes[0]) == 1
    for k in range(1, 5):
        assert len(classes[k]) == 2 ** (k - 1) * s**k
        assert len(classes[k]) == len(poset.enumerate_cells(k)) * s**k // factorial(k)


@pytest.mark.parametrize("s", range(0, 3))
def test_enumeration_by_quotient(s):
    assert coend.enumerate_coend(s, 3) == coend.enumerate_coend_by_quotient(s, 3)


@pytest.mark.parametrize("s,k", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_exactness(s, k):
    rep = coend.verify_exactness(s, k)
    assert rep.injective and rep.surjective and rep.coequalizer
    assert rep.to_json()["components"] == rep.to_json()["classes"]


def test_exactness_frozen_sizes():
    rep = coend.verify_exactness(2, 3).to_json()
    assert (rep["orbits_source"], rep["orbits_target"], rep["classes"]) == (108, 648, 171)


@given(labelled(max_n=3, max_s=2), st.data())
def test_f_map_preserves_class(data, d):
    a, labels, _ = data
    case = d.draw(st.sampled_from(preoperad.epsilon_cases(a.n)))
    orb = coend.orbit_class(a, labels)
    img = coend.f_map(case, orb)
    assert img.k == orb.k + 1
    assert coend.coend_class(img) == coend.coend_class(orb)


def test_basepoint_and_json():
    star = coend.canonicalize(poset.OrderedPartition.parse("21"), [0, 0])
    assert star.is_basepoint and str(star) == "*"
    c = coend.canonicalize(poset.OrderedPartition.parse("3|12"), [2, 0, 1])
    assert c.to_json() == {"cell": {"blocks": [[1], [2]]}, "labels": [1, 2]}
    assert coend.parse_class(json.loads(json.dumps(c.to_json()))) == c
    lines = coend.coend_jsonl(coend.enumerate_coend(1, 2)).strip().splitlines()
    assert len(lines) == 1 + 1 + 2


def test_label_validation():
    with pytest.raises(DomainError):
        coend.canonicalize(poset.OrderedPartition.parse("12"), [1])
    with pytest.raises(DomainError):
        coend.canonicalize(poset.OrderedPartition.parse("12"), [1, 4], 3)
    with pytest.raises(DomainError):
        coend.BasedSet(-1)
