import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from doubleloop import poset, preoperad
from doubleloop.errors import BoundsError, DomainError, InputError
from doubleloop.poset import OrderedPartition
from doubleloop.preoperad import BasedInjection, EpsilonCase, pullback, pullback_by_restriction

from strategies import cells, injections


@st.composite
def cell_and_injection(draw):
    a = draw(cells(max_n=6))
    k = draw(st.integers(1, a.n))
    images = draw(st.permutations(list(range(1, a.n + 1))))[:k]
    return a, BasedInjection(images, a.n)


def test_pullback_examples():
    a = OrderedPartition.parse("31|2")
    # keep values 1 and 3 in word order, relabelled to 1 and 2
    assert str(pullback(BasedInjection([1, 3], 3), a)) == "21"
    assert str(pullback(BasedInjection([2], 3), a)) == "1"
    assert str(pullback(BasedInjection([2, 1], 3), a)) == "2|1"


@given(cell_and_injection())
def test_pullback_agrees_with_restriction(pair):
    a, phi = pair
    assert pullback(phi, a) == pullback_by_restriction(phi, a)


@given(cell_and_injection(), st.data())
def test_functoriality(pair, data):
    a, phi = pair
    k2 = data.draw(st.integers(1, phi.k))
    images = data.draw(st.permutations(list(range(1, phi.k + 1))))[:k2]
    psi = BasedInjection(images, phi.k)
    assert pullback(phi.compose(psi), a) == pullback(psi, pullback(phi, a))


@given(cells(max_n=5), cells(max_n=5), st.data())
def test_order_preserved(a, b, data):
    if a.n != b.n or not poset.leq(a, b):
        return
    k = data.draw(st.integers(1, a.n))
    images = data.draw(st.permutations(list(range(1, a.n + 1))))[:k]
    phi = BasedInjection(images, a.n)
    assert poset.leq(pullback(phi, a), pullback(phi, b))


def test_injection_validation():
    with pytest.raises(DomainError):
        BasedInjection([1, 1], 2)
    with pytest.raises(DomainError):
        BasedInjection([3], 2)
    with pytest.raises(BoundsError):
        preoperad.degeneracy(5, 3)
    with pytest.raises(InputError):
        BasedInjection.from_json({"k": 3, "l": 3, "images": [1, 2]})


@given(injections(4))
def test_decomposition(phi):
    sharp, inc = preoperad.decompose_injection(phi)
    assert inc.is_increasing()
    assert inc.compose(sharp) == phi


def test_epsilon_aliases():
    assert EpsilonCase(0, 2, -1, 2) == EpsilonCase(0, 2, 0, 2)
    assert EpsilonCase(1, 0, 1, 2) == EpsilonCase(1, 0, 0, 2)
    # (k+1)^2 index pairs, three signs, minus the two alias families
    for k in range(1, 5):
        assert len(preoperad.epsilon_cases(k)) == 3 * (k + 1) ** 2 - 2 * (k + 1)


def test_insert_examples():
    b = OrderedPartition.parse("1|2")
    assert str(preoperad.insert(EpsilonCase(0, 1, 0, 2), b)) == "2|1|3"
    assert str(preoperad.insert(EpsilonCase(0, 1, 1, 2), b)) == "21|3"
    assert str(preoperad.insert(EpsilonCase(0, 1, -1, 2), b)) == "2|13"
    assert str(preoperad.insert(EpsilonCase(2, 2, 0, 2), b)) == "1|2|3"


@given(cells(max_n=5), st.data())
def test_degeneracy_retracts_insertion(b, data):
    c = data.draw(st.sampled_from(preoperad.epsilon_cases(b.n)))
    e = preoperad.insert(c, b)
    assert e.n == b.n + 1
    assert preoperad.degeneracy_pullback(c.i, e) == b


OFF_DIAGONAL = {k: [p for p in preoperad.insertion_relation_pairs(k) if p[1][1] != p[1][4]] for k in range(1, 5)}


@given(cells(max_n=4), st.data())
def test_insertion_relations_hold_off_the_diagonal(b, data):
    # both families hold whenever the two insertion slots differ
    _, _, (l_in, l_out), (r_in, r_out) = data.draw(st.sampled_from(OFF_DIAGONAL[b.n]))
    left = preoperad.insert(l_out, preoperad.insert(l_in, b))
    right = preoperad.insert(r_out, preoperad.insert(r_in, b))
    assert left == right


def test_insertion_relation_known_counterexample():
    # adjacent insertions at the same slot: the block assignment depends on the order
    reps = preoperad.check_insertion_relations(1)
    first = reps[1].failures[0]
    assert tuple(first["params"]) == (0, 0, -1, 0, 0, 0)
    assert (first["cell"], first["lhs"], first["rhs"]) == ("1", "12|3", "123")


def test_morphism_check_identity_family():
    fam = preoperad.family_from_function(lambda a: a, 4)
    rep = preoperad.check_preoperad_morphism(fam, 4)
    assert rep.is_morphism and rep.idempotent
    assert preoperad.family_from_json(preoperad.family_to_json(fam)) == fam


def test_block_reversal_is_a_morphism():
    fam = preoperad.family_from_function(lambda a: OrderedPartition(a.blocks[::-1]), 4)
    rep = preoperad.check_preoperad_morphism(fam, 4)
    assert rep.is_morphism
    assert not rep.idempotent


def test_collapse_to_top_cell_breaks_order():
    fam = preoperad.family_from_function(lambda a: OrderedPartition([a.word]), 3)
    rep = preoperad.check_preoperad_morphism(fam, 3)
    assert rep.natural and not rep.order_preserving
    assert rep.counterexample["kind"] == "order"


def test_incomplete_family_rejected():
    with pytest.raises(InputError):
        preoperad.check_preoperad_morphism({1: {}}, 1)


def test_lambda_relations_small():
    assert preoperad.check_lambda_relations(3).ok


def test_law_checks_seeded():
    r1 = preoperad.check_functoriality(3, random.Random(5), 50, 5).to_json()
    r2 = preoperad.check_functoriality(3, random.Random(5), 50, 5).to_json()
    assert r1 == r2 and r1["ok"]
