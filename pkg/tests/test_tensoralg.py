import itertools
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from doubleloop import tensoralg
from doubleloop.errors import BoundsError, DomainError
from doubleloop.tensoralg import SplitTensorElement, TensorElement

sympy = pytest.importorskip("sympy")


def test_shuffle_example():
    el = tensoralg.shuffle_map((1, 2, 3), (1, 2))
    assert el.terms == {((1,), (2, 3)): 1, ((2,), (1, 3)): 1, ((3,), (1, 2)): 1}


@given(st.lists(st.integers(1, 4), min_size=2, max_size=7))
def test_shuffle_term_counts(w):
    k = len(w)
    assert tensoralg.shuffle_map(w).term_count() == 2**k - 2
    for i in range(1, k):
        assert tensoralg.shuffle_map(w, (i, k - i)).term_count() == comb(k, i)


@given(st.lists(st.integers(1, 4), min_size=2, max_size=7))
def test_coproduct_quotient_is_shuffle_map(w):
    assert tensoralg.reduced_coproduct_quotient(w) == tensoralg.shuffle_map(w)


@given(st.lists(st.integers(1, 3), max_size=5), st.lists(st.integers(1, 3), max_size=5))
def test_coproduct_is_multiplicative(u, v):
    # the coproduct is an algebra map for the componentwise concatenation product
    cu, cv = tensoralg.coproduct(u), tensoralg.coproduct(v)
    prod: dict = {}
    for (a, b), x in cu.items():
        for (c, d), y in cv.items():
            key = (a + c, b + d)
            prod[key] = prod.get(key, 0) + x * y
    assert tensoralg.coproduct(u + v) == prod


def sympy_lie_rank(n):
    words = {w: i for i, w in enumerate(itertools.permutations(range(1, n + 1)))}
    rows = []
    for perm in itertools.permutations(range(1, n + 1)):
        row = [0] * len(words)
        for w, c in tensoralg.left_normed_bracket(perm).terms.items():
            row[words[w]] = c
        rows.append(row)
    return sympy.Matrix(rows).rank()


@pytest.mark.parametrize("n", range(2, 6))
def test_lie_rank(n):
    r = tensoralg.lie_rank(n)
    assert r.rank == factorial(n - 1) == sympy_lie_rank(n)
    assert r.direct_summand


def test_bracket_expansion():
    assert tensoralg.left_normed_bracket((1, 2)).terms == {(1, 2): 1, (2, 1): -1}
    b = tensoralg.left_normed_bracket((1, 2, 3)).terms
    assert b == {(1, 2, 3): 1, (2, 1, 3): -1, (3, 1, 2): -1, (3, 2, 1): 1}


def test_algebra_ops():
    x, y = TensorElement(2, {(1,): 1}), TensorElement(2, {(2,): 1})
    assert (x * y - y * x).terms == {(1, 2): 1, (2, 1): -1}
    assert (x + x.scale(-1)).terms == {}


def test_validation():
    with pytest.raises(DomainError):
        tensoralg.shuffle_map((1,))
    with pytest.raises(DomainError):
        tensoralg.shuffle_map((1, 2, 3), (2, 2))
    with pytest.raises(DomainError):
        TensorElement(1, {(2,): 1})
    with pytest.raises(DomainError):
        SplitTensorElement({((), (1,)): 1})
    with pytest.raises(BoundsError):
        tensoralg.lie_rank(7)
