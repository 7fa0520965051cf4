from hypothesis import given
from hypothesis import strategies as st

import pytest

from doubleloop import nilpotent
from doubleloop.errors import BoundsError
from doubleloop.nilpotent import NilpotentQuotient, Subgroup


def mobius(n):
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


def witt(r, n):
    return sum(mobius(d) * r ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


letters = st.lists(st.tuples(st.integers(1, 3), st.sampled_from([-2, -1, 1, 2])), max_size=6)


def test_magnus_commutator():
    assert str(nilpotent.magnus_eval([(1, 1), (2, 1), (1, -1), (2, -1)], 2)) == "1 + X1X2 - X2X1"
    assert str(nilpotent.magnus_eval([(1, -1)], 3)) == "1 - X1 + X1X1 - X1X1X1"


@pytest.mark.parametrize("r,n", [(r, n) for r in range(1, 4) for n in range(1, 7)])
def test_lyndon_counts_match_witt(r, n):
    assert len(nilpotent.lyndon_words(r, n)) == witt(r, n)


@given(letters, letters, st.integers(1, 4))
def test_magnus_is_multiplicative(u, v, c):
    G = NilpotentQuotient(3, c)
    lhs = nilpotent.magnus_eval(u + v, c).as_dict()
    rhs = G.mul(nilpotent.magnus_eval(u, c).as_dict(), nilpotent.magnus_eval(v, c).as_dict())
    assert lhs == rhs


@given(letters, st.integers(1, 4))
def test_malcev_round_trip(u, c):
    G = NilpotentQuotient(3, c)
    a = G.from_letters(u)
    assert G.from_coordinates(G.coordinates(a)) == a
    assert G.mul(a, G.inv(a)) == G.one()


@given(letters, letters)
def test_class_two_commutators_are_central(u, v):
    G = NilpotentQuotient(3, 2)
    a, b = G.from_letters(u), G.from_letters(v)
    z = G.comm(a, b)
    for j in range(1, 4):
        assert G.conj(z, G.gen(j)) == z


def test_lie_polynomial_leading_term():
    for w in nilpotent.lyndon_words(2, 4):
        terms = dict(nilpotent.lie_polynomial(w))
        assert min(terms) == w and terms[w] == 1


def test_subgroup_membership():
    G = NilpotentQuotient(2, 2)
    x, y = G.gen(1), G.gen(2)
    H = Subgroup(G, [G.pow(x, 2)])
    assert H.contains(G.pow(x, 6))
    assert not H.contains(x)
    N = Subgroup(G, [G.comm(x, y)], normal=True)
    assert N.hirsch_length() == 1
    assert N.contains(G.pow(G.comm(y, x), 3))
    # normal closure of x in class 2, rank 2: x and [x, y]
    assert Subgroup(G, [x], normal=True).hirsch_length() == 2


def test_bounds():
    with pytest.raises(BoundsError):
        NilpotentQuotient(2, nilpotent.MAX_CLASS + 1)
