import pytest
from hypothesis import given

from doubleloop import chains, poset
from doubleloop.errors import BoundsError

from strategies import cells


def arnold_betti(n):
    # Poincaré polynomial prod_{j<n} (1 + j t) of the ordered configuration space of the plane
    coeffs = [1]
    for j in range(1, n):
        coeffs = [a + j * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return coeffs


# integral homology of the braid groups B_k, lowest degrees first
BRAID_HOMOLOGY = {
    1: ([1], [[]]),
    2: ([1, 1], [[], []]),
    3: ([1, 1, 0], [[], [], []]),
    4: ([1, 1, 0, 0], [[], [], [2], []]),
    5: ([1, 1, 0, 0, 0], [[], [], [2], [], []]),
}


@pytest.mark.parametrize("n", range(1, 6))
def test_F_homology_matches_configuration_space(n):
    h = chains.homology(chains.build_F_complex(n))
    assert h.betti == arnold_betti(n)
    assert h.torsion_free


@pytest.mark.parametrize("n", range(1, 4))
def test_F_matches_order_complex(n):
    assert chains.homology(chains.build_F_complex(n)) == chains.order_complex_homology(n)


@pytest.mark.parametrize("k", range(1, 6))
def test_D_with_one_label_is_braid_group(k):
    h = chains.homology(chains.build_D_complex(k, 1))
    assert (h.betti, h.torsion) == BRAID_HOMOLOGY[k]


@pytest.mark.parametrize("k,s", [(k, s) for k in range(1, 5) for s in range(0, 4)])
def test_D_squares_to_zero(k, s):
    cx = chains.build_D_complex(k, s)
    assert not any(cx.squares().values())
    h = chains.homology(cx)
    assert sum((-1) ** d * b for d, b in enumerate(h.betti)) == cx.euler_characteristic()


def test_D_empty_label_set():
    cx = chains.build_D_complex(3, 0)
    assert all(not b for b in cx.basis)


@given(cells(max_n=6))
def test_facet_count(a):
    fs = chains.facets(a)
    assert len(fs) == sum(2 ** len(b) - 2 for b in a.blocks)
    assert all(f.degree == a.degree - 1 and poset.leq(f, a) for f, _ in fs)
    assert all(sign in (1, -1) for _, sign in fs)


@pytest.mark.parametrize("n", range(1, 6))
def test_F_ranks_and_euler(n):
    cx = chains.build_F_complex(n)
    assert [len(b) for b in cx.basis] == [poset.expected_cell_count(n, d) for d in range(n)]
    assert cx.euler_characteristic() == sum((-1) ** d * b for d, b in enumerate(arnold_betti(n)))


@pytest.mark.parametrize("k", range(2, 6))
def test_shuffle_boundary(k):
    rep = chains.shuffle_boundary_check(k)
    assert rep.mod2_ok and rep.integral_ok


def test_ladder_and_collapse():
    cx = chains.build_F_complex(4)
    assert chains.ladder_composites(cx).ok
    col = chains.top_collapse(cx)
    assert (col.top, col.rank, col.identity_on_top) == (3, 24, True)


def test_simplicial_boundary_of_triangle():
    tri = [[(0,), (1,), (2,)], [(0, 1), (0, 2), (1, 2)], [(0, 1, 2)]]
    h = chains.homology(chains.simplicial_chain_complex(tri))
    assert h.betti == [1, 0, 0]


def test_bounds():
    with pytest.raises(BoundsError):
        chains.build_F_complex(chains.MAX_F + 1)
    with pytest.raises(BoundsError):
        chains.order_complex(chains.MAX_ORDER_COMPLEX + 1)
    with pytest.raises(BoundsError):
        chains.shuffle_boundary_check(6)
