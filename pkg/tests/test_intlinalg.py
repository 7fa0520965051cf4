import pytest
from hypothesis import given
from hypothesis import strategies as st

sympy = pytest.importorskip("sympy")
from sympy.matrices.normalforms import smith_normal_form  # noqa: E402

from doubleloop import intlinalg  # noqa: E402


def matrices(max_dim=5, bound=6):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def sympy_invariants(m):
    snf = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    return sorted(abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0)


@given(matrices())
def test_smith_against_sympy(m):
    assert sorted(intlinalg.smith_invariants(m)) == sympy_invariants(m)


@given(matrices())
def test_sparse_and_dense_agree(m):
    sparse = {(r, c): v for r, row in enumerate(m) for c, v in enumerate(row) if v}
    assert intlinalg.smith_invariants(sparse, len(m), len(m[0])) == intlinalg.smith_invariants(m)


def test_smith_frozen():
    assert intlinalg.smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert intlinalg.smith_invariants([[0, 0], [0, 0]]) == []


@given(matrices(4, 4))
def test_kernel(m):
    n = len(m[0])
    ker = intlinalg.integer_kernel(m, n)
    for x in ker:
        assert all(sum(a * b for a, b in zip(row, x)) == 0 for row in m)
    assert len(ker) == n - intlinalg.rank(m)
    # saturated: the kernel lattice is a direct summand
    if ker:
        assert all(d == 1 for d in intlinalg.smith_invariants(ker))


@given(matrices(4, 5), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_lattice_membership(gens, coeffs):
    dim = len(gens[0])
    v = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(dim)]
    hnf = intlinalg.hermite_rows(gens, dim)
    assert intlinalg.in_lattice(hnf, v)
    sol = intlinalg.integer_solve(gens, v)
    assert sol is not None
    assert [sum(c * g[i] for c, g in zip(sol, gens)) for i in range(dim)] == v
    assert intlinalg.same_lattice(gens, hnf, dim)


def test_non_member():
    hnf = intlinalg.hermite_rows([[2, 0], [0, 3]], 2)
    assert not intlinalg.in_lattice(hnf, [1, 0])
    assert intlinalg.integer_solve([[2, 0], [0, 3]], [1, 0]) is None
