import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from doubleloop import bidelta
from doubleloop.bidelta import AbelianInstance
from doubleloop.errors import BoundsError, DomainError, InputError


Z = bidelta.build_phi0("Z")
Z2 = bidelta.build_phi0("Z/2")


def test_reduction_and_faces():
    w = Z.parse_word(2, "1,2,-1,-2")
    assert [(c, p) for c, p in w.letters] == [(1, 1), (2, 1), (1, -1), (2, -1)]
    assert Z.is_identity(Z.face(0, w))  # deleting x1 leaves x2 x2^-1
    assert Z.face(2, w) == w.__class__(1, ((1, 1), (2, 1), (1, -1), (2, -1)))
    assert Z.coface(1, Z.parse_word(1, "1^2,2")).letters == ((1, 2), (3, 1))
    assert Z2.parse_word(0, "1,1").letters == ()


@given(st.integers(0, 4), st.integers(0, 10**6))
def test_relation_table_free_products(level, seed):
    for inst in (Z, Z2):
        rep = bidelta.check_relation_table(inst, level + 1, random.Random(seed), samples=3)
        assert rep.ok


@pytest.mark.parametrize("max_len", [1, 2])
def test_relation_table_abelian(max_len):
    assert bidelta.check_relation_table(AbelianInstance(max_len), 4).ok


def test_derived_generators():
    for n in range(0, 5):
        for j in range(n + 1):
            assert bidelta.derived_generator(Z, j, n) == Z.generator(j + 1, n)


def test_cohen_and_cycle_ranks():
    # on the abelianised instance h_n is the diagonal line plus the Moore cycles; Z_n = 0 for n >= 1
    inst = bidelta.abelianized_phi0()
    for n in range(1, 6):
        assert len(inst.cycle_basis(n)) == 0
        assert len(inst.cohen_basis(n)) == 1


def test_jh_index_sets_order():
    assert bidelta.jh_index_sets(1, 2) == ((0,), (1,), (2,))
    assert bidelta.jh_index_sets(0, 2) == ((0, 1), (0, 2), (1, 2))
    assert bidelta.jh_index_sets(3, 2) == ()
    for k in range(4):
        for n in range(k, 6):
            assert len(bidelta.jh_index_sets(k, n)) == comb(n + 1, n - k)


def test_james_hopf_on_generator():
    inst = bidelta.abelianized_phi0()
    x = {(1,): 1}
    # H_{0,1} sends the level-0 generator to the sum of both level-1 generators
    assert bidelta.james_hopf(0, 1, x, inst) == {(1,): 1, (2,): 1}
    assert bidelta.james_hopf(2, 1, x, inst) == {}


@pytest.mark.parametrize("max_len,levels", [(1, 5), (2, 4)])
def test_jh_suite(max_len, levels):
    rep = bidelta.verify_jh_identities(AbelianInstance(max_len), levels, random.Random(1), 40)
    assert rep.ok, [l.to_json() for l in rep.laws if not l.ok]


def test_cohen_surjection_tensor_instance():
    res = bidelta.check_cohen_surjection(AbelianInstance(2), 4)
    assert res["onto"].ok and res["kernel"].ok


def test_idempotent_rejects_non_retraction():
    inst = AbelianInstance(2)
    with pytest.raises(InputError):
        bidelta.idempotent_check(1, 2, inst, section=lambda x: {})


def test_p_map_domain():
    inst = bidelta.abelianized_phi0()
    with pytest.raises(DomainError):
        bidelta.p_map({(1,): 1}, 1, inst)
    with pytest.raises(BoundsError):
        Z.face(3, Z.identity(2))


def test_parse_errors():
    with pytest.raises(InputError):
        Z.parse_word(1, [{"comp": 1}])
    with pytest.raises(DomainError):
        Z.parse_word(1, "3")
    with pytest.raises(DomainError):
        bidelta.CyclicGroup.parse("Q")
