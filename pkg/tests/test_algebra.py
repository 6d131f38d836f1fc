import pytest

from oracles import field_axioms_hold, is_td_oracle
from supersimple import KTooLarge, TdSpec, UnsupportedOrder, check_td, field_build, td_build
from supersimple.algebra import SUPPORTED_ORDERS


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_field_axioms(q):
    F = field_build(q)
    assert F.q == q and F.p ** F.e == q
    assert field_axioms_hold(F.add.tolist(), F.mul.tolist(), q)


def test_z3_addition():
    assert field_build(3).add.tolist() == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def test_gf4_characteristic_two():
    F = field_build(4)
    assert all(F.add[x, x] == 0 for x in range(4))


@pytest.mark.parametrize("q", [6, 10, 12, 33, 64, 1])
def test_unsupported(q):
    with pytest.raises(UnsupportedOrder):
        field_build(q)


def test_inverse_and_negation():
    F = field_build(27)
    for a in range(1, 27):
        assert F.mul[a, F.inv(a)] == 1
        assert F.add[a, F.neg(a)] == 0
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@pytest.mark.parametrize("k,n,blocks,points", [(4, 3, 9, 12), (8, 7, 49, 56), (5, 4, 16, 20)])
def test_td_examples(k, n, blocks, points):
    g = td_build(TdSpec(k, n))
    assert len(g) == blocks and g.v == points
    assert check_td(g).passed
    assert is_td_oracle(g.blocks, g.groups)


def test_td_columns_are_groups():
    g = td_build(4, 5)
    assert g.groups == tuple(tuple(range(i * 5, i * 5 + 5)) for i in range(4))
    assert not g.directed and g.params.lam == 1


def test_td_trivial_order_one():
    g = td_build(4, 1)
    assert g.blocks == ((0, 1, 2, 3),)
    assert check_td(g).passed


def test_td_k_too_large():
    with pytest.raises(KTooLarge):
        td_build(9, 7)


def test_td_unsupported_order():
    with pytest.raises(UnsupportedOrder):
        td_build(4, 6)
