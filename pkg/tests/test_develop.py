from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import pair_counts
from supersimple import EntryOutOfRange, catalog_build, develop, shift


def test_shift_examples():
    assert shift((0, 1, 11, 5), 1, 13) == (1, 2, 12, 6)
    assert shift((6, 5, 0, 2), 0, 13) == (6, 5, 0, 2)
    # hand arithmetic: 2+5, 0+5, 5+5=10=0, 8+5=13=3 (mod 10)
    assert shift((2, 0, 5, 8), 5, 10) == (7, 5, 0, 3)


def test_develop_dd10_size():
    assert len(develop([(0, 1, 2, 6), (1, 0, 4, 3), (2, 0, 5, 8)], 10)) == 30


def test_develop_single_block_mod_one():
    assert develop([(0,)], 1) == [(0,)]


def test_develop_keeps_duplicates():
    out = develop([(0, 11, 1, 26), (0, 11, 1, 26)], 76)
    assert len(out) == 152
    assert set(Counter(out).values()) == {2}


def test_develop_layout_is_base_major():
    out = develop([(0, 1, 2, 6), (1, 0, 4, 3)], 10)
    assert out[10 + 3] == shift((1, 0, 4, 3), 3, 10)


def test_develop_rejects_out_of_range():
    with pytest.raises(EntryOutOfRange):
        develop([(0, 1, 2, 10)], 10)


blocks = st.integers(4, 40).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), min_size=4, max_size=4, unique=True))
)


@given(blocks, st.integers(0, 100), st.integers(0, 100))
def test_shift_composes(nb, r, s):
    n, b = nb
    assert shift(shift(b, r, n), s, n) == shift(b, (r + s) % n, n)


@given(st.lists(blocks, min_size=1, max_size=4))
def test_develop_size(items):
    n = items[0][0]
    base = [tuple(x % n for x in b) for _, b in items if len({x % n for x in b}) == 4]
    assert len(develop(base, n)) == len(base) * n


@pytest.mark.parametrize("eid", ["dd-13", "dd-22", "dgdd-3pow7"])
def test_pair_counts_shift_invariant(eid):
    d = catalog_build(eid)
    n = d.v
    c = pair_counts(d.blocks)
    for (x, y), k in c.items():
        assert c[((x + 1) % n, (y + 1) % n)] == k
