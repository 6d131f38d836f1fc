import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dd_block_count
from supersimple import (
    DesignParams,
    DirectedDesign,
    GroupedDesign,
    GroupType,
    NonIntegerCount,
    ParseError,
    admissible_v,
    catalog_build,
    expected_block_count_dd,
    expected_block_count_dgdd,
    parse_design_file,
    write_design_file,
)
from supersimple.model import file_order


@pytest.mark.parametrize("v,count", [(10, 30), (13, 52), (103, 3502)])
def test_dd_count_examples(v, count):
    assert expected_block_count_dd(DesignParams(v)) == count
    assert dd_block_count(v) == count


def test_dd_count_non_integer():
    with pytest.raises(NonIntegerCount):
        expected_block_count_dd(DesignParams(11))


@pytest.mark.parametrize(
    "gtype,count",
    [("3^6", 90), ("13^4", 676), ("22^4", 1936), ("9^4", 324), ("4^4", 64), ("6^5", 240)],
)
def test_dgdd_count_examples(gtype, count):
    assert expected_block_count_dgdd(GroupType.parse(gtype), 2) == count


def test_dgdd_count_mixed_type():
    # 10 points in groups 4,3,3: cross ordered pairs 90 - 12 - 6 - 6 = 66
    assert expected_block_count_dgdd(GroupType.from_sizes([4, 3, 3]), 2) == 22


def test_admissible_matches_integrality():
    # block count alone is integral for v = 0 mod 3 too; the per-point
    # replication 4(v-1)/3 is what rules those out
    for v in range(0, 1001):
        integral = (2 * v * (v - 1)) % 12 == 0 and (4 * (v - 1)) % 3 == 0
        assert admissible_v(v) == (integral and v >= 10), v


def test_block_count_alone_admits_multiples_of_three():
    assert expected_block_count_dd(DesignParams(12)) == 44
    assert not admissible_v(12)


@pytest.mark.parametrize("v,ok", [(13, True), (12, False), (7, False), (10, True)])
def test_admissible_examples(v, ok):
    assert admissible_v(v) is ok


def test_group_type_text():
    gt = GroupType.from_sizes([4, 4, 4, 4, 3])
    assert str(gt) == "4^4 3^1"
    assert GroupType.parse("4^4 3^1") == gt
    assert gt.total == 19


def test_parse_small_file():
    text = "#DD v=13 k=4 lambda=2\n% comment\n0 1 11 5\n1 0 3 9\n"
    d = parse_design_file(text)
    assert isinstance(d, DirectedDesign)
    assert d.blocks == ((0, 1, 11, 5), (1, 0, 3, 9))


def test_parse_header_only():
    d = parse_design_file(b"#DD v=13 k=4 lambda=2\n")
    assert len(d) == 0


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("#DD v=13 k=4 lambda=2\n0 1 1 5\n", "repeated"),
        ("#DD v=13 k=4 lambda=2\n0 1 2\n", "expected 4"),
        ("#DD v=13 k=4 lambda=2\n0 1 2 13\n", "out of range"),
        ("#DD v=13 k=4 lambda=2\n0 01 2 3\n", "decimals"),
        ("#DD v=13 k=4 lambda=2\n0  1 2 3\n", "decimals"),
        ("#DD v=13 k=4\n", "header"),
        ("0 1 2 3\n", "header"),
        ("#DGDD v=4 k=2 lambda=1 directed=0\nG: 0 1\nG: 1 2 3\n", "partition"),
        ("#DGDD v=4 k=2 lambda=1 directed=0\nG: 0 1\n0 2\nG: 2 3\n", "after block"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_design_file(text)
    assert fragment in str(info.value)


def test_parse_error_carries_line():
    with pytest.raises(ParseError) as info:
        parse_design_file("#DD v=13 k=4 lambda=2\n0 1 2 3\n% x\n0 1 1 5\n")
    assert info.value.line == 4


def test_write_dd10_sorted():
    data = write_design_file(catalog_build("dd-10"))
    lines = data.decode().splitlines()
    assert lines[0] == "#DD v=10 k=4 lambda=2"
    body = [tuple(map(int, ln.split())) for ln in lines[1:]]
    assert len(body) == 30 and body == sorted(body)
    assert data.endswith(b"\n") and b"\r" not in data


def test_write_empty():
    d = DirectedDesign(DesignParams(13), ())
    assert write_design_file(d) == b"#DD v=13 k=4 lambda=2\n"


def test_round_trip_v103():
    d = catalog_build("dd-103")
    back = parse_design_file(write_design_file(d))
    assert back.same_blocks(d)


def test_round_trip_grouped():
    g = catalog_build("dgdd-3pow6")
    back = parse_design_file(write_design_file(g))
    assert isinstance(back, GroupedDesign)
    assert back.groups == g.groups and back.directed
    assert back.design.same_blocks(g.design)


def test_file_order_matches_written_lines():
    d = catalog_build("dd-13")
    pos = file_order(d.blocks)
    lines = write_design_file(d).decode().splitlines()[1:]
    for i, b in enumerate(d.blocks):
        assert lines[pos[i]] == " ".join(map(str, b))


@st.composite
def small_designs(draw):
    v = draw(st.integers(4, 12))
    blocks = draw(st.lists(st.permutations(range(v)).map(lambda p: tuple(p[:4])), max_size=20))
    return DirectedDesign(DesignParams(v), tuple(blocks))


@settings(max_examples=150, deadline=None)
@given(small_designs())
def test_parse_write_identity(d):
    back = parse_design_file(write_design_file(d, comments=["note"]))
    assert back.params == d.params
    assert back.same_blocks(d)


def test_bad_block_rejected_on_construction():
    with pytest.raises(ValueError):
        DirectedDesign(DesignParams(5), ((0, 1, 2, 2),))
