import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_block_pairs_with_swaps, is_transposition_trade, pair_counts
from supersimple import (
    BoundCertificate,
    CyclicalTrade,
    DesignParams,
    DirectedDesign,
    GroupedDesign,
    InvalidCertificate,
    NotDeveloped,
    TradePair,
    catalog_build,
    catalog_get,
    catalog_list,
    certify_half,
    find_block_trades,
    full_report,
    generic_bound,
    is_volume2_trade,
    orbit_trade_scan,
    parse_certificate,
    validate_certificate,
)
from supersimple.catalog import CatalogEntry
from supersimple.trades import orbit_relations, swap_points


def _dd(v, blocks):
    return DirectedDesign(DesignParams(v), tuple(blocks))


def test_worked_example_trade():
    assert is_volume2_trade((0, 1, 11, 5), (1, 0, 3, 9), 0, 1)


def test_self_mapping_swap_is_not_a_trade():
    assert not is_volume2_trade((0, 1, 2, 3), (1, 0, 2, 3), 0, 1)


def test_swap_points_not_shared():
    assert not is_volume2_trade((0, 1, 2, 3), (4, 5, 6, 7), 0, 1)


def test_dd13_graph_matches_brute_force():
    d = catalog_build("dd-13")
    g = find_block_trades(d)
    assert set(g.edges) == all_block_pairs_with_swaps(d.blocks)


def test_dd13_printed_columns_pair_up():
    # each printed column of two base blocks is one orbit pairing
    rels = {(r.i, r.j) for r in orbit_relations(catalog_get("dd-13"))}
    assert (0, 1) in rels and (2, 3) in rels


def test_dd10_every_block_has_a_trade():
    d = catalog_build("dd-10")
    g = find_block_trades(d)
    assert set(g.edges) == all_block_pairs_with_swaps(d.blocks)
    assert min(g.degree()) >= 1


def test_point_disjoint_blocks_have_no_trades():
    d = _dd(12, [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11)])
    assert not find_block_trades(d).edges


def test_dd34_first_column_has_cycles():
    d = catalog_build("dd-34")
    g = find_block_trades(d)
    first = 5 * 34
    inner = [(i, j) for (i, j) in g.edges if i < first and j < first]
    # more edges than vertices forces a cycle
    assert len(inner) >= first


def test_witness_swaps_are_sound():
    d = catalog_build("dd-16")
    g = find_block_trades(d)
    for (i, j), (x, y) in g.edges.items():
        b1, b2 = d.blocks[i], d.blocks[j]
        c1, c2 = swap_points(b1, x, y), swap_points(b2, x, y)
        assert pair_counts([b1, b2]) == pair_counts([c1, c2])
        assert not {c1, c2} & {b1, b2}


@pytest.mark.parametrize("eid,bound,blocks", [("dd-10", 15, 30), ("dd-19", 57, 114), ("dd-43", 301, 602)])
def test_orbit_scan_examples(eid, bound, blocks):
    cert = orbit_trade_scan(catalog_get(eid))
    assert cert.total_blocks == blocks
    assert cert.bound == bound
    assert validate_certificate(catalog_build(eid), cert) == bound


def test_orbit_scan_needs_development():
    e = CatalogEntry("x", "DD", 0, (), 0, None, (), "none")
    with pytest.raises(NotDeveloped):
        orbit_trade_scan(e)


def test_certify_half_examples():
    d13 = catalog_build("dd-13")
    cert = orbit_trade_scan(catalog_get("dd-13"))
    assert cert.bound == 26 and certify_half(d13, cert)

    d16 = catalog_build("dd-16")
    edges = generic_bound(d16, edges_only=True)
    assert edges.bound == 40 and certify_half(d16, edges)
    cut = edges.without_edge(0)
    assert validate_certificate(d16, cut) == 39
    assert not certify_half(d16, cut)

    assert not certify_half(d13, BoundCertificate(total_blocks=52))
    assert certify_half(_dd(13, []), BoundCertificate())


def _relabel_onto(blocks, offset):
    return [tuple(p + offset for p in b) for b in blocks]


def test_generic_three_cycle():
    d = catalog_build("dgdd-3pow6")
    tri = [d.blocks[0], d.blocks[18], d.blocks[36]]
    small = _dd(18, tri)
    assert len(find_block_trades(small).edges) == 3
    cert = generic_bound(small)
    assert cert.bound == 2 and len(cert.cycles) == 1


def test_generic_five_edges():
    d = catalog_build("dd-13")
    pair = [d.blocks[0], d.blocks[13]]
    blocks = []
    for m in range(5):
        blocks += _relabel_onto(pair, 13 * m)
    toy = _dd(65, blocks)
    cert = generic_bound(toy)
    assert cert.bound == 5 and len(cert.edges) == 5


def test_generic_dd22_reaches_77():
    d = catalog_build("dd-22")
    cert = generic_bound(d)
    assert validate_certificate(d, cert) >= 77


@pytest.mark.parametrize("e", [e for e in catalog_list() if e.kind == "DD"], ids=lambda e: e.id)
def test_both_certificates_certify_half(e):
    d = catalog_build(e)
    if not full_report(d, "dd").passed:
        pytest.skip("table fails verification")
    assert certify_half(d, orbit_trade_scan(e))
    assert certify_half(d, generic_bound(d))


def test_certificate_text_round_trip():
    d = catalog_build("dd-34")
    cert = orbit_trade_scan(catalog_get("dd-34"))
    text = "\n".join(cert.to_lines())
    back = parse_certificate(text, len(d))
    assert back == cert
    assert validate_certificate(d, back) == cert.bound


def test_certificate_bound_mismatch():
    with pytest.raises(InvalidCertificate):
        parse_certificate("%CERT\n%E 0 13 0 1\n%BOUND 2\n")


def test_certificate_overlap_rejected():
    d = catalog_build("dd-13")
    e = TradePair(0, 13, 0, 1)
    with pytest.raises(InvalidCertificate):
        validate_certificate(d, BoundCertificate((e, e), (), 52))


def test_certificate_non_trade_rejected():
    d = catalog_build("dd-13")
    with pytest.raises(InvalidCertificate):
        validate_certificate(d, BoundCertificate((TradePair(0, 1, 0, 1),), (), 52))
    with pytest.raises(InvalidCertificate):
        validate_certificate(d, BoundCertificate((), (CyclicalTrade((0, 1, 2)),), 52))


def test_cycle_forces_half_rounded_up():
    assert CyclicalTrade((1, 2, 3)).forced == 2
    assert CyclicalTrade(tuple(range(10))).forced == 5


blocks4 = st.permutations(range(7)).map(lambda p: tuple(p[:4]))


@settings(max_examples=400, deadline=None)
@given(blocks4, blocks4, st.integers(0, 6), st.integers(0, 6))
def test_trade_test_matches_definition(b1, b2, x, y):
    assert is_volume2_trade(b1, b2, x, y) == is_transposition_trade(b1, b2, x, y)


def test_grouped_designs_work_too():
    g = catalog_build("dgdd-3pow6")
    assert isinstance(g, GroupedDesign)
    cert = orbit_trade_scan(catalog_get("dgdd-3pow6"))
    assert validate_certificate(g, cert) == 54
