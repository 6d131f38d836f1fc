import pytest

from supersimple import GroupedDesign, UnknownId, catalog_build, catalog_get, catalog_list
from supersimple.develop import develop


def test_listing_shape():
    entries = catalog_list()
    ids = [e.id for e in entries]
    assert len(ids) == len(set(ids)) == 31
    dds = [e for e in entries if e.kind == "DD"]
    assert [e.v for e in dds] == [10, 13, 16, 19, 22, 25, 28, 31, 34, 40, 43, 58, 67, 79, 94, 103]
    types = {str(e.group_type) for e in entries if e.kind == "DGDD"}
    assert types == {
        "3^6", "3^7", "3^8", "3^9", "3^13", "4^4", "5^4", "6^4",
        "13^4", "19^4", "22^4", "9^4", "9^5", "6^5",
    }
    assert [e.kind for e in entries].count("GDD-master") == 1
    assert catalog_list() == entries


def test_lookup_6pow5():
    e = catalog_get("dgdd-6pow5")
    assert e.modulus == 30 and len(e.base_blocks) == 8


def test_lookup_master():
    e = catalog_get("gdd-2pow7")
    assert e.base_blocks == ((0, 1, 4, 6),) and e.modulus == 14


def test_unknown():
    with pytest.raises(UnknownId):
        catalog_get("nosuch")
    with pytest.raises(UnknownId):
        catalog_build("nosuch")


@pytest.mark.parametrize("eid,blocks", [("dd-13", 52), ("dgdd-3pow7", 126), ("dgdd-13pow4", 520)])
def test_build_sizes(eid, blocks):
    assert len(catalog_build(eid)) == blocks


def test_3pow7_groups():
    g = catalog_build("dgdd-3pow7")
    assert isinstance(g, GroupedDesign)
    assert len(g.groups) == 7 and {len(x) for x in g.groups} == {3}
    assert g.groups[0] == (0, 7, 14)


def test_t_pow4_groups_are_residues_mod_4():
    g = catalog_build("dgdd-13pow4")
    assert g.groups[1] == tuple(range(1, 52, 4))


@pytest.mark.parametrize("e", catalog_list(), ids=lambda e: e.id)
def test_full_orbits(e):
    assert e.claimed_blocks == len(e.base_blocks) * e.modulus
    assert len(catalog_build(e)) == e.claimed_blocks
    assert all(0 <= x < e.modulus for b in e.base_blocks for x in b)
    assert all(len(set(b)) == len(b) for b in e.base_blocks)


def test_provenance_unique():
    provs = [e.provenance for e in catalog_list()]
    assert len(set(provs)) == len(provs)


def test_column_major_order():
    e = catalog_get("dd-10")
    assert e.base_blocks == ((0, 1, 2, 6), (1, 0, 4, 3), (2, 0, 5, 8))
    assert e.column_of == (0, 0, 1)
    assert catalog_build(e).blocks == tuple(develop(e.base_blocks, 10))


def test_duplicate_base_block_kept():
    e = catalog_get("dgdd-19pow4")
    assert e.base_blocks.count((0, 11, 1, 26)) == 2
