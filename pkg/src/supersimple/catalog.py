"""Base-block tables for the direct constructions, transcribed as printed.

Each table is stored column by column, because the printed columns carry the
trade annotations.  Known misprints are kept verbatim; the verifier and the
errata report are responsible for flagging them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .develop import develop
from .errors import UnknownId
from .model import (
    Block,
    DesignParams,
    DirectedDesign,
    GroupedDesign,
    GroupType,
)

DD, DGDD, GDD_MASTER = "DD", "DGDD", "GDD-master"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    modulus: int
    columns: tuple[tuple[Block, ...], ...]
    claimed_blocks: int
    claimed_bound: Optional[int]
    claimed_trade_layout: tuple[str, ...]
    provenance: str
    num_groups: Optional[int] = None  # groups are the residue classes mod num_groups
    lam: int = 2

    @property
    def base_blocks(self) -> tuple[Block, ...]:
        return tuple(b for col in self.columns for b in col)

    @property
    def column_of(self) -> tuple[int, ...]:
        """Printed column index of every base block, in base_blocks order."""
        return tuple(ci for ci, col in enumerate(self.columns) for _ in col)

    @property
    def v(self) -> int:
        return self.modulus

    @property
    def directed(self) -> bool:
        return self.kind != GDD_MASTER

    @property
    def group_rule(self) -> Optional[str]:
        if self.num_groups is None:
            return None
        g = self.modulus // self.num_groups
        cell = ",".join(str(self.num_groups * j) for j in range(min(g, 3)))
        if g > 3:
            cell += ",...," + str(self.num_groups * (g - 1))
        return f"{{{cell}}}+i, 0<=i<{self.num_groups}"

    @property
    def group_type(self) -> Optional[GroupType]:
        if self.num_groups is None:
            return None
        return GroupType(((self.modulus // self.num_groups, self.num_groups),))

    def groups(self) -> tuple[tuple[int, ...], ...]:
        t = self.num_groups
        return tuple(tuple(range(i, self.modulus, t)) for i in range(t))

    @property
    def params(self) -> DesignParams:
        return DesignParams(v=self.modulus, k=4, lam=self.lam)

    def summary(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "v": self.modulus,
            "modulus": self.modulus,
            "group_type": str(self.group_type) if self.group_type else None,
            "base_blocks": len(self.base_blocks),
            "claimed_blocks": self.claimed_blocks,
            "claimed_bound": self.claimed_bound,
            "provenance": self.provenance,
        }


def _dd(v, columns, blocks, bound, layout, where):
    return CatalogEntry(
        id=f"dd-{v}", kind=DD, modulus=v, columns=columns, claimed_blocks=blocks,
        claimed_bound=bound, claimed_trade_layout=layout,
        provenance=f"directed design table, v={v} ({where})",
    )


def _dgdd(g, u, modulus, num_groups, columns, blocks, bound, layout):
    return CatalogEntry(
        id=f"dgdd-{g}pow{u}", kind=DGDD, modulus=modulus, columns=columns,
        claimed_blocks=blocks, claimed_bound=bound, claimed_trade_layout=layout,
        provenance=f"DGDD table, type {g}^{u}, developed mod {modulus}", num_groups=num_groups,
    )


_PAIRS = "disjoint volume-2 trades"

_ENTRIES: tuple[CatalogEntry, ...] = (
    _dd(10, (
        ((0, 1, 2, 6), (1, 0, 4, 3)),
        ((2, 0, 5, 8),),
    ), 30, 15, (_PAIRS, "cyclical trade of volume 10"), "+1 mod 10"),
    _dd(13, (
        ((0, 1, 11, 5), (1, 0, 3, 9)),
        ((0, 1, 6, 4), (6, 5, 0, 2)),
    ), 52, 26, (_PAIRS, _PAIRS), "+1 mod 13"),
    _dd(16, (
        ((0, 1, 6, 8), (1, 0, 11, 14)),
        ((4, 1, 0, 10), (12, 0, 3, 14)),
        ((0, 1, 9, 5),),
    ), 80, 40, (_PAIRS, _PAIRS, "cyclical trade of volume 16"), "+1 mod 16"),
    _dd(19, (
        ((0, 6, 1, 3), (15, 7, 1, 0)),
        ((4, 1, 0, 12), (5, 0, 3, 10)),
        ((0, 1, 8, 10), (2, 0, 6, 15)),
    ), 114, 57, (_PAIRS,) * 3, "+1 mod 19"),
    _dd(22, (
        ((0, 3, 1, 6), (0, 4, 1, 16)),
        ((1, 5, 7, 0), (2, 0, 13, 9)),
        ((15, 1, 10, 0), (8, 0, 19, 3)),
        ((0, 14, 2, 10),),
    ), 154, 77, (_PAIRS,) * 3 + ("cyclical trade of volume 22",), "+1 mod 22"),
    _dd(25, (
        ((0, 1, 18, 3), (16, 0, 8, 23)),
        ((0, 11, 1, 7), (14, 9, 3, 0)),
        ((13, 6, 1, 0), (16, 21, 0, 4)),
        ((2, 0, 16, 12), (19, 0, 22, 24)),
    ), 200, 100, (_PAIRS,) * 4, "+1 mod 25"),
    _dd(28, (
        ((4, 0, 2, 1), (15, 0, 1, 5)),
        ((1, 20, 0, 26), (19, 0, 6, 13)),
        ((0, 3, 20, 7), (17, 0, 10, 5)),
        ((0, 23, 3, 14), (19, 11, 7, 0)),
        ((0, 18, 2, 12),),
    ), 252, 126, (_PAIRS,) * 4 + ("cyclical trade of volume 28",), "+1 mod 28"),
    _dd(31, (
        ((0, 3, 8, 1), (3, 0, 18, 13)),
        ((11, 5, 0, 1), (3, 0, 11, 17)),
        ((7, 1, 19, 0), (0, 2, 15, 6)),
        ((0, 2, 23, 9), (26, 2, 0, 11)),
        ((15, 0, 4, 3), (0, 27, 19, 10)),
    ), 310, 155, (_PAIRS,) * 5, "+1 mod 31"),
    _dd(34, (
        ((25, 0, 4, 11), (2, 12, 9, 0), (20, 0, 2, 5), (14, 0, 1, 24), (5, 1, 0, 17)),
        ((2, 6, 0, 21), (7, 3, 29, 0), (21, 0, 11, 29), (28, 20, 11, 0)),
        ((0, 1, 9, 3), (1, 7, 19, 0)),
    ), 374, 204, ("34 cyclical trades of volume 5", _PAIRS, _PAIRS), "+1 mod 34"),
    _dd(40, (
        ((4, 1, 0, 2), (0, 3, 18, 23), (0, 12, 3, 33), (23, 0, 10, 2)),
        ((0, 4, 11, 32), (5, 0, 33, 17), (17, 4, 0, 30), (18, 0, 4, 29)),
        ((0, 16, 7, 29), (32, 1, 0, 38), (0, 6, 1, 15), (22, 30, 6, 0)),
        ((26, 20, 0, 5),),
    ), 520, 260, (_PAIRS,) * 3 + ("cyclical trade",), "+1 mod 40"),
    _dd(43, (
        ((0, 1, 8, 3), (0, 5, 20, 27), (0, 4, 2, 23), (10, 24, 3, 0)),
        ((0, 1, 4, 10), (11, 22, 3, 0), (2, 17, 0, 8), (5, 0, 33, 18)),
        ((1, 19, 0, 12), (0, 10, 35, 26), (4, 20, 0, 9), (12, 6, 26, 0)),
        ((12, 0, 42, 29), (4, 16, 0, 29)),
    ), 602, 301, (_PAIRS,) * 4, "+1 mod 43"),
    _dd(58, (
        ((0, 1, 56, 3), (0, 1, 14, 9), (0, 4, 37, 19), (30, 13, 4, 0), (22, 38, 0, 8), (0, 56, 40, 19)),
        ((1, 31, 0, 27), (1, 32, 0, 52), (13, 22, 6, 0), (20, 34, 0, 6), (0, 25, 6, 35)),
        ((0, 35, 2, 24), (5, 0, 23, 15), (0, 17, 34, 5), (27, 17, 0, 7)),
        ((0, 12, 3, 16), (40, 15, 3, 0), (15, 26, 0, 7), (24, 36, 0, 47)),
    ), 1102, 551, (_PAIRS + " and a cyclical trade of volume 58",) + (_PAIRS,) * 3, "+1 mod 58"),
    _dd(67, (
        ((1, 10, 0, 16), (33, 24, 0, 8), (5, 13, 0, 50), (5, 8, 0, 2), (1, 0, 30, 12), (11, 0, 1, 46)),
        ((7, 0, 33, 30), (0, 10, 17, 28), (0, 14, 6, 47), (44, 29, 14, 0), (20, 0, 9, 40), (0, 20, 41, 1)),
        ((42, 0, 3, 7), (6, 2, 0, 19), (23, 7, 0, 49), (0, 38, 54, 5), (21, 0, 4, 36), (27, 32, 4, 0)),
        ((14, 38, 0, 2), (45, 2, 0, 21), (9, 19, 31, 0), (12, 0, 25, 39)),
    ), 1474, 737, (_PAIRS,) * 4, "+1 mod 67"),
    _dd(79, (
        ((17, 0, 37, 1), (13, 30, 0, 4), (3, 0, 30, 45), (43, 0, 3, 31), (0, 18, 27, 6), (20, 2, 0, 34)),
        ((0, 1, 22, 15), (1, 0, 30, 12), (39, 0, 4, 29), (4, 0, 51, 37), (3, 26, 44, 0), (9, 25, 2, 0)),
        ((0, 31, 2, 23), (51, 30, 0, 10), (19, 27, 4, 0), (27, 0, 13, 5), (0, 50, 7, 26), (0, 43, 24, 11)),
        ((1, 33, 0, 9), (5, 0, 12, 45), (15, 0, 5, 39), (11, 6, 28, 0)),
        ((35, 0, 19, 2), (0, 25, 3, 38), (37, 0, 6, 26), (6, 0, 54, 16)),
    ), 2054, 1027, (_PAIRS,) * 5, "+1 mod 79"),
    _dd(94, (
        ((1, 23, 0, 40), (0, 5, 28, 42), (47, 19, 0, 3), (18, 46, 0, 4), (29, 0, 5, 59), (36, 5, 0, 51), (30, 0, 49, 2)),
        ((2, 0, 20, 43), (13, 87, 6, 0), (0, 13, 32, 57), (0, 69, 91, 52), (61, 0, 10, 1), (2, 70, 37, 0)),
        ((20, 9, 0, 82), (0, 12, 26, 71), (26, 34, 0, 7), (16, 1, 0, 34), (59, 0, 11, 1), (12, 4, 84, 0)),
        ((0, 79, 88, 49), (0, 15, 4, 45), (17, 44, 4, 0), (3, 56, 29, 0), (73, 0, 16, 6), (0, 58, 24, 3)),
        ((8, 0, 61, 29), (0, 32, 8, 44), (5, 43, 0, 25), (0, 56, 2, 31), (0, 6, 17, 48), (38, 7, 0, 16)),
    ), 2914, 1457, (_PAIRS + " and a cyclical trade of volume 94",) + (_PAIRS,) * 4, "+1 mod 94"),
    _dd(103, (
        ((0, 1, 15, 31), (0, 89, 97, 73), (45, 22, 0, 4), (0, 6, 29, 38), (69, 0, 5, 26), (40, 0, 82, 9), (64, 4, 29, 0), (0, 66, 41, 86)),
        ((21, 1, 0, 50), (6, 50, 0, 17), (19, 4, 0, 47), (0, 4, 31, 65), (19, 12, 59, 31), (45, 0, 7, 20), (12, 48, 61, 0), (22, 13, 0, 6)),
        ((51, 0, 2, 25), (5, 0, 51, 15), (0, 3, 51, 24), (49, 1, 0, 46), (11, 37, 23, 0), (8, 0, 18, 32)),
        ((34, 53, 2, 0), (2, 65, 19, 0), (29, 0, 5, 62), (5, 0, 53, 40), (0, 1, 93, 8), (92, 0, 77, 59)),
        ((12, 39, 0, 3), (20, 42, 3, 0), (0, 2, 37, 73), (70, 43, 8, 0), (0, 16, 72, 44), (10, 47, 0, 69)),
    ), 3502, 1751, (_PAIRS,) * 5, "+1 mod 103"),
    # type 3^t over Z_3t, groups {0,t,2t}+i
    _dgdd(3, 6, 18, 6, (
        ((2, 0, 5, 9), (7, 10, 0, 2), (1, 5, 0, 10)),
        ((0, 1, 2, 16), (11, 4, 1, 0)),
    ), 90, 54, ("18 cyclical trades of volume 3", _PAIRS)),
    _dgdd(3, 7, 21, 7, (
        ((0, 5, 1, 13), (11, 10, 1, 5)),
        ((0, 11, 17, 19), (12, 11, 0, 19)),
        ((0, 1, 4, 6), (7, 12, 4, 1)),
    ), 126, 63, (_PAIRS,) * 3),
    _dgdd(3, 8, 24, 8, (
        ((0, 1, 13, 6), (2, 1, 0, 4), (1, 2, 11, 22)),
        ((0, 4, 10, 15), (21, 0, 4, 18)),
        ((12, 7, 0, 2), (2, 0, 9, 15)),
    ), 168, 96, ("24 cyclical trades of volume 3", _PAIRS, _PAIRS)),
    _dgdd(3, 9, 27, 9, (
        ((0, 6, 1, 13), (3, 13, 1, 23), (17, 1, 6, 4)),
        ((1, 0, 2, 5), (3, 11, 0, 24), (1, 8, 0, 20)),
        ((0, 6, 2, 17), (0, 14, 8, 4)),
    ), 216, 135, ("27 cyclical trades of volume 3",) * 2 + (_PAIRS,)),
    _dgdd(3, 13, 39, 13, (
        ((3, 0, 12, 21), (19, 0, 3, 35), (5, 12, 0, 20)),
        ((2, 1, 0, 4), (4, 0, 32, 18), (14, 0, 33, 24)),
        ((8, 0, 2, 19), (2, 0, 29, 14)),
        ((0, 16, 22, 5), (0, 17, 1, 8)),
        ((5, 0, 11, 1), (0, 5, 15, 36)),
    ), 468, 273, ("39 cyclical trades of volume 3",) * 2 + (_PAIRS,) * 3),
    # type t^4 over Z_4t, groups {0,4,...,4(t-1)}+i
    _dgdd(4, 4, 16, 4, (
        ((0, 1, 3, 10), (2, 0, 3, 13)),
        ((0, 5, 2, 11), (0, 15, 14, 5)),
    ), 64, 32, (_PAIRS, _PAIRS)),
    _dgdd(5, 4, 20, 4, (
        ((1, 0, 10, 3), (0, 1, 18, 11), (1, 6, 0, 7)),
        ((0, 7, 2, 5), (3, 0, 14, 9)),
    ), 100, 60, ("20 cyclical trades of volume 3", _PAIRS)),
    _dgdd(6, 4, 24, 4, (
        ((0, 1, 2, 7), (1, 0, 14, 11), (14, 0, 23, 17)),
        ((2, 0, 5, 19), (0, 2, 15, 21), (0, 15, 22, 9)),
    ), 144, 96, ("24 cyclical trades of volume 3",) * 2),
    _dgdd(13, 4, 52, 4, (
        ((0, 10, 15, 1), (0, 29, 19, 2), (0, 29, 43, 18)),
        ((1, 7, 0, 2), (0, 13, 7, 30), (5, 15, 22, 0)),
        ((3, 0, 25, 6), (7, 10, 0, 21)),
        ((0, 5, 39, 26),),
        ((1, 0, 18, 27),),
    ), 520, 312, ("52 cyclical trades of volume 3",) * 2 + (_PAIRS,) + ("cyclical trade of volume 52",) * 2),
    _dgdd(19, 4, 76, 4, (
        ((30, 0, 3, 9), (0, 2, 13, 43), (2, 0, 33, 7), (1, 19, 0, 6)),
        ((22, 0, 35, 1), (5, 15, 0, 22), (0, 11, 1, 26), (3, 33, 0, 62)),
        ((22, 11, 0, 29), (0, 11, 1, 26), (7, 17, 54, 0), (2, 23, 0, 37)),
        ((0, 47, 33, 70), (9, 26, 55, 0), (5, 0, 14, 39), (13, 0, 31, 58)),
        ((6, 25, 0, 51), (0, 57, 15, 34), (10, 1, 0, 3), (18, 3, 0, 41)),
    ), 1520, 912, ("76 cyclical trades of volume 3 and a cyclical trade of volume 76",) * 4 + (_PAIRS,)),
    _dgdd(22, 4, 88, 4, (
        ((0, 6, 19, 1), (6, 0, 15, 33), (15, 0, 62, 37), (0, 57, 74, 79), (17, 0, 35, 58)),
        ((2, 27, 5, 0), (39, 0, 5, 26), (25, 0, 14, 3), (42, 0, 11, 53), (21, 10, 0, 55)),
        ((2, 39, 0, 25), (3, 18, 37, 0), (9, 19, 0, 54), (38, 1, 0, 67), (0, 29, 38, 59)),
        ((35, 0, 2, 29), (12, 27, 0, 10), (10, 0, 3, 41), (1, 0, 43, 2)),
        ((0, 30, 7, 69), (0, 13, 39, 46), (7, 0, 65, 50)),
    ), 1936, 1188, ("88 cyclical trades of volume 3 and 88 disjoint volume-2 trades",) * 3
        + ("88 cyclical trades of volume 3 and a cyclical trade of volume 88", "88 cyclical trades of volume 3")),
    # type 9^t over Z_9t, groups {0,t,...,8t}+i
    _dgdd(9, 4, 36, 4, (
        ((1, 0, 2, 7), (3, 14, 0, 17)),
        ((0, 1, 10, 19), (1, 0, 23, 14)),
        ((3, 0, 21, 10), (9, 0, 15, 2)),
        ((2, 0, 5, 31), (10, 0, 31, 25)),
    ), 288, 144, (_PAIRS,) * 4),
    _dgdd(9, 5, 45, 5, (
        ((0, 1, 2, 4), (1, 0, 8, 14), (16, 0, 43, 34)),
        ((2, 0, 11, 19), (4, 0, 37, 13), (0, 4, 41, 28)),
        ((6, 13, 27, 0), (1, 7, 0, 24)),
        ((11, 0, 42, 33), (0, 16, 27, 39)),
        ((0, 26, 3, 19), (17, 3, 0, 29)),
    ), 540, 315, ("45 cyclical trades of volume 3",) * 2 + (_PAIRS,) * 3),
    # type 6^5 over Z_30, groups {0,5,...,25}+i
    _dgdd(6, 5, 30, 5, (
        ((7, 9, 0, 1), (3, 0, 7, 16), (2, 0, 18, 21)),
        ((19, 1, 12, 0), (6, 13, 0, 19)),
        ((1, 2, 4, 0), (4, 8, 16, 0)),
        ((3, 9, 0, 17),),
    ), 240, 135, ("30 cyclical trades of volume 3", _PAIRS, _PAIRS, "cyclical trade of volume 30")),
    CatalogEntry(
        id="gdd-2pow7", kind=GDD_MASTER, modulus=14, columns=(((0, 1, 4, 6),),),
        claimed_blocks=14, claimed_bound=None, claimed_trade_layout=(),
        provenance="4-GDD of type 2^7, (0,1,4,6) mod 14", num_groups=7, lam=1,
    ),
)

_BY_ID = {e.id: e for e in _ENTRIES}


def catalog_list() -> tuple[CatalogEntry, ...]:
    return _ENTRIES


def catalog_get(entry_id: str) -> CatalogEntry:
    try:
        return _BY_ID[entry_id]
    except KeyError:
        raise UnknownId(f"unknown catalog id {entry_id!r}") from None


def catalog_build(entry: Union[str, CatalogEntry]) -> Union[DirectedDesign, GroupedDesign]:
    """Develop an entry into its full design; no verification happens here.

    Block ``i * modulus + r`` is base block ``i`` shifted by ``r``.
    """
    e = catalog_get(entry) if isinstance(entry, str) else entry
    design = DirectedDesign(e.params, tuple(develop(e.base_blocks, e.modulus)))
    if e.num_groups is None:
        return design
    return GroupedDesign(design, e.groups(), directed=e.directed)
