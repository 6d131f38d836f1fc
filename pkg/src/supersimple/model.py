"""Core design types, counting formulas and the line-oriented design file format.

Points are always the integers ``0 .. v-1``.  A block is a plain tuple of
distinct points; for directed designs the tuple order is meaningful and a
block ``(a, b, c, d)`` covers the ordered pairs ``(a,b), (a,c), (a,d), (b,c),
(b,d), (c,d)``.

File format::

    % comment
    #DGDD v=12 k=4 lambda=1 directed=0
    G: 0 1 2
    G: 3 4 5
    ...
    0 3 6 9
    ...
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import NonIntegerCount, ParseError

Block = tuple[int, ...]


@dataclass(frozen=True)
class DesignParams:
    v: int
    k: int = 4
    lam: int = 2
    t: int = 2

    def __post_init__(self):
        if self.t != 2:
            raise ValueError("only strength t=2 is supported")
        if self.v < self.k or self.k < 2:
            raise ValueError(f"need v >= k >= 2, got v={self.v} k={self.k}")
        if self.lam < 1:
            raise ValueError(f"lambda must be positive, got {self.lam}")


def check_block(block: Sequence[int], v: int) -> Block:
    """Validate a block against the point range; return it as a tuple."""
    b = tuple(int(p) for p in block)
    if len(set(b)) != len(b):
        raise ValueError(f"repeated point in block {b}")
    for p in b:
        if not 0 <= p < v:
            raise ValueError(f"point {p} out of range [0, {v}) in block {b}")
    return b


@dataclass(frozen=True)
class DirectedDesign:
    """Parameters plus a multiset of blocks.

    Duplicate blocks are kept, since spotting them is the verifier's job.
    """

    params: DesignParams
    blocks: tuple[Block, ...]

    def __post_init__(self):
        v = self.params.v
        object.__setattr__(
            self, "blocks", tuple(check_block(b, v) for b in self.blocks)
        )

    @property
    def v(self) -> int:
        return self.params.v

    def __len__(self) -> int:
        return len(self.blocks)

    def same_blocks(self, other: "DirectedDesign") -> bool:
        return self.params == other.params and Counter(self.blocks) == Counter(other.blocks)


@dataclass(frozen=True)
class GroupType:
    """Multiset of group sizes, stored as sorted ``(size, multiplicity)`` pairs."""

    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        merged: Counter = Counter()
        for g, u in self.parts:
            if g < 1 or u < 1:
                raise ValueError(f"bad group type part {g}^{u}")
            merged[g] += u
        object.__setattr__(self, "parts", tuple(sorted(merged.items(), reverse=True)))

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "GroupType":
        return cls(tuple(Counter(sizes).items()))

    @classmethod
    def parse(cls, text: str) -> "GroupType":
        """Parse ``"3^6"`` or ``"24^4 18^1"``."""
        parts = []
        for tok in text.split():
            g, _, u = tok.partition("^")
            parts.append((int(g), int(u) if u else 1))
        return cls(tuple(parts))

    @property
    def total(self) -> int:
        return sum(g * u for g, u in self.parts)

    def sizes(self) -> list[int]:
        return [g for g, u in self.parts for _ in range(u)]

    def __str__(self) -> str:
        return " ".join(f"{g}^{u}" for g, u in self.parts)


@dataclass(frozen=True)
class GroupedDesign:
    """A design with its points partitioned into groups (DGDD, GDD or TD).

    ``directed=False`` marks undirected masters (TDs, GDDs); their blocks may
    have mixed sizes up to ``params.k``.
    """

    design: DirectedDesign
    groups: tuple[tuple[int, ...], ...]
    directed: bool = True
    point_to_group: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        groups = tuple(sorted((tuple(sorted(g)) for g in self.groups), key=lambda g: g[0] if g else -1))
        v = self.design.v
        owner = [-1] * v
        for gi, g in enumerate(groups):
            if not g:
                raise ValueError("empty group")
            for p in g:
                if not 0 <= p < v:
                    raise ValueError(f"group point {p} out of range [0, {v})")
                if owner[p] != -1:
                    raise ValueError(f"point {p} lies in two groups")
                owner[p] = gi
        if -1 in owner:
            raise ValueError(f"point {owner.index(-1)} lies in no group")
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "point_to_group", tuple(owner))

    @property
    def group_type(self) -> GroupType:
        return GroupType.from_sizes(len(g) for g in self.groups)

    @property
    def params(self) -> DesignParams:
        return self.design.params

    @property
    def blocks(self) -> tuple[Block, ...]:
        return self.design.blocks

    @property
    def v(self) -> int:
        return self.design.v

    def __len__(self) -> int:
        return len(self.design)


@dataclass(frozen=True)
class FillSpec:
    eta: int

    def __post_init__(self):
        if self.eta not in (0, 1):
            raise ValueError(f"eta must be 0 or 1, got {self.eta}")


@dataclass(frozen=True)
class InflationSpec:
    alpha: int

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")


AnyDesign = Union[DirectedDesign, GroupedDesign]


def admissible_v(v: int) -> bool:
    return v % 3 == 1 and v >= 10


def _divide(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise NonIntegerCount(f"{what}: {num}/{den} is not an integer")
    return q


def expected_block_count_dd(params: DesignParams) -> int:
    """Block count forced by double counting ordered pairs."""
    v, k = params.v, params.k
    return _divide(params.lam * v * (v - 1), k * (k - 1) // 2, f"DD(v={v}, k={k}, lambda={params.lam})")


def expected_block_count_dgdd(group_type: GroupType, lam: int, k: int = 4) -> int:
    """Block count of a directed GDD, all blocks transverse to the groups."""
    v = group_type.total
    cross = v * (v - 1) - sum(u * g * (g - 1) for g, u in group_type.parts)
    return _divide(lam * cross, k * (k - 1) // 2, f"DGDD type {group_type}")


def expected_block_count_gdd(group_type: GroupType, lam: int, k: int) -> int:
    """Block count of an undirected uniform GDD; the TD case is ``n**2``."""
    v = group_type.total
    cross = v * (v - 1) - sum(u * g * (g - 1) for g, u in group_type.parts)
    return _divide(lam * cross // 2, k * (k - 1) // 2, f"GDD type {group_type}")


# --- file format -----------------------------------------------------------

_INT = r"(0|[1-9][0-9]*)"
_DD_HEADER = re.compile(rf"#DD v={_INT} k={_INT} lambda={_INT}")
_DGDD_HEADER = re.compile(rf"#DGDD v={_INT} k={_INT} lambda={_INT} directed=([01])")
_NUMS = re.compile(rf"{_INT}( {_INT})*")


def _ints(text: str, lineno: int) -> list[int]:
    if not _NUMS.fullmatch(text):
        raise ParseError(lineno, f"expected single-space separated decimals, got {text!r}")
    return [int(tok) for tok in text.split(" ")]


def parse_design_file(data: Union[str, bytes]) -> AnyDesign:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(0, f"not UTF-8: {exc}") from None
    header = None
    groups: list[tuple[int, ...]] = []
    blocks: list[Block] = []
    for lineno, raw in enumerate(data.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line or line.startswith("%"):
            continue
        if header is None:
            m = _DD_HEADER.fullmatch(line)
            if m:
                header = ("DD", int(m[1]), int(m[2]), int(m[3]), True)
                continue
            m = _DGDD_HEADER.fullmatch(line)
            if m:
                header = ("DGDD", int(m[1]), int(m[2]), int(m[3]), m[4] == "1")
                continue
            raise ParseError(lineno, f"bad header {line!r}")
        kind, v, k, lam, directed = header
        if line.startswith("#"):
            raise ParseError(lineno, "second header line")
        if line.startswith("G:"):
            if kind != "DGDD":
                raise ParseError(lineno, "group line in a #DD file")
            if blocks:
                raise ParseError(lineno, "group line after block lines")
            cell = _ints(line[2:].strip(), lineno)
            for p in cell:
                if p >= v:
                    raise ParseError(lineno, f"point {p} out of range [0, {v})")
            groups.append(tuple(cell))
            continue
        pts = _ints(line, lineno)
        if directed and len(pts) != k:
            raise ParseError(lineno, f"expected {k} points, got {len(pts)}")
        if not directed and not 2 <= len(pts) <= k:
            raise ParseError(lineno, f"block size {len(pts)} outside [2, {k}]")
        if len(set(pts)) != len(pts):
            raise ParseError(lineno, f"repeated point in block {line!r}")
        for p in pts:
            if p >= v:
                raise ParseError(lineno, f"point {p} out of range [0, {v})")
        blocks.append(tuple(pts))
    if header is None:
        raise ParseError(0, "missing header")
    kind, v, k, lam, directed = header
    try:
        params = DesignParams(v=v, k=k, lam=lam)
    except ValueError as exc:
        raise ParseError(1, str(exc)) from None
    design = DirectedDesign(params, tuple(blocks))
    if kind == "DD":
        return design
    try:
        return GroupedDesign(design, tuple(groups), directed=directed)
    except ValueError as exc:
        raise ParseError(0, f"group cells are not a partition: {exc}") from None


def file_order(blocks: Sequence[Block]) -> list[int]:
    """``file_order(blocks)[i]`` is the line position of block ``i`` once written."""
    order = sorted(range(len(blocks)), key=lambda i: blocks[i])
    pos = [0] * len(blocks)
    for line, i in enumerate(order):
        pos[i] = line
    return pos


def write_design_file(d: AnyDesign, comments: Sequence[str] = ()) -> bytes:
    """Serialize deterministically: blocks sorted lexicographically.

    ``comments`` are appended as ``%`` lines after the blocks.
    """
    p = d.params
    lines = []
    if isinstance(d, GroupedDesign):
        lines.append(f"#DGDD v={p.v} k={p.k} lambda={p.lam} directed={int(d.directed)}")
        lines.extend("G: " + " ".join(map(str, g)) for g in d.groups)
    else:
        lines.append(f"#DD v={p.v} k={p.k} lambda={p.lam}")
    lines.extend(" ".join(map(str, b)) for b in sorted(d.blocks))
    for c in comments:
        lines.append(c if c.startswith("%") else "% " + c)
    return ("\n".join(lines) + "\n").encode("utf-8")
