"""Cyclic development of base blocks over Z_n."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import EntryOutOfRange
from .model import Block


def shift(block: Sequence[int], r: int, n: int) -> Block:
    return tuple((p + r) % n for p in block)


def develop(base_blocks: Iterable[Sequence[int]], n: int) -> list[Block]:
    """All shifts ``+r mod n`` of every base block, base-block-major.

    Block ``i * n + r`` is ``shift(base_blocks[i], r, n)``.  Short orbits and
    repeated base blocks are kept as duplicates.
    """
    out: list[Block] = []
    for b in base_blocks:
        for p in b:
            if not 0 <= p < n:
                raise EntryOutOfRange(f"entry {p} of base block {tuple(b)} not in [0, {n})")
        out.extend(shift(b, r, n) for r in range(n))
    return out
