"""Exact checks of the defining properties, reported as data with witnesses.

No check ever raises on a bad design: a failure is a ``CheckResult`` with
``passed=False`` and a concrete witness (a pair with its count, a triple with
the two block indices, or a pair of block indices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import NonIntegerCount
from .model import (
    AnyDesign,
    Block,
    GroupedDesign,
    expected_block_count_dd,
    expected_block_count_dgdd,
    expected_block_count_gdd,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: Optional[tuple] = None
    message: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name}"
        if self.message:
            out += f": {self.message}"
        return out


@dataclass
class VerificationReport:
    kind: str
    checks: list[CheckResult] = field(default_factory=list)
    block_count_expected: Optional[int] = None
    block_count_actual: int = 0
    label: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def render_text(self) -> str:
        head = f"verification of {self.label or 'design'} as {self.kind}: {self.verdict}"
        lines = [head, f"blocks: expected {self.block_count_expected} actual {self.block_count_actual}"]
        lines += ["  " + c.line() for c in self.checks]
        return "\n".join(lines) + "\n"

    def render_comments(self) -> list[str]:
        """Machine-readable ``%REPORT`` section for embedding in design files."""
        out = [f"%REPORT kind={self.kind} verdict={self.verdict} "
               f"expected={self.block_count_expected} actual={self.block_count_actual}"]
        for c in self.checks:
            w = "-" if c.witness is None else " ".join(map(str, _flatten(c.witness)))
            out.append(f"%CHECK {c.name} {'pass' if c.passed else 'fail'} witness={w}")
        out.append("%END REPORT")
        return out


def _flatten(x):
    if isinstance(x, (tuple, list)):
        for y in x:
            yield from _flatten(y)
    else:
        yield x


def _as_array(blocks: Sequence[Block], k: int) -> np.ndarray:
    if not blocks:
        return np.zeros((0, k), dtype=np.int64)
    return np.asarray(blocks, dtype=np.int64)


def ordered_pair_counts(blocks: Sequence[Block], v: int) -> np.ndarray:
    """``counts[x, y]`` = number of blocks with x strictly before y.

    Blocks may have mixed lengths.
    """
    counts = np.zeros(v * v, dtype=np.int64)
    by_len: dict[int, list[Block]] = {}
    for b in blocks:
        by_len.setdefault(len(b), []).append(b)
    for k, group in by_len.items():
        arr = _as_array(group, k)
        for i, j in combinations(range(k), 2):
            counts += np.bincount(arr[:, i] * v + arr[:, j], minlength=v * v)
    return counts.reshape(v, v)


def _same_group_mask(g: Optional[GroupedDesign], v: int) -> np.ndarray:
    if g is None:
        return np.eye(v, dtype=bool)
    owner = np.asarray(g.point_to_group)
    return owner[:, None] == owner[None, :]


def _first_bad(counts: np.ndarray, target: np.ndarray) -> Optional[tuple[int, int]]:
    """Pair with the largest deviation; ties go to the first in row-major order."""
    dev = np.abs(counts - target)
    if not dev.any():
        return None
    x, y = np.unravel_index(int(np.argmax(dev)), dev.shape)
    return int(x), int(y)


def check_directed_balance(d: AnyDesign) -> CheckResult:
    design = d.design if isinstance(d, GroupedDesign) else d
    v, lam = design.v, design.params.lam
    counts = ordered_pair_counts(design.blocks, v)
    target = np.full((v, v), lam, dtype=np.int64)
    np.fill_diagonal(target, 0)
    bad = _first_bad(counts, target)
    if bad is None:
        return CheckResult("directed_balance", True, message=f"every ordered pair covered {lam} times")
    n_bad = int((counts != target).sum())
    x, y = bad
    return CheckResult(
        "directed_balance", False, witness=(x, y, int(counts[x, y])),
        message=f"ordered pair ({x},{y}) covered {counts[x, y]} times, need {lam}; {n_bad} bad pairs",
    )


def check_simple(d: AnyDesign) -> CheckResult:
    """No two blocks with the same underlying point set."""
    seen: dict[frozenset, int] = {}
    for i, b in enumerate(d.blocks):
        key = frozenset(b)
        if key in seen:
            j = seen[key]
            return CheckResult(
                "simple", False, witness=(j, i),
                message=f"blocks {j} {d.blocks[j]} and {i} {b} have the same point set",
            )
        seen[key] = i
    return CheckResult("simple", True, message="no repeated underlying blocks")


def _triple_clash(blocks: Sequence[Block]) -> Optional[tuple[tuple[int, ...], int, int]]:
    seen: dict[tuple[int, ...], int] = {}
    for i, b in enumerate(blocks):
        for tri in combinations(sorted(b), 3):
            j = seen.setdefault(tri, i)
            if j != i:
                return tri, j, i
    return None


def check_super_simple(d: AnyDesign) -> CheckResult:
    """No triple in two blocks, plus underlying pair balance 2*lambda.

    For grouped designs the pair condition is taken over cross-group pairs
    (within-group pairs must be uncovered).
    """
    clash = _triple_clash(d.blocks)
    if clash is not None:
        tri, j, i = clash
        return CheckResult(
            "super_simple", False, witness=(tri, j, i),
            message=f"triple {set(tri)} lies in blocks {j} and {i}",
        )
    grouped = d if isinstance(d, GroupedDesign) else None
    if grouped is not None and not grouped.directed:
        return CheckResult("super_simple", True, message="no triple in two blocks")
    v, lam = d.v, d.params.lam
    counts = ordered_pair_counts(d.blocks, v)
    under = counts + counts.T
    target = np.where(_same_group_mask(grouped, v), 0, 2 * lam)
    bad = _first_bad(under, target)
    if bad is not None:
        x, y = bad
        return CheckResult(
            "super_simple", False, witness=(min(x, y), max(x, y), int(under[x, y])),
            message=f"underlying pair {{{x},{y}}} in {under[x, y]} blocks, need {target[x, y]}",
        )
    return CheckResult("super_simple", True, message=f"no triple in two blocks; every pair in {2 * lam} blocks")


def _transversal(g: GroupedDesign) -> Optional[CheckResult]:
    owner = g.point_to_group
    for i, b in enumerate(g.blocks):
        seen: dict[int, int] = {}
        for p in b:
            q = seen.setdefault(owner[p], p)
            if q != p:
                return CheckResult(
                    "transversal", False, witness=(i, q, p),
                    message=f"block {i} {b} meets group {owner[p]} in points {q} and {p}",
                )
    return None


def check_dgdd_balance(g: GroupedDesign) -> CheckResult:
    bad = _transversal(g)
    if bad is not None:
        return CheckResult("dgdd_balance", False, bad.witness, bad.message)
    v, lam = g.v, g.params.lam
    counts = ordered_pair_counts(g.blocks, v)
    if not g.directed:
        counts = counts + counts.T
    same = _same_group_mask(g, v)
    target = np.where(same, 0, lam)
    first = _first_bad(counts, target)
    if first is None:
        kind = "ordered" if g.directed else "unordered"
        return CheckResult("dgdd_balance", True, message=f"every {kind} cross pair covered {lam} times")
    x, y = first
    n_bad = int((counts != target).sum())
    if not g.directed:
        n_bad //= 2
    what = "within-group" if same[x, y] else "cross"
    return CheckResult(
        "dgdd_balance", False, witness=(x, y, int(counts[x, y])),
        message=f"{what} pair ({x},{y}) covered {counts[x, y]} times, need {target[x, y]}; {n_bad} bad pairs",
    )


def check_td(g: GroupedDesign) -> CheckResult:
    """Transversal blocks, every unordered cross pair exactly once."""
    bad = _transversal(g)
    if bad is not None:
        return CheckResult("td", False, bad.witness, bad.message)
    ngroups = len(g.groups)
    for i, b in enumerate(g.blocks):
        if len(b) != ngroups:
            return CheckResult("td", False, witness=(i,), message=f"block {i} has size {len(b)}, need {ngroups}")
    v = g.v
    counts = ordered_pair_counts(g.blocks, v)
    counts = counts + counts.T
    target = np.where(_same_group_mask(g, v), 0, 1)
    first = _first_bad(counts, target)
    if first is None:
        return CheckResult("td", True, message="every cross pair covered once")
    x, y = first
    n_bad = int((counts != target).sum()) // 2
    return CheckResult(
        "td", False, witness=(x, y, int(counts[x, y])),
        message=f"pair {{{x},{y}}} covered {counts[x, y]} times; {n_bad} bad pairs",
    )


def _count_check(expected: Optional[int], actual: int, err: str = "") -> CheckResult:
    if expected is None:
        return CheckResult("block_count", False, message=f"no integral expected count: {err}")
    ok = expected == actual
    return CheckResult(
        "block_count", ok, witness=None if ok else (actual, expected),
        message=f"{actual} blocks" + ("" if ok else f", formula requires {expected}"),
    )


def full_report(obj: AnyDesign, kind: str, label: str = "") -> VerificationReport:
    """Run the count check and every check applicable to ``kind``.

    ``kind`` is ``"dd"``, ``"dgdd"`` or ``"td"``.
    """
    rep = VerificationReport(kind=kind, block_count_actual=len(obj), label=label)
    if kind == "dd":
        if isinstance(obj, GroupedDesign):
            obj = obj.design
        try:
            rep.block_count_expected = expected_block_count_dd(obj.params)
            rep.checks.append(_count_check(rep.block_count_expected, len(obj)))
        except NonIntegerCount as exc:
            rep.checks.append(_count_check(None, len(obj), str(exc)))
        rep.checks += [check_directed_balance(obj), check_simple(obj), check_super_simple(obj)]
        return rep
    if not isinstance(obj, GroupedDesign):
        rep.checks.append(CheckResult("grouped", False, message=f"kind {kind} needs a grouped design"))
        return rep
    if kind == "dgdd":
        try:
            if obj.directed:
                rep.block_count_expected = expected_block_count_dgdd(obj.group_type, obj.params.lam, obj.params.k)
            else:
                rep.block_count_expected = expected_block_count_gdd(obj.group_type, obj.params.lam, obj.params.k)
            rep.checks.append(_count_check(rep.block_count_expected, len(obj)))
        except NonIntegerCount as exc:
            rep.checks.append(_count_check(None, len(obj), str(exc)))
        rep.checks += [check_dgdd_balance(obj), check_simple(obj), check_super_simple(obj)]
        return rep
    if kind == "td":
        sizes = {len(g) for g in obj.groups}
        n = sizes.pop() if len(sizes) == 1 else None
        rep.block_count_expected = n * n if n is not None else None
        rep.checks.append(_count_check(rep.block_count_expected, len(obj), "groups of unequal size"))
        rep.checks.append(check_td(obj))
        return rep
    raise ValueError(f"unknown kind {kind!r}; use dd, dgdd or td")
