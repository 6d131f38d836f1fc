"""Run every catalog table through the verifier and explain what breaks.

Besides the per-entry verdicts this module looks for the two cheapest ways a
table can be misprinted, a single wrong entry or two entries of one block
printed in swapped order, and proposes repairs.  Candidates are screened on
difference counts over Z_n (which decide pair balance for a fully developed
table) and only then fully verified, so the search stays fast.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .catalog import CatalogEntry, catalog_build, catalog_get, catalog_list
from .develop import develop
from .errors import NonIntegerCount
from .model import Block, DirectedDesign, GroupedDesign, expected_block_count_dd, expected_block_count_dgdd
from .verify import VerificationReport, full_report


@dataclass(frozen=True)
class Repair:
    base_index: int
    old: Block
    new: Block

    def describe(self) -> str:
        return f"base block {self.base_index}: {self.old} -> {self.new}"


@dataclass
class ErratumRow:
    entry: CatalogEntry
    report: VerificationReport
    formula_blocks: Optional[int]
    duplicate_base: list[tuple[int, int]] = field(default_factory=list)
    repairs: list[Repair] = field(default_factory=list)

    @property
    def confirmed(self) -> bool:
        return self.report.passed

    def witness_lines(self) -> list[str]:
        out = [c.line() for c in self.report.failures()]
        for i, j in self.duplicate_base:
            out.append(f"base block {self.entry.base_blocks[i]} printed twice (positions {i} and {j})")
        out += ["possible repair: " + r.describe() for r in self.repairs]
        return out


def formula_blocks(entry: CatalogEntry) -> Optional[int]:
    try:
        if entry.num_groups is None:
            return expected_block_count_dd(entry.params)
        if not entry.directed:
            return None
        return expected_block_count_dgdd(entry.group_type, entry.lam)
    except NonIntegerCount:
        return None


def duplicate_base_blocks(entry: CatalogEntry) -> list[tuple[int, int]]:
    first: dict[Block, int] = {}
    out = []
    for i, b in enumerate(entry.base_blocks):
        j = first.setdefault(tuple(b), i)
        if j != i:
            out.append((j, i))
    return out


# --- repair search -------------------------------------------------------------


def _target(entry: CatalogEntry) -> np.ndarray:
    """Required count of every ordered difference d in Z_n."""
    n, lam = entry.modulus, entry.lam
    t = np.full(n, lam, dtype=np.int64)
    if entry.num_groups is None:
        t[0] = 0
    else:
        t[np.arange(n) % entry.num_groups == 0] = 0
    return t


def _block_diffs(b: Sequence[int], n: int) -> np.ndarray:
    c = np.zeros(n, dtype=np.int64)
    for i, j in combinations(range(len(b)), 2):
        c[(b[j] - b[i]) % n] += 1
    return c


def _candidate_blocks(b: Block, n: int):
    seen = {b}
    for pos in range(len(b)):
        for val in range(n):
            if val in b:
                continue
            nb = b[:pos] + (val,) + b[pos + 1:]
            if nb not in seen:
                seen.add(nb)
                yield nb
    for i, j in combinations(range(len(b)), 2):
        nb = list(b)
        nb[i], nb[j] = nb[j], nb[i]
        nb = tuple(nb)
        if nb not in seen:
            seen.add(nb)
            yield nb


def _rebuild(entry: CatalogEntry, base: Sequence[Block]):
    design = DirectedDesign(entry.params, tuple(develop(base, entry.modulus)))
    if entry.num_groups is None:
        return design, "dd"
    return GroupedDesign(design, entry.groups(), directed=entry.directed), "dgdd"


def suggest_repairs(entry: CatalogEntry, limit: int = 5) -> list[Repair]:
    """Single-entry substitutions or in-block swaps that make the table verify.

    Only meaningful when the block count already matches the formula; a
    missing or surplus base block cannot be fixed by editing one.
    """
    if not entry.directed or formula_blocks(entry) != len(entry.base_blocks) * entry.modulus:
        return []
    n = entry.modulus
    base = list(entry.base_blocks)
    per_block = [_block_diffs(b, n) for b in base]
    total = sum(per_block)
    target = _target(entry)
    if np.array_equal(total, target):
        return []  # balance holds; a triple clash is not a one-entry slip
    out = []
    for bi, b in enumerate(base):
        rest = total - per_block[bi]
        for nb in _candidate_blocks(b, n):
            if not np.array_equal(rest + _block_diffs(nb, n), target):
                continue
            trial = base[:bi] + [nb] + base[bi + 1:]
            obj, kind = _rebuild(entry, trial)
            if full_report(obj, kind).passed:
                out.append(Repair(bi, b, nb))
                if len(out) >= limit:
                    return out
    return out


# --- report --------------------------------------------------------------------


def errata_rows(entries: Optional[Sequence[CatalogEntry]] = None, repairs: bool = True) -> list[ErratumRow]:
    rows = []
    for e in entries if entries is not None else catalog_list():
        obj = catalog_build(e)
        if e.num_groups is None:
            kind = "dd"
        else:
            kind = "dgdd"
        rep = full_report(obj, kind, label=e.id)
        row = ErratumRow(e, rep, formula_blocks(e), duplicate_base_blocks(e))
        if repairs and not rep.passed:
            row.repairs = suggest_repairs(e)
        rows.append(row)
    return rows


def known_inconsistencies() -> list[str]:
    """The three grouped tables whose printed counts clash with the formula."""
    lines = []
    for eid in ("dgdd-9pow4", "dgdd-13pow4"):
        e = catalog_get(eid)
        rep = full_report(catalog_build(e), "dgdd", label=eid)
        bal = next(c for c in rep.checks if c.name == "dgdd_balance")
        lines.append(
            f"{eid}: table develops to {e.claimed_blocks} blocks, type {e.group_type} requires "
            f"{formula_blocks(e)}; witness {bal.message}"
        )
    e = catalog_get("dgdd-19pow4")
    dups = duplicate_base_blocks(e)
    rep = full_report(catalog_build(e), "dgdd", label=e.id)
    simple = next(c for c in rep.checks if c.name == "simple")
    for i, j in dups:
        fixed = len(e.base_blocks) - 1
        lines.append(
            f"{e.id}: base block {e.base_blocks[i]} printed twice (positions {i} and {j}); "
            f"witness {simple.message}; dropping one copy leaves {fixed * e.modulus} blocks, "
            f"formula requires {formula_blocks(e)}, table claims {e.claimed_blocks}"
        )
    return lines


def render_errata(rows: Sequence[ErratumRow]) -> str:
    head = f"{'id':<14} {'claimed':>7} {'formula':>7} {'actual':>6}  verdict"
    lines = [head, "-" * len(head)]
    for r in rows:
        verdict = "confirmed" if r.confirmed else "REFUTED"
        formula = "-" if r.formula_blocks is None else str(r.formula_blocks)
        lines.append(
            f"{r.entry.id:<14} {r.entry.claimed_blocks:>7} {formula:>7} {r.report.block_count_actual:>6}  {verdict}"
        )
        for w in r.witness_lines():
            lines.append(f"    {w}")
    lines.append("")
    lines.append("documented grouped-table inconsistencies:")
    lines += ["  " + s for s in known_inconsistencies()]
    ok = sum(r.confirmed for r in rows)
    lines.append("")
    lines.append(f"{ok} of {len(rows)} tables verified; {len(rows) - ok} flagged")
    return "\n".join(lines) + "\n"
