"""Volume-2 directed trades, cyclical trades and defining-set lower bounds.

Only transposition trades are detected: two blocks ``b1, b2`` sharing points
``x, y`` such that swapping ``x`` and ``y`` inside both tuples yields two new
blocks covering the same ordered pairs.  Any defining set must contain a
block of every trade, so a block-disjoint packing of trade edges (1 block
each) and cyclical trades of volume ``s`` (``ceil(s/2)`` blocks each) is a
lower bound on the size of every defining set.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Optional, Sequence, Union

from .catalog import CatalogEntry
from .develop import shift
from .errors import InvalidCertificate, NotDeveloped
from .model import AnyDesign, Block


def ordered_pairs(block: Sequence[int]) -> list[tuple[int, int]]:
    return [(block[i], block[j]) for i, j in combinations(range(len(block)), 2)]


def swap_points(block: Sequence[int], x: int, y: int) -> Block:
    return tuple(y if p == x else x if p == y else p for p in block)


def is_volume2_trade(b1: Sequence[int], b2: Sequence[int], x: int, y: int) -> bool:
    b1, b2 = tuple(b1), tuple(b2)
    if x == y or b1 == b2:
        return False
    if x not in b1 or y not in b1 or x not in b2 or y not in b2:
        return False
    c1, c2 = swap_points(b1, x, y), swap_points(b2, x, y)
    if {c1, c2} & {b1, b2}:
        return False
    return Counter(ordered_pairs(b1) + ordered_pairs(b2)) == Counter(ordered_pairs(c1) + ordered_pairs(c2))


def find_swap(b1: Sequence[int], b2: Sequence[int]) -> Optional[tuple[int, int]]:
    """Smallest swap pair making ``(b1, b2)`` a volume-2 trade, if any."""
    shared = sorted(set(b1) & set(b2))
    for x, y in combinations(shared, 2):
        if is_volume2_trade(b1, b2, x, y):
            return x, y
    return None


@dataclass(frozen=True, order=True)
class TradePair:
    i: int
    j: int
    x: int
    y: int

    def line(self) -> str:
        return f"E {self.i} {self.j} {self.x} {self.y}"


@dataclass(frozen=True)
class CyclicalTrade:
    blocks: tuple[int, ...]

    @property
    def volume(self) -> int:
        return len(self.blocks)

    @property
    def forced(self) -> int:
        return (len(self.blocks) + 1) // 2

    def line(self) -> str:
        return "C " + " ".join(map(str, self.blocks))


@dataclass(frozen=True)
class BoundCertificate:
    edges: tuple[TradePair, ...] = ()
    cycles: tuple[CyclicalTrade, ...] = ()
    total_blocks: int = 0

    @property
    def bound(self) -> int:
        return len(self.edges) + sum(c.forced for c in self.cycles)

    @property
    def ratio(self) -> float:
        return self.bound / self.total_blocks if self.total_blocks else 0.0

    def block_indices(self) -> list[int]:
        out = [i for e in self.edges for i in (e.i, e.j)]
        out += [i for c in self.cycles for i in c.blocks]
        return out

    def without_edge(self, k: int) -> "BoundCertificate":
        return BoundCertificate(self.edges[:k] + self.edges[k + 1:], self.cycles, self.total_blocks)

    def relabel(self, mapping: Sequence[int]) -> "BoundCertificate":
        """Rename block indices: old index ``i`` becomes ``mapping[i]``."""
        edges = tuple(sorted(
            TradePair(min(mapping[e.i], mapping[e.j]), max(mapping[e.i], mapping[e.j]), e.x, e.y)
            for e in self.edges
        ))
        cycles = tuple(CyclicalTrade(tuple(mapping[i] for i in c.blocks)) for c in self.cycles)
        return BoundCertificate(edges, cycles, self.total_blocks)

    def shifted(self, block_offset: int, point_map: Sequence[int], total_blocks: int) -> "BoundCertificate":
        """Move into a larger design: blocks offset, swap points relabeled."""
        edges = tuple(
            TradePair(e.i + block_offset, e.j + block_offset, point_map[e.x], point_map[e.y]) for e in self.edges
        )
        cycles = tuple(CyclicalTrade(tuple(i + block_offset for i in c.blocks)) for c in self.cycles)
        return BoundCertificate(edges, cycles, total_blocks)

    def to_lines(self) -> list[str]:
        lines = ["%CERT"]
        lines += ["%" + e.line() for e in self.edges]
        lines += ["%" + c.line() for c in self.cycles]
        lines.append(f"%BOUND {self.bound}")
        return lines


def union_certificates(certs: Sequence[BoundCertificate], total_blocks: int) -> BoundCertificate:
    return BoundCertificate(
        tuple(e for c in certs for e in c.edges),
        tuple(cy for c in certs for cy in c.cycles),
        total_blocks,
    )


def parse_certificate(text: Union[str, bytes], total_blocks: int = 0) -> BoundCertificate:
    """Read the ``%CERT`` section of a design file."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    edges, cycles, stated, inside = [], [], None, False
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line == "%CERT":
            inside = True
            continue
        if not inside or not line.startswith("%"):
            continue
        toks = line[1:].split()
        if not toks:
            continue
        try:
            if toks[0] == "E" and len(toks) == 5:
                edges.append(TradePair(*map(int, toks[1:])))
            elif toks[0] == "C" and len(toks) >= 3:
                cycles.append(CyclicalTrade(tuple(map(int, toks[1:]))))
            elif toks[0] == "BOUND" and len(toks) == 2:
                stated = int(toks[1])
                break
            else:
                raise ValueError(line)
        except ValueError:
            raise InvalidCertificate(f"line {lineno}: malformed certificate line {line!r}") from None
    if stated is None:
        raise InvalidCertificate("no %CERT ... %BOUND section")
    cert = BoundCertificate(tuple(edges), tuple(cycles), total_blocks)
    if cert.bound != stated:
        raise InvalidCertificate(f"stated BOUND {stated} but edges and cycles give {cert.bound}")
    return cert


# --- block-level trade graph -------------------------------------------------


@dataclass
class TradeGraph:
    n: int
    edges: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for a in adj:
            a.sort()
        return adj

    def witness(self, i: int, j: int) -> tuple[int, int]:
        return self.edges[(i, j) if i < j else (j, i)]

    def degree(self) -> list[int]:
        return [len(a) for a in self.adjacency()]


def find_block_trades(d: AnyDesign) -> TradeGraph:
    """Edge ``(i, j)`` for every pair of blocks forming a transposition trade.

    The stored witness is the lexicographically smallest swap pair.
    """
    blocks = d.blocks
    by_pair: dict[tuple[int, int], list[int]] = defaultdict(list)
    for idx, b in enumerate(blocks):
        for x, y in combinations(sorted(b), 2):
            by_pair[(x, y)].append(idx)
    g = TradeGraph(len(blocks))
    for (x, y) in sorted(by_pair):
        members = by_pair[(x, y)]
        for i, j in combinations(members, 2):
            if (i, j) not in g.edges and is_volume2_trade(blocks[i], blocks[j], x, y):
                g.edges[(i, j)] = (x, y)
    return g


# --- orbit-level scan --------------------------------------------------------


@dataclass(frozen=True)
class OrbitRelation:
    """Base block ``i`` and ``shift(base j, s)`` form a trade with swap (x, y)."""

    i: int
    j: int
    s: int
    x: int
    y: int


def orbit_relations(entry: CatalogEntry) -> list[OrbitRelation]:
    n = entry.modulus
    base = entry.base_blocks
    rels = []
    for i in range(len(base)):
        for j in range(i, len(base)):
            for s in range(n):
                if i == j and (s == 0 or s > n - s):
                    continue
                sw = find_swap(base[i], shift(base[j], s, n))
                if sw is not None:
                    rels.append(OrbitRelation(i, j, s, *sw))
    return rels


@dataclass(frozen=True)
class _Structure:
    orbits: tuple[int, ...]           # visiting order, distinct
    steps: tuple[tuple[int, OrbitRelation], ...]  # (offset, relation) per step
    value: int
    key: tuple


def _structures(rels: list[OrbitRelation], n: int, max_len: int) -> list[_Structure]:
    """Closed walks through distinct orbits in the orbit quotient graph."""
    out: dict[tuple, _Structure] = {}
    arcs: dict[int, list[tuple[int, int, OrbitRelation]]] = defaultdict(list)
    for r in rels:
        if r.i == r.j:
            arcs[r.i].append((r.i, r.s, r))
        else:
            arcs[r.i].append((r.j, r.s, r))
            arcs[r.j].append((r.i, -r.s, r))

    def add(orbits, steps):
        sigma = sum(o for o, _ in steps) % n
        g = gcd(n, sigma)
        length = len(orbits) * n // g
        value = g * ((length + 1) // 2)
        key = (tuple(sorted(orbits)), tuple(sorted((r.i, r.j, r.s) for _, r in steps)))
        best = out.get(key[0])
        cand = _Structure(tuple(orbits), tuple(steps), value, key)
        if best is None or (value, _neg(key)) > (best.value, _neg(best.key)):
            out[key[0]] = cand

    for r in rels:
        if r.i == r.j:
            add([r.i], [(r.s, r)])
        else:
            add([r.i, r.j], [(r.s, r), (-r.s, r)])

    def dfs(start, path, steps):
        here = path[-1]
        for nxt, off, r in arcs[here]:
            if nxt == start and len(path) >= 2 and not (len(path) == 2 and r is steps[0][1]):
                add(path, steps + [(off, r)])
            elif nxt > start and nxt not in path and len(path) < max_len:
                dfs(start, path + [nxt], steps + [(off, r)])

    for start in sorted(arcs):
        dfs(start, [start], [])
    return sorted(out.values(), key=lambda st: st.key)


def _neg(key):
    # lexicographically smaller keys win ties
    return tuple(-x for x in _flat(key))


def _flat(x):
    if isinstance(x, tuple):
        for y in x:
            yield from _flat(y)
    else:
        yield x


def _best_packing(structs: list[_Structure], num_orbits: int) -> list[_Structure]:
    """Maximum-value set of orbit-disjoint structures (branch and bound)."""
    by_orbit: list[list[_Structure]] = [[] for _ in range(num_orbits)]
    for st in structs:
        by_orbit[min(st.orbits)].append(st)
    per_orbit = [0.0] * num_orbits
    for st in structs:
        for o in st.orbits:
            per_orbit[o] = max(per_orbit[o], st.value / len(st.orbits))
    best_value, best_choice = -1, []
    masks = {id(st): sum(1 << o for o in st.orbits) for st in structs}

    def search(o, used, value, chosen):
        nonlocal best_value, best_choice
        while o < num_orbits and used >> o & 1:
            o += 1
        if o == num_orbits:
            if value > best_value:
                best_value, best_choice = value, list(chosen)
            return
        bound = value + sum(per_orbit[p] for p in range(o, num_orbits) if not used >> p & 1)
        if bound <= best_value:
            return
        for st in sorted(by_orbit[o], key=lambda s: (-s.value / len(s.orbits), s.key)):
            m = masks[id(st)]
            if not used & m:
                chosen.append(st)
                search(o + 1, used | m, value + st.value, chosen)
                chosen.pop()
        search(o + 1, used | (1 << o), value, chosen)

    search(0, 0, 0, [])
    return best_choice


def _lift(st: _Structure, base: Sequence[Block], n: int) -> tuple[list[TradePair], list[CyclicalTrade]]:
    sigma = sum(o for o, _ in st.steps) % n
    g = gcd(n, sigma)
    rounds = n // g
    edges, cycles = [], []
    for r0 in range(g):
        seq = []
        pos = r0
        for _ in range(rounds):
            for t, orbit in enumerate(st.orbits):
                seq.append(orbit * n + pos % n)
                pos += st.steps[t][0]
        if len(seq) == 2:
            a, b = seq
            blk_a = shift(base[a // n], a % n, n)
            blk_b = shift(base[b // n], b % n, n)
            x, y = find_swap(blk_a, blk_b)
            edges.append(TradePair(min(a, b), max(a, b), x, y))
        else:
            cycles.append(CyclicalTrade(tuple(seq)))
    return edges, cycles


def orbit_trade_scan(entry: CatalogEntry, max_cycle_orbits: int = 6) -> BoundCertificate:
    """Certificate for a cyclically developed entry, found at base-block level.

    Block indices follow ``catalog_build``: block ``i * n + r`` is base block
    ``i`` shifted by ``r``.  Orbit-level structures are closed walks in the
    quotient graph; a walk through ``k`` orbits with total offset ``sigma``
    lifts to ``gcd(n, sigma)`` cyclical trades of volume ``k*n/gcd(n, sigma)``
    (volume 2 ones are plain trade edges).
    """
    if not entry.modulus or not entry.base_blocks:
        raise NotDeveloped(f"{entry.id} has no cyclic development")
    n = entry.modulus
    base = entry.base_blocks
    structs = _structures(orbit_relations(entry), n, max_cycle_orbits)
    chosen = _best_packing(structs, len(base))
    edges, cycles = [], []
    for st in sorted(chosen, key=lambda s: s.key):
        e, c = _lift(st, base, n)
        edges += e
        cycles += c
    return BoundCertificate(tuple(sorted(edges)), tuple(cycles), len(base) * n)


# --- generic fallback --------------------------------------------------------


def _components(adj: list[list[int]]) -> list[list[int]]:
    seen = [False] * len(adj)
    comps = []
    for s in range(len(adj)):
        if seen[s] or not adj[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _walk(adj, start, comp_set):
    order, prev, cur = [start], None, start
    while True:
        nxt = [w for w in adj[cur] if w != prev and w in comp_set]
        if not nxt or nxt[0] == start:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def _augmenting_matching(adj: list[list[int]], comp: list[int]) -> dict[int, int]:
    mate: dict[int, int] = {}
    for u in comp:
        if u not in mate:
            for w in adj[u]:
                if w not in mate:
                    mate[u], mate[w] = w, u
                    break

    def augment(root):
        # iterative alternating-path DFS; one visited set per attempt
        seen = {root}
        stack = [(root, iter(adj[root]))]
        path: list[tuple[int, int]] = []
        while stack:
            u, it = stack[-1]
            for w in it:
                if w in seen:
                    continue
                seen.add(w)
                if w not in mate:
                    for a, b in path + [(u, w)]:
                        mate[a], mate[b] = b, a
                    return True
                m = mate[w]
                if m in seen:
                    continue
                seen.add(m)
                path.append((u, w))
                stack.append((m, iter(adj[m])))
                break
            else:
                stack.pop()
                if path:
                    path.pop()
        return False

    improved = True
    while improved:
        improved = False
        for u in comp:
            if u not in mate and augment(u):
                improved = True
    return mate


def _tree_path(parent, x):
    out = [x]
    while parent[x] is not None:
        x = parent[x]
        out.append(x)
    return out  # x ... root


def _odd_cycle_upgrades(adj, mate, comp, used=None):
    """Swap matched edges for odd cycles through unmatched blocks.

    Grows an alternating BFS tree from each free block.  An edge joining two
    even vertices closes an odd cycle at their common ancestor ``w``; the
    stem from the root to ``w`` is flipped so that ``w`` is free, after which
    the cycle carries one more block than its matched edges did.  Mutates
    ``mate``; returns the cycles.
    """
    used = set() if used is None else used
    cycles = []
    progress = True
    while progress:
        progress = False
        for root in comp:
            if root in mate or root in used:
                continue
            cyc = _grow_tree(adj, mate, used, root)
            if cyc is None:
                continue
            progress = True
            if not cyc:
                continue  # the matching grew instead
            for w in cyc:
                mate.pop(w, None)
            used.update(cyc)
            cycles.append(cyc)
    return cycles


def _grow_tree(adj, mate, used, root):
    parent = {root: None}
    even = {root}
    queue = [root]
    for u in queue:
        for w in adj[u]:
            if w in used or w == parent[u]:
                continue
            if w in even:
                # odd cycle: u -> lca <- w plus edge u-w
                pu, pw = _tree_path(parent, u), _tree_path(parent, w)
                on_w = set(pw)
                lca = next(x for x in pu if x in on_w)
                left = pu[:pu.index(lca)]
                right = pw[:pw.index(lca)]
                stem = _tree_path(parent, lca)[::-1]  # root ... lca
                for a in stem:
                    mate.pop(a, None)
                for a, b in zip(stem[::2], stem[1::2]):
                    mate[a], mate[b] = b, a
                return [lca] + left[::-1] + right
            if w in parent:
                continue  # odd vertex already in tree
            if w not in mate:
                path = [w] + _tree_path(parent, u)
                for a, b in zip(path[::2], path[1::2]):
                    mate[a], mate[b] = b, a
                return []
            m = mate[w]
            if m in used or m in parent:
                continue
            parent[w] = u
            parent[m] = w
            even.add(m)
            queue.append(m)
    return None


def _triangles(adj, comp):
    """Greedy vertex-disjoint triangles, lowest indices first."""
    nbr = {u: set(adj[u]) for u in comp}
    used: set[int] = set()
    out = []
    for a in comp:
        if a in used:
            continue
        for b in adj[a]:
            if b < a or b in used:
                continue
            common = sorted(c for c in nbr[a] & nbr[b] if c > b and c not in used)
            if common:
                out.append([a, b, common[0]])
                used.update(out[-1])
                break
    return out, used


def _matching_strategy(adj, comp, seed_triangles):
    if seed_triangles:
        cycs, used = _triangles(adj, comp)
    else:
        cycs, used = [], set()
    rest = [u for u in comp if u not in used]
    sub = [[w for w in adj[u] if w not in used] if u not in used else [] for u in range(len(adj))]
    mate = _augmenting_matching(sub, rest)
    cycs = cycs + _odd_cycle_upgrades(sub, mate, rest, set(used))
    pairs = sorted((u, mate[u]) for u in rest if u in mate and u < mate[u])
    value = len(pairs) + sum((len(c) + 1) // 2 for c in cycs)
    return value, pairs, cycs


def generic_bound(
    d: AnyDesign, graph: Optional[TradeGraph] = None, edges_only: bool = False
) -> BoundCertificate:
    """Certificate from the block trade graph, with no cyclic structure assumed.

    Edge, path and cycle components are handled exactly; other components use
    a matching grown by augmenting paths, upgraded with odd cycles through
    unmatched blocks where they exist.  ``edges_only`` stops at the matching.
    """
    g = graph if graph is not None else find_block_trades(d)
    adj = g.adjacency()
    edges: list[TradePair] = []
    cycles: list[CyclicalTrade] = []

    def edge(a, b):
        x, y = g.witness(a, b)
        edges.append(TradePair(min(a, b), max(a, b), x, y))

    for comp in _components(adj):
        degs = [len(adj[u]) for u in comp]
        if max(degs) <= 2:
            comp_set = set(comp)
            ends = [u for u in comp if len(adj[u]) == 1]
            order = _walk(adj, ends[0] if ends else comp[0], comp_set)
            if not ends and len(comp) >= 3 and not edges_only:
                cycles.append(CyclicalTrade(tuple(order)))
            else:
                for a, b in zip(order[::2], order[1::2]):
                    edge(a, b)
            continue
        best = None
        for seed_triangles in (False, True):
            if edges_only:
                mate = _augmenting_matching(adj, comp)
                pairs = sorted((u, mate[u]) for u in comp if u in mate and u < mate[u])
                best = (len(pairs), pairs, [])
                break
            cand = _matching_strategy(adj, comp, seed_triangles)
            if best is None or cand[0] > best[0]:
                best = cand
        _, pairs, cycs = best
        cycles += [CyclicalTrade(tuple(c)) for c in cycs]
        for a, b in pairs:
            edge(a, b)
    return BoundCertificate(tuple(sorted(edges)), tuple(cycles), len(d.blocks))


# --- certification -----------------------------------------------------------


def validate_certificate(d: AnyDesign, cert: BoundCertificate) -> int:
    """Recheck every edge and cycle from scratch; return the recomputed bound."""
    blocks = d.blocks
    seen: set[int] = set()

    def claim(i, what):
        if not 0 <= i < len(blocks):
            raise InvalidCertificate(f"{what}: block index {i} out of range")
        if i in seen:
            raise InvalidCertificate(f"{what}: block {i} used twice")
        seen.add(i)

    for e in cert.edges:
        claim(e.i, e.line())
        claim(e.j, e.line())
        if not is_volume2_trade(blocks[e.i], blocks[e.j], e.x, e.y):
            raise InvalidCertificate(f"{e.line()}: not a volume-2 trade")
    for c in cert.cycles:
        if c.volume < 2:
            raise InvalidCertificate(f"{c.line()}: cycle needs at least 2 blocks")
        for i in c.blocks:
            claim(i, c.line())
        for a, b in zip(c.blocks, c.blocks[1:] + c.blocks[:1]):
            if find_swap(blocks[a], blocks[b]) is None:
                raise InvalidCertificate(f"{c.line()}: blocks {a} and {b} do not form a trade")
    return len(cert.edges) + sum(c.forced for c in cert.cycles)


def certify_half(d: AnyDesign, cert: BoundCertificate) -> bool:
    bound = validate_certificate(d, cert)
    return 2 * bound >= len(d.blocks)
