"""Maximum clique search, greedy coloring and greedy disjoint clique families."""

from __future__ import annotations

import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .graph import Graph

Clique = tuple[int, ...]

DEFAULT_BITSET_THRESHOLD = 4096


class SearchTimeout(Exception):
    """Raised by a clique search that ran past its deadline."""


@dataclass
class Coloring:
    """A proper coloring with colors ``1..num_colors`` and per-vertex saturation."""

    color: list[int]
    num_colors: int
    saturation: list[int]


@dataclass
class CliqueFamily:
    cliques: list[frozenset[int]] = field(default_factory=list)
    disjoint: bool = True

    def sizes(self) -> list[int]:
        return [len(c) for c in self.cliques]

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)


def degree_order(g: Graph, descending: bool = True) -> list[int]:
    """Vertices by degree; ties always broken by ascending id."""
    if descending:
        return sorted(range(g.n), key=lambda u: (-len(g.adj[u]), u))
    return sorted(range(g.n), key=lambda u: (len(g.adj[u]), u))


def saturation(g: Graph, color: Sequence[int]) -> list[int]:
    return [len({color[v] for v in a}) for a in g.adj]


def greedy_coloring(g: Graph, order: Sequence[int] | None = None) -> Coloring:
    """First-fit coloring; defaults to descending-degree order."""
    if order is None:
        order = degree_order(g)
    color = [0] * g.n
    for v in order:
        used = {color[w] for w in g.adj[v]}
        c = 1
        while c in used:
            c += 1
        color[v] = c
    return Coloring(color, max(color, default=0), saturation(g, color))


def greedy_disjoint_cliques(g: Graph, seed_order: Sequence[int] | None = None) -> CliqueFamily:
    """Partition V into cliques by a single greedy scan.

    Each vertex joins the earliest-created clique it is fully adjacent to,
    otherwise it opens a new singleton. Only cliques holding a neighbor of the
    vertex can qualify, so the scan touches each edge once.
    """
    if seed_order is None:
        seed_order = degree_order(g)
    clique_of = [-1] * g.n
    members: list[list[int]] = []
    for x in seed_order:
        counts: dict[int, int] = {}
        for w in g.adj[x]:
            c = clique_of[w]
            if c >= 0:
                counts[c] = counts.get(c, 0) + 1
        target = min((c for c, cnt in counts.items() if cnt == len(members[c])), default=-1)
        if target < 0:
            target = len(members)
            members.append([])
        members[target].append(x)
        clique_of[x] = target
    return CliqueFamily([frozenset(m) for m in members], disjoint=True)


def _color_sort(p: int, bits: Sequence[int]) -> tuple[list[int], list[int]]:
    order: list[int] = []
    bounds: list[int] = []
    color = 0
    uncolored = p
    while uncolored:
        color += 1
        q = uncolored
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~bits[v]
            q &= ~low
            uncolored &= ~low
            order.append(v)
            bounds.append(color)
    return order, bounds


def _bitset_search(bits: Sequence[int], lower: int, deadline: float | None) -> list[int] | None:
    """Largest clique of size > ``lower`` over local vertices ``0..len(bits)-1``.

    Vertex ``i`` should precede ``j`` when it is the better branching seed
    (higher degree); the coloring scans lowest bits first.
    """
    n = len(bits)
    if n <= lower:
        return None
    best: list[int] | None = None
    best_size = lower
    calls = 0

    def expand(r: list[int], p: int) -> None:
        nonlocal best, best_size, calls
        calls += 1
        if deadline is not None and calls & 1023 == 0 and time.monotonic() > deadline:
            raise SearchTimeout
        order, bounds = _color_sort(p, bits)
        for i in range(len(order) - 1, -1, -1):
            if len(r) + bounds[i] <= best_size:
                return
            v = order[i]
            r.append(v)
            np_ = p & bits[v]
            if np_:
                expand(r, np_)
            elif len(r) > best_size:
                best_size = len(r)
                best = r.copy()
            r.pop()
            p &= ~(1 << v)

    expand([], (1 << n) - 1)
    return best


def _local_bits(
    g: Graph | Sequence[set[int] | frozenset[int]], vertices: Iterable[int]
) -> tuple[list[int], list[int]]:
    """Bitset adjacency of ``G[vertices]`` with local ids in descending local degree.

    ``g`` may also be a plain sequence of neighbor sets (a graph under edit).
    """
    vs = list(vertices)
    vset = set(vs)
    nb = g.nbrs if isinstance(g, Graph) else g
    local_nbrs = {u: nb[u] & vset for u in vs}
    vs.sort(key=lambda u: (-len(local_nbrs[u]), u))
    index = {u: i for i, u in enumerate(vs)}
    rows = []
    for u in vs:
        b = 0
        for w in local_nbrs[u]:
            b |= 1 << index[w]
        rows.append(b)
    return rows, vs


def core_decomposition(g: Graph) -> tuple[list[int], list[int]]:
    """Degeneracy order and core numbers via bucket peeling, O(n + m)."""
    n = g.n
    deg = [len(a) for a in g.adj]
    maxd = max(deg, default=0)
    bins = [0] * (maxd + 1)
    for d in deg:
        bins[d] += 1
    start = 0
    for d in range(maxd + 1):
        bins[d], start = start, start + bins[d]
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(maxd, 0, -1):
        bins[d] = bins[d - 1]
    if maxd >= 0 and n:
        bins[0] = 0
    for i in range(n):
        v = vert[i]
        for u in g.adj[v]:
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    pos[u], pos[w] = pw, pu
                    vert[pu], vert[pw] = w, u
                bins[du] += 1
                deg[u] -= 1
    return vert, deg


def _greedy_clique(g: Graph, seeds: Iterable[int]) -> list[int]:
    best: list[int] = []
    nb = g.nbrs
    for s in seeds:
        clique = [s]
        cand = set(nb[s])
        while cand:
            v = max(cand, key=lambda x: (len(nb[x] & cand), -x))
            clique.append(v)
            cand &= nb[v]
        if len(clique) > len(best):
            best = clique
    return best


def find_clique_above(
    g: Graph,
    lower: int,
    *,
    deadline: float | None = None,
    bitset_threshold: int = DEFAULT_BITSET_THRESHOLD,
) -> Clique | None:
    """A maximum clique of ``g`` if its size exceeds ``lower``, else ``None``."""
    if g.n == 0 or lower >= g.n:
        return None
    if lower < 1 and g.m == 0:
        return (0,)
    if g.n <= bitset_threshold:
        rows, vs = _local_bits(g, range(g.n))
        found = _bitset_search(rows, lower, deadline)
        return None if found is None else tuple(sorted(vs[i] for i in found))

    order, core = core_decomposition(g)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    heuristic = _greedy_clique(g, order[-min(64, g.n):])
    best: list[int] | None = heuristic if len(heuristic) > lower else None
    best_size = max(lower, len(heuristic))
    for v in reversed(order):
        if core[v] + 1 <= best_size:
            continue
        fwd = [u for u in g.adj[v] if pos[u] > pos[v] and core[u] + 1 > best_size]
        if len(fwd) + 1 <= best_size:
            continue
        rows, vs = _local_bits(g, fwd)
        found = _bitset_search(rows, best_size - 1, deadline)
        if found is not None:
            best = [v] + [vs[i] for i in found]
            best_size = len(best)
    return None if best is None else tuple(sorted(best))


def disjoint_cliques_above(
    g: Graph,
    lower: int,
    *,
    exclude: Iterable[int] = (),
    limit: int | None = None,
    deadline: float | None = None,
) -> list[Clique]:
    """Vertex-disjoint cliques of size ``> lower``, collected in one degeneracy-ordered pass.

    Each vertex, highest core first, is grown into the largest clique found in
    its later, still-unused neighbors. No maximality guarantee for the family.
    """
    if g.n == 0 or lower >= g.n:
        return []
    order, core = core_decomposition(g)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    used = set(exclude)
    found: list[Clique] = []
    for v in reversed(order):
        if limit is not None and len(found) >= limit:
            break
        if v in used or core[v] < lower:
            continue
        fwd = [u for u in g.adj[v] if pos[u] > pos[v] and u not in used and core[u] >= lower]
        if len(fwd) < lower:
            continue
        rows, vs = _local_bits(g, fwd)
        sub = _bitset_search(rows, lower - 1, deadline)
        if sub is None and lower >= 1:
            continue
        clique = tuple(sorted([v] + [vs[i] for i in sub or ()]))
        found.append(clique)
        used.update(clique)
    return found


def max_clique(g: Graph, **kwargs) -> Clique:
    """A maximum clique; the empty tuple for the empty graph."""
    found = find_clique_above(g, 0, **kwargs)
    return () if found is None else found


def clique_number(g: Graph, **kwargs) -> int:
    return len(max_clique(g, **kwargs))


def subset_clique_above(
    nbrs: Graph | Sequence[set[int] | frozenset[int]],
    vertices: Iterable[int],
    lower: int,
    deadline: float | None = None,
) -> list[int] | None:
    """Maximum clique inside ``vertices`` if larger than ``lower``, in host ids."""
    rows, vs = _local_bits(nbrs, vertices)
    found = _bitset_search(rows, lower, deadline)
    return None if found is None else [vs[i] for i in found]


def neighborhood_clique_sizes(g: Graph, lb: int = 0, *, deadline: float | None = None) -> list[int]:
    """``omega(G[N(u)])`` for every vertex, capped below ``lb - 1``.

    Entries ``>= lb - 1`` are exact. Smaller entries are upper bounds, each at
    most ``lb - 2``: neighborhoods that cannot reach ``lb - 1`` are abandoned
    as soon as the search proves it.
    """
    cap = lb - 2
    out = []
    for u in range(g.n):
        d = len(g.adj[u])
        if d == 0 or d <= cap:
            out.append(d)
            continue
        lower = max(cap, 0)
        rows, _ = _local_bits(g, g.adj[u])
        found = _bitset_search(rows, lower, deadline)
        out.append(cap if found is None else len(found))
    return out
