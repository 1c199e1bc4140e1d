"""Value-preserving reduction rules for clique interdiction.

Every rule takes an :class:`Instance` whose ``lb`` is a valid lower bound on
the interdiction value and returns a new, compacted instance with the same
value. Vertex-removal rules either discard vertices for free (they cannot
matter for any optimal interdiction) or force them into the interdiction set,
spending budget.
"""

from __future__ import annotations

import time
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace

from .clique import Coloring, greedy_coloring, subset_clique_above
from .graph import Edge, Graph, from_adjacency_sets, triangle_counts


@dataclass
class StageStat:
    name: str
    vertices_removed: int
    edges_removed: int
    seconds: float


@dataclass
class Instance:
    """A graph, remaining budget and lower bound, plus bookkeeping back to the input graph."""

    graph: Graph
    k: int
    lb: int
    original_k: int
    id_map: tuple[int, ...]
    forced: frozenset[int] = frozenset()
    removed_free: frozenset[int] = frozenset()
    stage_stats: list[StageStat] = field(default_factory=list)

    @classmethod
    def initial(cls, graph: Graph, k: int, lb: int = 0) -> Instance:
        if k < 0:
            raise ValueError("budget k must be nonnegative")
        return cls(graph, k, lb, k, tuple(range(graph.n)))

    def original_ids(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.id_map[v] for v in vertices)


def _rebuild(
    inst: Instance,
    name: str,
    t0: float,
    adj: Sequence[set[int]],
    alive: Sequence[bool],
    forced_now: Iterable[int] = (),
    k: int | None = None,
) -> Instance:
    """Compact the edited adjacency into a fresh instance and log the stage."""
    forced_now = set(forced_now)
    old = inst.graph
    keep = [u for u in range(old.n) if alive[u]]
    index = {u: i for i, u in enumerate(keep)}
    sets = [{index[v] for v in adj[u] if v in index} for u in keep]
    graph = from_adjacency_sets(sets)
    dropped = [u for u in range(old.n) if not alive[u]]
    free = frozenset(inst.id_map[u] for u in dropped if u not in forced_now)
    forced = frozenset(inst.id_map[u] for u in forced_now)
    stat = StageStat(name, len(dropped), old.m - graph.m, time.perf_counter() - t0)
    return replace(
        inst,
        graph=graph,
        k=inst.k if k is None else k,
        id_map=tuple(inst.id_map[u] for u in keep),
        forced=inst.forced | forced,
        removed_free=inst.removed_free | free,
        stage_stats=inst.stage_stats + [stat],
    )


def _edit_copy(g: Graph) -> tuple[list[set[int]], list[bool]]:
    return [set(a) for a in g.adj], [True] * g.n


def _key(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def degree_triangle_reduce(
    inst: Instance, *, use_degree: bool = True, use_triangle: bool = True
) -> Instance:
    """Delete vertices of degree ``<= lb - 2`` and edges in ``<= lb - 3`` triangles.

    Both rules share one worklist: removing an edge lowers two degrees and the
    triangle counts of the edges it closed triangles with, removing a vertex
    removes its incident edges. Counts are updated incrementally.
    """
    t0 = time.perf_counter()
    g = inst.graph
    deg_cap = inst.lb - 2 if use_degree else -1
    tri_cap = inst.lb - 3 if use_triangle else -1
    adj, alive = _edit_copy(g)
    if deg_cap < 0 and tri_cap < 0:
        return _rebuild(inst, "degree_triangle", t0, adj, alive)

    counts = triangle_counts(g) if tri_cap >= 0 else None
    vq = deque(u for u in range(g.n) if len(adj[u]) <= deg_cap)
    eq = deque(e for e, c in counts.items() if c <= tri_cap) if counts is not None else deque()

    def delete_edge(a: int, b: int) -> None:
        adj[a].discard(b)
        adj[b].discard(a)
        if counts is not None:
            del counts[_key(a, b)]
            for x in adj[a] & adj[b]:
                for e in (_key(a, x), _key(b, x)):
                    counts[e] -= 1
                    if counts[e] == tri_cap:
                        eq.append(e)
        for w in (a, b):
            if alive[w] and len(adj[w]) == deg_cap:
                vq.append(w)

    while vq or eq:
        if vq:
            v = vq.popleft()
            if not alive[v]:
                continue
            alive[v] = False
            for w in list(adj[v]):
                delete_edge(v, w)
        else:
            a, b = eq.popleft()
            if b in adj[a]:
                delete_edge(a, b)
    return _rebuild(inst, "degree_triangle", t0, adj, alive)


@dataclass
class ColorReduceTrace:
    pops: int = 0
    recolors: int = 0


def _mex(keys) -> int:
    c = 1
    while c in keys:
        c += 1
    return c


def color_reduce(
    inst: Instance, coloring: Coloring | None = None, trace: ColorReduceTrace | None = None
) -> Instance:
    """Delete vertices whose saturation is ``<= lb - 2``, recoloring as the graph shrinks.

    A queued vertex is deleted if its saturation is still low enough, otherwise
    it takes the smallest color free among its neighbors. Neighbors are
    re-queued when their saturation falls to the threshold or when their own
    color could drop.
    """
    t0 = time.perf_counter()
    g = inst.graph
    cap = inst.lb - 2
    adj, alive = _edit_copy(g)
    if cap < 0 or g.n == 0:
        return _rebuild(inst, "color", t0, adj, alive)
    if coloring is None:
        coloring = greedy_coloring(g)
    color = list(coloring.color)
    seen: list[dict[int, int]] = []
    for u in range(g.n):
        cnt: dict[int, int] = {}
        for v in adj[u]:
            cnt[color[v]] = cnt.get(color[v], 0) + 1
        seen.append(cnt)

    def drop(u: int, c: int) -> None:
        cnt = seen[u]
        if cnt[c] == 1:
            del cnt[c]
        else:
            cnt[c] -= 1

    queue = deque(u for u in range(g.n) if len(seen[u]) <= cap)
    queued = [False] * g.n
    for u in queue:
        queued[u] = True
    trace = trace if trace is not None else ColorReduceTrace()
    while queue:
        x = queue.popleft()
        queued[x] = False
        trace.pops += 1
        if len(seen[x]) <= cap:
            alive[x] = False
            touched = list(adj[x])
            for y in touched:
                adj[y].discard(x)
                drop(y, color[x])
            adj[x] = set()
        else:
            new = _mex(seen[x])
            if new >= color[x]:
                continue
            trace.recolors += 1
            touched = list(adj[x])
            for y in touched:
                drop(y, color[x])
                seen[y][new] = seen[y].get(new, 0) + 1
            color[x] = new
        for y in touched:
            if not queued[y] and (len(seen[y]) <= cap or _mex(seen[y]) < color[y]):
                queued[y] = True
                queue.append(y)
    return _rebuild(inst, "color", t0, adj, alive)


def exact_clique_reduce(inst: Instance, nbr_sizes: Sequence[int]) -> Instance:
    """Delete every vertex whose neighborhood clique number is ``<= lb - 2``.

    Deleting such a vertex never lowers the neighborhood clique number of a
    surviving vertex (whose value is strictly larger), so one pass suffices.
    """
    t0 = time.perf_counter()
    adj, alive = _edit_copy(inst.graph)
    cap = inst.lb - 2
    for u, s in enumerate(nbr_sizes):
        if s <= cap:
            alive[u] = False
    return _rebuild(inst, "exact_clique", t0, adj, alive)


def interdiction_reduce(
    inst: Instance, nbr_sizes: Sequence[int], deadline: float | None = None
) -> Instance:
    """Force into the interdiction set every vertex whose neighborhood clique beats
    every non-neighbor's by more than the remaining budget.

    ``nbr_sizes`` entries ``>= lb - 1`` must be exact; smaller ones may be upper
    bounds. After a forced deletion the neighbors' cached values can overstate
    the truth. Overstated values are harmless on the non-neighbor side, so they
    are only recomputed when the vertex itself becomes a candidate.
    """
    t0 = time.perf_counter()
    g = inst.graph
    adj, alive = _edit_copy(g)
    k = inst.k
    value = list(nbr_sizes)
    stale = {u for u in range(g.n) if value[u] < inst.lb - 1}
    forced: list[int] = []
    while k > 0:
        ranked = sorted((u for u in range(g.n) if alive[u]), key=lambda u: (-value[u], u))
        chosen = None
        for u in ranked:
            nb = adj[u]
            rival = next((value[v] for v in ranked if v != u and v not in nb), None)
            if rival is None or value[u] - k > rival:
                chosen = u
                break
        if chosen is None:
            break
        if chosen in stale:
            found = subset_clique_above(adj, adj[chosen], 0, deadline)
            value[chosen] = 0 if found is None else len(found)
            stale.discard(chosen)
            continue
        alive[chosen] = False
        for v in adj[chosen]:
            adj[v].discard(chosen)
            stale.add(v)
        adj[chosen] = set()
        forced.append(chosen)
        k -= 1
    return _rebuild(inst, "interdiction", t0, adj, alive, forced_now=forced, k=k)


def domination_pairs(g: Graph) -> list[tuple[int, int]]:
    """All ordered pairs ``(u, v)`` where ``u`` dominates ``v``.

    ``u`` dominates ``v`` when ``N(v)`` is a proper subset of ``N(u)`` or
    ``N[v]`` a proper subset of ``N[u]``. Either way ``d(u) > d(v)``, and ``u``
    is adjacent to ``v`` or to the lowest-degree neighbor of ``v``, which
    bounds the candidates.
    """
    nb = g.nbrs
    deg = [len(a) for a in g.adj]
    pairs = []
    for v in range(g.n):
        nv = nb[v]
        if not nv:
            cands: Iterable[int] = (u for u in range(g.n) if deg[u] > 0)
        else:
            w0 = min(nv, key=lambda w: (deg[w], w))
            cands = sorted((nb[w0] | nv) - {v})
        closed_v = nv | {v}
        for u in cands:
            if deg[u] <= deg[v]:
                continue
            if nv < nb[u] or closed_v < (nb[u] | {u}):
                pairs.append((u, v))
    return sorted(pairs)


def triangle_strong_reduce(inst: Instance, mode: str = "color", deadline: float | None = None) -> Instance:
    """Delete edges whose common neighborhood is too weak to extend to ``lb`` vertices.

    ``mode="clique"`` measures the common neighborhood by its clique number,
    ``mode="color"`` by its number of distinct colors under a greedy coloring
    of the input graph (which stays proper as edges disappear). Repeats until
    no edge qualifies.
    """
    if mode not in ("clique", "color"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    g = inst.graph
    cap = inst.lb - 3
    adj, alive = _edit_copy(g)
    if cap < 0:
        return _rebuild(inst, f"strong_triangle_{mode}", t0, adj, alive)
    color = greedy_coloring(g).color if mode == "color" else None
    changed = True
    while changed:
        changed = False
        for u in range(g.n):
            for v in sorted(adj[u]):
                if v < u:
                    continue
                common = adj[u] & adj[v]
                if len(common) <= cap:
                    weak = True
                elif color is not None:
                    weak = len({color[w] for w in common}) <= cap
                else:
                    weak = subset_clique_above(adj, common, cap, deadline) is None
                if weak:
                    adj[u].discard(v)
                    adj[v].discard(u)
                    changed = True
    return _rebuild(inst, f"strong_triangle_{mode}", t0, adj, alive)
