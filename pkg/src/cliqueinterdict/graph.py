"""Immutable simple undirected graphs over dense integer vertex ids."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

Edge = tuple[int, int]


class GraphInputError(ValueError):
    """Raised when raw graph input references vertices outside ``[0, n)``."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph with sorted adjacency lists.

    Instances are never mutated; reductions build a new graph at each stage.
    Set and bitset views of the adjacency are derived lazily and cached.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @cached_property
    def nbrs(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def bits(self) -> tuple[int, ...]:
        """Adjacency rows as Python int bitsets (bit ``v`` set iff ``v`` is a neighbor)."""
        rows = []
        for a in self.adj:
            b = 0
            for v in a:
                b |= 1 << v
            rows.append(b)
        return tuple(rows)

    @cached_property
    def edges(self) -> frozenset[Edge]:
        return frozenset((u, v) for u, a in enumerate(self.adj) for v in a if u < v)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrs[u]

    def edge_list(self) -> list[Edge]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u, a in enumerate(self.adj) for v in a if u < v]

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        nb = self.nbrs
        return all(vs[j] in nb[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))


def build_graph(n: int, raw_edges: Iterable[Edge]) -> Graph:
    """Normalize a raw edge list into a simple graph.

    Self-loops are dropped and duplicate or reversed pairs collapse to one edge.
    """
    if n < 0:
        raise GraphInputError(f"vertex count must be nonnegative, got {n}")
    sets: list[set[int]] = [set() for _ in range(n)]
    for i, (u, v) in enumerate(raw_edges):
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge #{i} ({u}, {v}) has a vertex outside [0, {n})")
        if u != v:
            sets[u].add(v)
            sets[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in sets))


def from_adjacency_sets(sets: list[set[int]] | list[frozenset[int]]) -> Graph:
    """Wrap already-symmetric, loop-free adjacency sets without validation."""
    return Graph(len(sets), tuple(tuple(sorted(s)) for s in sets))


def remove_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``G[V \\ removed]`` and the old-to-new id map (``-1`` for removed ids).

    Surviving vertices keep their relative order, so the map is monotone.
    """
    gone = set(removed)
    old_to_new = [-1] * g.n
    nxt = 0
    for u in range(g.n):
        if u not in gone:
            old_to_new[u] = nxt
            nxt += 1
    adj = []
    for u in range(g.n):
        if old_to_new[u] >= 0:
            adj.append(tuple(old_to_new[v] for v in g.adj[u] if old_to_new[v] >= 0))
    return Graph(nxt, tuple(adj)), old_to_new


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``G[keep]`` and the new-to-old id list (sorted ascending)."""
    kept = sorted(set(keep))
    index = {u: i for i, u in enumerate(kept)}
    adj = tuple(tuple(index[v] for v in g.adj[u] if v in index) for u in kept)
    return Graph(len(kept), adj), kept


def remove_edges(g: Graph, removed: Iterable[Edge]) -> Graph:
    drop: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in removed:
        if not g.has_edge(u, v):
            raise GraphInputError(f"edge ({u}, {v}) is not in the graph")
        drop[u].add(v)
        drop[v].add(u)
    return Graph(g.n, tuple(tuple(v for v in a if v not in drop[u]) for u, a in enumerate(g.adj)))


def triangle_counts(g: Graph) -> dict[Edge, int]:
    """Common-neighbor count ``|N(u) & N(v)|`` for every edge, keyed by ``(min, max)``.

    Triangles are listed once each by orienting every edge from lower to higher
    (degree, id) rank, which keeps the intersection work within O(m^1.5).
    """
    deg = [len(a) for a in g.adj]
    rank = sorted(range(g.n), key=lambda u: (deg[u], u))
    pos = [0] * g.n
    for i, u in enumerate(rank):
        pos[u] = i
    out = [frozenset(v for v in g.adj[u] if pos[v] > pos[u]) for u in range(g.n)]
    counts: dict[Edge, int] = {e: 0 for e in g.edge_list()}
    for u in range(g.n):
        ou = out[u]
        for v in ou:
            for w in ou & out[v]:
                for a, b in ((u, v), (u, w), (v, w)):
                    counts[(a, b) if a < b else (b, a)] += 1
    return counts


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
