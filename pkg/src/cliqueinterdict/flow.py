"""Dinic's blocking-flow maximum flow on small integer-capacity networks."""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    """Directed network with residual arcs stored as paired list entries.

    Arc ``i`` and its reverse live at indices ``i`` and ``i ^ 1``.
    """

    def __init__(self, num_nodes: int) -> None:
        self.num_nodes = num_nodes
        self.head: list[list[int]] = [[] for _ in range(num_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.initial: list[int] = []

    def add_arc(self, u: int, v: int, capacity: int) -> int:
        if capacity < 0:
            raise ValueError(f"negative capacity {capacity} on arc {u}->{v}")
        idx = len(self.to)
        self.to += [v, u]
        self.cap += [capacity, 0]
        self.initial += [capacity, 0]
        self.head[u].append(idx)
        self.head[v].append(idx + 1)
        return idx

    def arcs(self) -> list[tuple[int, int, int]]:
        """Original arcs as ``(tail, head, capacity)``."""
        return [(self.to[i + 1], self.to[i], self.initial[i]) for i in range(0, len(self.to), 2)]

    def flow_on(self, arc: int) -> int:
        return self.initial[arc] - self.cap[arc]

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.num_nodes
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in self.head[u]:
                v = self.to[a]
                if self.cap[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int, verify: bool = True) -> int:
        if s == t:
            raise ValueError("source and sink must differ")
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                break
            it = [0] * self.num_nodes
            while True:
                pushed = self._augment(s, t, level, it)
                if not pushed:
                    break
                total += pushed
        if verify:
            cut = self.min_cut_value(s)
            if cut != total:
                raise AssertionError(f"max-flow {total} != min-cut {cut}")
        return total

    def _augment(self, s: int, t: int, level: list[int], it: list[int]) -> int:
        # iterative DFS along the level graph; returns one path's bottleneck
        stack = [s]
        path: list[int] = []
        while stack:
            u = stack[-1]
            if u == t:
                bottleneck = min(self.cap[a] for a in path)
                for a in path:
                    self.cap[a] -= bottleneck
                    self.cap[a ^ 1] += bottleneck
                return bottleneck
            advanced = False
            arcs = self.head[u]
            while it[u] < len(arcs):
                a = arcs[it[u]]
                v = self.to[a]
                if self.cap[a] > 0 and level[v] == level[u] + 1:
                    stack.append(v)
                    path.append(a)
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                level[u] = -1
                stack.pop()
                if path:
                    path.pop()
                    it[stack[-1]] += 1
        return 0

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in self.head[u]:
                v = self.to[a]
                if self.cap[a] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen

    def min_cut_value(self, s: int) -> int:
        side = self.reachable(s)
        return sum(c for u, v, c in self.arcs() if u in side and v not in side)
