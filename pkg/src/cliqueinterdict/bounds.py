"""Lower bounds on the interdiction value from restricted clique families.

Both bounds solve the clique-interdiction ILP restricted to a handful of
cliques exactly: with one disjoint family the minimum deletion count is a
plain sum of deficits, with two disjoint families the vertices shared across
families are credited through a max-flow.
"""

from __future__ import annotations

import time
from collections.abc import Iterable
from dataclasses import dataclass, field

from .clique import CliqueFamily
from .flow import FlowNetwork

SOURCE, SINK = 0, 1


@dataclass
class BoundReport:
    lb: int
    method: str
    seconds: float
    families: list[CliqueFamily] = field(default_factory=list)


def _sizes(family: CliqueFamily | Iterable[Iterable[int]]) -> list[int]:
    return [len(c) for c in family]


def coverage_deficit(family: CliqueFamily | Iterable[Iterable[int]], y: int) -> int:
    """Deletions needed to shrink every clique of a disjoint family to ``y`` vertices."""
    return sum(max(0, s - y) for s in _sizes(family))


def _smallest_feasible_y(deletions, hi: int, k: int) -> int:
    # deletions(y) is nonincreasing and deletions(hi) == 0
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if deletions(mid) <= k:
            hi = mid
        else:
            lo = mid + 1
    return lo


def disjoint_lower_bound(family: CliqueFamily, k: int) -> BoundReport:
    """Smallest ``y >= 0`` whose coverage deficit fits in the budget ``k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    t0 = time.perf_counter()
    sizes = _sizes(family)
    y = _smallest_feasible_y(lambda yy: sum(max(0, s - yy) for s in sizes), max(sizes, default=0), k)
    return BoundReport(y, "disjoint", time.perf_counter() - t0, [family])


def overlap_network(
    c1: CliqueFamily, c2: CliqueFamily, y: int
) -> tuple[FlowNetwork, list[frozenset[int]], list[frozenset[int]]]:
    """Three-layer network: source -> first-family cliques -> second-family cliques -> sink.

    Cliques with no deficit at ``y`` carry zero capacity on their source or
    sink arc and are left out (this drops every singleton once ``y >= 1``).
    """
    left = [c for c in c1 if len(c) > y]
    right = [c for c in c2 if len(c) > y]
    net = FlowNetwork(2 + len(left) + len(right))
    owner: dict[int, int] = {}
    for j, c in enumerate(right):
        for v in c:
            owner[v] = j
        net.add_arc(2 + len(left) + j, SINK, len(c) - y)
    for i, c in enumerate(left):
        net.add_arc(SOURCE, 2 + i, len(c) - y)
        shared: dict[int, int] = {}
        for v in c:
            j = owner.get(v)
            if j is not None:
                shared[j] = shared.get(j, 0) + 1
        for j, cnt in sorted(shared.items()):
            net.add_arc(2 + i, 2 + len(left) + j, cnt)
    return net, left, right


def bipartite_overlap(c1: CliqueFamily, c2: CliqueFamily, y: int) -> int:
    """Maximum number of deletions that count against a clique of each family at once."""
    net, left, right = overlap_network(c1, c2, y)
    if not left or not right:
        return 0
    return net.max_flow(SOURCE, SINK)


def paired_deficit(c1: CliqueFamily, c2: CliqueFamily, y: int) -> int:
    return coverage_deficit(c1, y) + coverage_deficit(c2, y) - bipartite_overlap(c1, c2, y)


def bipartite_lower_bound(c1: CliqueFamily, c2: CliqueFamily, k: int) -> BoundReport:
    """Smallest ``y`` such that both families can be cut down to ``y`` with ``k`` deletions."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    t0 = time.perf_counter()
    hi = max(_sizes(c1) + _sizes(c2), default=0)
    y = _smallest_feasible_y(lambda yy: paired_deficit(c1, c2, yy), hi, k)
    return BoundReport(y, "bipartite", time.perf_counter() - t0, [c1, c2])
