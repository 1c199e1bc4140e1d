"""Synthetic graph families used by tests and smoke benchmarks."""

from __future__ import annotations

import math
import random

from .graph import Graph, build_graph


def gnp_random_graph(n: int, p: float, seed: int | random.Random | None = None) -> Graph:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def cfat_graph(n: int, c: float) -> Graph:
    """The DIMACS ``c-fat`` construction.

    Vertices are split into ``floor(n / (c ln n))`` consecutive groups arranged
    in a ring (the first ``n mod groups`` groups get one extra vertex); two
    vertices are adjacent when their groups are equal or neighbors on the ring.
    """
    groups = int(n // (c * math.log(n)))
    if groups < 3:
        raise ValueError(f"c-fat({n}, {c}) needs at least 3 groups, got {groups}")
    base, extra = divmod(n, groups)
    owner = []
    for gi in range(groups):
        owner += [gi] * (base + (1 if gi < extra else 0))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            diff = (owner[v] - owner[u]) % groups
            if diff in (0, 1, groups - 1):
                edges.append((u, v))
    return build_graph(n, edges)
