"""Staged preprocessing: lower bounds first, then reductions in increasing cost."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .bounds import bipartite_lower_bound, disjoint_lower_bound
from .clique import CliqueFamily, degree_order, greedy_disjoint_cliques, neighborhood_clique_sizes
from .graph import Graph
from .reductions import (
    Instance,
    StageStat,
    color_reduce,
    degree_triangle_reduce,
    domination_pairs,
    exact_clique_reduce,
    interdiction_reduce,
    triangle_strong_reduce,
)

log = logging.getLogger(__name__)

SEED_ORDERS = ("deg-desc", "deg-asc", "id")


def seed_orders(g: Graph, policy: str = "deg-desc") -> tuple[list[int], list[int]]:
    """The two vertex orders fed to the greedy disjoint-clique scan.

    The second order is the reverse policy of the first, so the two families
    generally differ.
    """
    if policy == "deg-desc":
        return degree_order(g, True), degree_order(g, False)
    if policy == "deg-asc":
        return degree_order(g, False), degree_order(g, True)
    if policy == "id":
        return list(range(g.n)), list(range(g.n - 1, -1, -1))
    raise ValueError(f"unknown seed order {policy!r}; expected one of {SEED_ORDERS}")


def _to_original(family: CliqueFamily, id_map: tuple[int, ...]) -> CliqueFamily:
    return CliqueFamily([frozenset(id_map[v] for v in c) for c in family], family.disjoint)


@dataclass
class Preprocessed:
    instance: Instance
    families: list[CliqueFamily] = field(default_factory=list)  # original ids
    domination: list[tuple[int, int]] = field(default_factory=list)  # kernel ids
    lb_disjoint: int = 0
    lb_bipartite: int | None = None
    decided: bool = False


def preprocess(
    g: Graph,
    k: int,
    *,
    seed_order: str = "deg-desc",
    strong_triangle: bool = False,
    deadline: float | None = None,
) -> Preprocessed:
    """Shrink ``(g, k)`` to a kernel with the same interdiction value.

    Stages: disjoint lower bound; degree + triangle reduction; color reduction;
    bipartite lower bound (one rerun of the two previous stages if it improves
    the bound); exact clique reduction; interdiction reduction, with every
    reduction repeated while a pass still removes vertices; domination pairs.
    ``decided`` is set when the kernel alone settles the value (budget covers
    every kernel vertex, or no budget is left).
    """
    inst = Instance.initial(g, k)
    first, _ = seed_orders(g, seed_order)
    c1 = greedy_disjoint_cliques(g, first)
    disjoint = disjoint_lower_bound(c1, k)
    inst.lb = disjoint.lb
    out = Preprocessed(inst, families=[c1], lb_disjoint=disjoint.lb)
    log.debug("disjoint lower bound %d from %d cliques", disjoint.lb, len(c1))

    def cheap_stages(cur: Instance) -> Instance:
        while True:
            size = (cur.graph.n, cur.graph.m)
            cur = degree_triangle_reduce(cur)
            cur = color_reduce(cur)
            if strong_triangle:
                cur = triangle_strong_reduce(cur, "color", deadline)
                cur = triangle_strong_reduce(cur, "clique", deadline)
            if (cur.graph.n, cur.graph.m) == size:
                return cur

    inst = cheap_stages(inst)
    if inst.k >= inst.graph.n:
        out.instance, out.decided = inst, True
        return out

    kg = inst.graph
    o1, o2 = seed_orders(kg, seed_order)
    b1, b2 = greedy_disjoint_cliques(kg, o1), greedy_disjoint_cliques(kg, o2)
    bip = bipartite_lower_bound(b1, b2, inst.k)
    out.lb_bipartite = bip.lb
    out.families += [_to_original(b1, inst.id_map), _to_original(b2, inst.id_map)]
    if bip.lb > inst.lb:
        log.debug("bipartite bound raised lb %d -> %d", inst.lb, bip.lb)
        inst.lb = bip.lb
        inst = cheap_stages(inst)

    # exact clique and interdiction reductions shrink degrees and saturations,
    # so the whole chain is repeated until a pass changes nothing
    first_pass = True
    while True:
        before = (inst.graph.n, inst.graph.m)
        if not first_pass:
            inst = cheap_stages(inst)
        sizes = neighborhood_clique_sizes(inst.graph, inst.lb, deadline=deadline)
        inst = exact_clique_reduce(inst, sizes)
        if inst.k > 0:
            cap = inst.lb - 2
            survivors = [s for s in sizes if s > cap]
            inst = interdiction_reduce(inst, survivors, deadline)
        elif first_pass:
            inst.stage_stats.append(StageStat("interdiction", 0, 0, 0.0))
        first_pass = False
        if (inst.graph.n, inst.graph.m) == before or inst.k >= inst.graph.n:
            break

    out.instance = inst
    out.decided = inst.k >= inst.graph.n or inst.k == 0
    out.domination = domination_pairs(inst.graph)
    return out


def stage_totals(inst: Instance) -> dict[str, tuple[int, int, float]]:
    """Removed vertices, removed edges and seconds per stage name, reruns summed."""
    totals: dict[str, tuple[int, int, float]] = {}
    for s in inst.stage_stats:
        v, e, t = totals.get(s.name, (0, 0, 0.0))
        totals[s.name] = (v + s.vertices_removed, e + s.edges_removed, t + s.seconds)
    return totals
