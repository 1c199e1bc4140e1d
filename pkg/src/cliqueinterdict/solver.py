"""Exact clique interdiction by lazy clique-constraint generation.

The master problem restricts the clique constraints to a growing pool. By
default it is an integer program (HiGHS through SciPy) minimizing the largest
surviving pool clique under the budget; its optimum is a lower bound on the
true value. Alternatively a combinatorial branch-and-bound decides, for a
target ``y`` scanned upward from the preprocessing bound, whether ``k``
deletions can leave every pool clique with at most ``y`` survivors. Either
way a maximum-clique search over the survivors of the master witness finds
violated cliques to add to the pool, or proves the witness optimal.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix

from .bounds import paired_deficit
from .clique import (
    DEFAULT_BITSET_THRESHOLD,
    CliqueFamily,
    SearchTimeout,
    disjoint_cliques_above,
    find_clique_above,
    greedy_coloring,
)
from .graph import Graph, induced_subgraph
from .pipeline import Preprocessed, preprocess, stage_totals

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
TIMEOUT = "timeout"
MASTERS = ("milp", "bnb")


class MasterLimitReached(Exception):
    """The master search ran out of nodes or time before deciding feasibility."""


@dataclass
class SolverConfig:
    time_limit: float | None = 600.0
    strong_triangle: bool = False
    seed_order: str = "deg-desc"
    bitset_threshold: int = DEFAULT_BITSET_THRESHOLD
    use_domination: bool = True
    flow_bound: bool = True
    node_limit: int | None = None
    cuts_per_round: int | None = None
    master: str = "milp"


@dataclass
class MasterState:
    """Clique pool and side constraints of the restricted interdiction problem.

    ``dominance`` holds pairs ``(u, v)``: deleting ``v`` requires deleting ``u``.
    """

    pool: list[frozenset[int]]
    k: int
    dominance: list[tuple[int, int]] = field(default_factory=list)
    node_limit: int | None = None
    deadline: float | None = None
    nodes: int = 0
    flow_bound: bool = True

    def __post_init__(self) -> None:
        self._closures()

    def _closures(self) -> None:
        up: dict[int, set[int]] = {}
        down: dict[int, set[int]] = {}
        for u, v in self.dominance:
            up.setdefault(v, set()).add(u)
            down.setdefault(u, set()).add(v)
        # dominance strictly raises degree, so the relation is acyclic
        self.ancestors = {v: _reach(v, up) for v in up}
        self.descendants = {u: _reach(u, down) for u in down}

    def add_clique(self, clique: Iterable[int]) -> None:
        self.pool.append(frozenset(clique))


def _reach(start: int, edges: dict[int, set[int]]) -> frozenset[int]:
    seen: set[int] = set()
    stack = list(edges.get(start, ()))
    while stack:
        x = stack.pop()
        if x not in seen:
            seen.add(x)
            stack.extend(edges.get(x, ()))
    return frozenset(seen)


def _disjoint_deficit(active: list[tuple[int, frozenset[int]]]) -> int:
    used: set[int] = set()
    total = 0
    for d, r in active:
        if used.isdisjoint(r):
            total += d
            used |= r
    return total


def _two_family_deficit(active: list[tuple[int, frozenset[int]]], y: int) -> int:
    first: list[frozenset[int]] = []
    second: list[frozenset[int]] = []
    used1: set[int] = set()
    used2: set[int] = set()
    for _, r in active:
        if used1.isdisjoint(r):
            first.append(r)
            used1 |= r
        elif used2.isdisjoint(r):
            second.append(r)
            used2 |= r
    if not second:
        return 0
    return paired_deficit(CliqueFamily(first), CliqueFamily(second), y)


def master_solve(state: MasterState, target_y: int) -> frozenset[int] | None:
    """Find at most ``k`` deletions leaving every pool clique with ``<= target_y`` vertices.

    Returns a witness deletion set closed under the dominance pairs, or
    ``None`` when no such set exists. Raises :class:`MasterLimitReached` when the
    node or time budget runs out first.
    """
    if target_y < 0:
        raise ValueError("target_y must be nonnegative")
    y = target_y
    pool = [c for c in state.pool if len(c) > y]
    ancestors, descendants = state.ancestors, state.descendants

    def search(deleted: frozenset[int], banned: frozenset[int], budget: int) -> frozenset[int] | None:
        state.nodes += 1
        if state.node_limit is not None and state.nodes > state.node_limit:
            raise MasterLimitReached
        if state.deadline is not None and state.nodes & 255 == 0 and time.monotonic() > state.deadline:
            raise MasterLimitReached
        active = []
        for c in pool:
            rest = c - deleted
            if len(rest) > y:
                active.append((len(rest) - y, rest))
        if not active:
            return deleted
        active.sort(key=lambda t: -t[0])
        if _disjoint_deficit(active) > budget:
            return None
        if state.flow_bound and len(active) > 2 and _two_family_deficit(active, y) > budget:
            return None

        hits: dict[int, int] = {}
        for _, rest in active:
            for v in rest:
                hits[v] = hits.get(v, 0) + 1
        # largest deficit first; among equals, the one with the fewest deletable vertices
        need, target = min(active, key=lambda t: (-t[0], len(t[1] - banned)))
        cands = sorted(target - banned, key=lambda v: (-hits[v], v))
        if len(cands) < need:
            return None
        newly_banned: set[int] = set()
        for i, v in enumerate(cands):
            if v not in newly_banned:
                add = ({v} | ancestors.get(v, frozenset())) - deleted
                if len(add) <= budget and add.isdisjoint(banned) and add.isdisjoint(newly_banned):
                    found = search(deleted | add, banned | newly_banned, budget - len(add))
                    if found is not None:
                        return found
                newly_banned.add(v)
                newly_banned |= descendants.get(v, frozenset())
            if sum(1 for w in cands[i + 1 :] if w not in newly_banned) < need:
                break
        return None

    return search(frozenset(), frozenset(), state.k)


def milp_master(
    state: MasterState, lower: int = 0, upper: int | None = None
) -> tuple[int, frozenset[int]] | None:
    """Minimize the largest surviving pool clique over closed deletion sets of size ``<= k``.

    Returns ``max(lower, optimum)``, a lower bound on the true value when the
    pool holds cliques of the graph and ``lower`` is one, with a deletion set
    attaining it. With ``upper`` set, only values ``<= upper`` are sought and
    ``None`` means none exists. Raises :class:`MasterLimitReached` when HiGHS
    stops on its node or time limit.
    """
    if upper is not None and upper < lower:
        return None
    # cliques no larger than the floor can never bind
    pool = [c for c in state.pool if len(c) > lower]
    if not pool:
        return lower, frozenset()
    involved: set[int] = set()
    for c in pool:
        involved |= c
    for v in list(involved):
        involved |= state.ancestors.get(v, frozenset())
    verts = sorted(involved)
    col = {v: i for i, v in enumerate(verts)}
    nv = len(verts)
    top = max(len(c) for c in pool)
    if upper is not None:
        top = min(top, upper)
    rows, cols, vals = [], [], []
    lo, hi = [], []
    r = 0
    for c in pool:
        # |C| - sum(x_C) <= t   <=>   sum(x_C) + t >= |C|
        for v in c:
            rows.append(r)
            cols.append(col[v])
        rows.append(r)
        cols.append(nv)
        vals += [1.0] * (len(c) + 1)
        lo.append(len(c))
        hi.append(np.inf)
        r += 1
    rows += [r] * nv
    cols += list(range(nv))
    vals += [1.0] * nv
    lo.append(-np.inf)
    hi.append(state.k)
    r += 1
    for u, v in state.dominance:
        if v in col:
            rows += [r, r]
            cols += [col[u], col[v]]
            vals += [1.0, -1.0]
            lo.append(0)
            hi.append(np.inf)
            r += 1
    a = coo_matrix((vals, (rows, cols)), shape=(r, nv + 1)).tocsr()
    cost = np.zeros(nv + 1)
    cost[nv] = 1.0
    options: dict = {"mip_rel_gap": 0.0}
    if state.deadline is not None:
        remaining = state.deadline - time.monotonic()
        if remaining <= 0:
            raise MasterLimitReached
        options["time_limit"] = remaining
    if state.node_limit is not None:
        options["node_limit"] = state.node_limit
    res = milp(
        cost,
        integrality=np.ones(nv + 1),
        bounds=Bounds(np.r_[np.zeros(nv), lower], np.r_[np.ones(nv), top]),
        constraints=LinearConstraint(a, lo, hi),
        options=options,
    )
    state.nodes += 1
    if res.status == 2:
        if upper is None:
            raise RuntimeError(f"master program infeasible: {res.message}")
        return None
    if res.status != 0 or res.x is None:
        raise MasterLimitReached
    chosen = frozenset(verts[i] for i in range(nv) if res.x[i] > 0.5)
    value = max((len(c - chosen) for c in pool), default=0)
    return max(value, lower), chosen


def separate(
    g: Graph, survivors: Iterable[int], y: int, *, deadline: float | None = None,
    bitset_threshold: int = DEFAULT_BITSET_THRESHOLD,
) -> tuple[int, ...] | None:
    """A maximum clique of ``G[survivors]`` when it has more than ``y`` vertices."""
    sub, kept = induced_subgraph(g, survivors)
    found = find_clique_above(sub, y, deadline=deadline, bitset_threshold=bitset_threshold)
    return None if found is None else tuple(sorted(kept[i] for i in found))


def extend_clique(g: Graph, clique: Iterable[int]) -> frozenset[int]:
    """Grow ``clique`` to a maximal clique of ``g``, most-connected candidate first.

    A larger clique gives a stronger pool constraint: it covers every clique
    it contains, whichever of its vertices the master deletes.
    """
    members = set(clique)
    if not members:
        return frozenset()
    nb = g.nbrs
    cand = set.intersection(*(set(nb[v]) for v in members))
    while cand:
        v = max(cand, key=lambda x: (len(nb[x] & cand), -x))
        members.add(v)
        cand &= nb[v]
    return frozenset(members)


def separate_batch(
    g: Graph, survivors: Iterable[int], y: int, *, extra: int | None = 64, deadline: float | None = None,
    bitset_threshold: int = DEFAULT_BITSET_THRESHOLD,
) -> list[tuple[int, ...]]:
    """A maximum violated clique first, then up to ``extra`` more (no cap when ``None``),
    vertex-disjoint from it and each other.

    Empty when ``G[survivors]`` has no clique larger than ``y``.
    """
    sub, kept = induced_subgraph(g, survivors)
    top = find_clique_above(sub, y, deadline=deadline, bitset_threshold=bitset_threshold)
    if top is None:
        return []
    found = [top]
    if extra is None or extra > 0:
        found += disjoint_cliques_above(sub, y, exclude=top, limit=extra, deadline=deadline)
    return [tuple(sorted(kept[i] for i in c)) for c in found]


@dataclass
class SolveResult:
    theta: int | None
    interdiction_set: frozenset[int]
    status: str
    lb: int
    ub: int
    stats: dict = field(default_factory=dict)


def _kernel_pool(pre: Preprocessed) -> list[frozenset[int]]:
    inst = pre.instance
    index = {orig: i for i, orig in enumerate(inst.id_map)}
    pool: set[frozenset[int]] = set()
    for fam in pre.families:
        for c in fam:
            mapped = frozenset(index[v] for v in c if v in index)
            if len(mapped) > 1:
                pool.add(mapped)
    return sorted(pool, key=lambda c: (-len(c), sorted(c)))


def solve(g: Graph, k: int, config: SolverConfig | None = None) -> SolveResult:
    """Compute the interdiction value of ``(g, k)`` and one optimal deletion set.

    On timeout the result carries ``status == "timeout"``, ``theta is None`` and
    the best known bounds; the deletion set is then the best incumbent found.
    """
    cfg = config or SolverConfig()
    if k < 0:
        raise ValueError("k must be nonnegative")
    if cfg.master not in MASTERS:
        raise ValueError(f"unknown master {cfg.master!r}; expected one of {MASTERS}")
    t0 = time.perf_counter()
    deadline = None if cfg.time_limit is None else time.monotonic() + cfg.time_limit
    stats: dict = {"master_iterations": 0, "separation_calls": 0, "master_nodes": 0}

    def finish(theta, chosen, status, lb, ub, inst=None) -> SolveResult:
        stats["seconds"] = time.perf_counter() - t0
        if inst is not None:
            stats["stages"] = stage_totals(inst)
            stats["kernel"] = {"n": inst.graph.n, "m": inst.graph.m, "k": inst.k}
        return SolveResult(theta, frozenset(chosen), status, lb, ub, stats)

    try:
        pre = preprocess(g, k, seed_order=cfg.seed_order, strong_triangle=cfg.strong_triangle, deadline=deadline)
    except SearchTimeout:
        ub = greedy_coloring(g).num_colors if k < g.n else 0
        return finish(None, (), TIMEOUT, 0, ub)

    inst = pre.instance
    kg = inst.graph
    stats["lb_disjoint"] = pre.lb_disjoint
    stats["lb_bipartite"] = pre.lb_bipartite
    lb = inst.lb

    if inst.k >= kg.n:
        chosen = inst.forced | inst.original_ids(range(kg.n))
        return finish(0, chosen, OPTIMAL, 0, 0, inst)

    try:
        top = find_clique_above(kg, 0, deadline=deadline, bitset_threshold=cfg.bitset_threshold) or ()
    except SearchTimeout:
        return finish(None, inst.forced, TIMEOUT, lb, greedy_coloring(kg).num_colors, inst)
    ub, incumbent = len(top), frozenset()
    if inst.k == 0 or ub <= lb:
        return finish(ub, inst.forced, OPTIMAL, ub, ub, inst)

    state = MasterState(
        _kernel_pool(pre),
        inst.k,
        pre.domination if cfg.use_domination else [],
        node_limit=cfg.node_limit,
        deadline=deadline,
        flow_bound=cfg.flow_bound,
    )
    if top:
        state.add_clique(top)
    y = lb
    try:
        while y < ub:
            stats["master_iterations"] += 1
            if cfg.master == "milp":
                found = milp_master(state, y, ub - 1)
                if found is None:
                    # nothing in the pool beats the incumbent
                    y = ub
                    break
                value, witness = found
                y = max(y, value)
            else:
                witness = master_solve(state, y)
                if witness is None:
                    y += 1
                    continue
            stats["separation_calls"] += 1
            survivors = [v for v in range(kg.n) if v not in witness]
            extra = None if cfg.cuts_per_round is None else cfg.cuts_per_round - 1
            cuts = separate_batch(
                kg, survivors, y, extra=extra, deadline=deadline,
                bitset_threshold=cfg.bitset_threshold,
            )
            if not cuts:
                ub, incumbent = y, witness
                break
            if len(cuts[0]) < ub:
                ub, incumbent = len(cuts[0]), witness
            for clique in cuts:
                state.add_clique(extend_clique(kg, clique))
    except (MasterLimitReached, SearchTimeout):
        stats["master_nodes"] = state.nodes
        chosen = inst.forced | inst.original_ids(incumbent)
        return finish(None, chosen, TIMEOUT, y, ub, inst)
    stats["master_nodes"] = state.nodes
    stats["pool_size"] = len(state.pool)
    chosen = inst.forced | inst.original_ids(incumbent)
    return finish(ub, chosen, OPTIMAL, ub, ub, inst)
