import math
import random
from itertools import combinations

import networkx as nx
import pytest

from cliqueinterdict.graph import build_graph, complete_graph, cycle_graph, remove_edges
from cliqueinterdict.oracle import brute_force_theta, omega_after_removal
from cliqueinterdict.solver import (
    OPTIMAL,
    TIMEOUT,
    MasterLimitReached,
    MasterState,
    SolverConfig,
    extend_clique,
    master_solve,
    milp_master,
    separate,
    separate_batch,
    solve,
)

from conftest import collaboration_graph, random_graph, random_instances

A, B, C, D, E, F = range(6)


def pool_of(*cliques):
    return [frozenset(c) for c in cliques]


def brute_master(pool, k, y):
    universe = sorted(set().union(*pool)) if pool else []
    for r in range(0, min(k, len(universe)) + 1):
        for s in combinations(universe, r):
            if all(len(c - set(s)) <= y for c in pool):
                return True
    return False


def check_witness(pool, k, y, witness):
    assert len(witness) <= k
    assert all(len(c - witness) <= y for c in pool)


def test_master_examples():
    k5 = pool_of(range(5))
    w = master_solve(MasterState(list(k5), 2), 3)
    assert w is not None and len(w) == 2
    check_witness(k5, 2, 3, w)

    two = pool_of(range(4), range(4, 8))
    assert master_solve(MasterState(list(two), 1), 3) is None

    tri = pool_of({A, B, C}, {A, D, E}, {B, D, F})
    assert master_solve(MasterState(list(tri), 1), 2) is None
    assert not brute_master(tri, 1, 2)
    w = master_solve(MasterState(list(tri), 2), 2)
    assert w is not None
    check_witness(tri, 2, 2, w)


def test_master_rejects_negative_target():
    with pytest.raises(ValueError):
        master_solve(MasterState(pool_of({0, 1}), 1), -1)


def random_pool(rng):
    universe = rng.randint(3, 10)
    return [frozenset(rng.sample(range(universe), rng.randint(1, min(universe, 6))))
            for _ in range(rng.randint(1, 7))]


@pytest.mark.parametrize("flow_bound", [True, False])
def test_master_matches_subset_enumeration(flow_bound):
    rng = random.Random(12)
    for _ in range(400):
        pool = random_pool(rng)
        k, y = rng.randint(0, 4), rng.randint(0, 5)
        w = master_solve(MasterState(list(pool), k, flow_bound=flow_bound), y)
        assert (w is not None) == brute_master(pool, k, y)
        if w is not None:
            check_witness(pool, k, y, w)


def test_master_respects_dominance_closure():
    rng = random.Random(21)
    for _ in range(200):
        pool = random_pool(rng)
        universe = sorted(set().union(*pool))
        # an acyclic relation: the larger id dominates the smaller
        dom = [(v, u) for u, v in combinations(universe, 2) if rng.random() < 0.2]
        k, y = rng.randint(0, 4), rng.randint(0, 4)
        w = master_solve(MasterState(list(pool), k, dom), y)
        closed_exists = False
        for r in range(0, min(k, len(universe)) + 1):
            for s in combinations(universe, r):
                s = set(s)
                if all(u in s for u, v in dom if v in s) and all(len(c - s) <= y for c in pool):
                    closed_exists = True
                    break
            if closed_exists:
                break
        assert (w is not None) == closed_exists
        if w is not None:
            check_witness(pool, k, y, w)
            assert all(u in w for u, v in dom if v in w)


def test_milp_master_matches_enumeration():
    rng = random.Random(31)
    for _ in range(300):
        pool = random_pool(rng)
        universe = sorted(set().union(*pool))
        dom = [(v, u) for u, v in combinations(universe, 2) if rng.random() < 0.15]
        k, lower = rng.randint(0, 4), rng.randint(0, 3)
        value, chosen = milp_master(MasterState(list(pool), k, dom), lower)
        best = min(
            max(lower, max(len(c - set(s)) for c in pool))
            for r in range(0, min(k, len(universe)) + 1)
            for s in combinations(universe, r)
            if all(u in s for u, v in dom if v in s)
        )
        assert value == best
        assert len(chosen) <= k and all(u in chosen for u, v in dom if v in chosen)
        assert max(len(c - chosen) for c in pool) <= value


def test_unknown_master_rejected():
    with pytest.raises(ValueError):
        solve(complete_graph(3), 1, SolverConfig(master="lp"))


def test_master_node_limit():
    # every triple of 9 vertices with deficit 1 each: the root bound cannot
    # refute it, so the search must branch past the limit
    pool = [frozenset(c) for c in combinations(range(9), 3)]
    state = MasterState(pool, 3, node_limit=1, flow_bound=False)
    with pytest.raises(MasterLimitReached):
        master_solve(state, 2)


def test_separate_examples():
    k4 = complete_graph(4)
    assert separate(k4, range(4), 3) == (0, 1, 2, 3)
    assert separate(cycle_graph(5), range(5), 2) is None
    g = remove_edges(complete_graph(4), [(0, 1)])
    found = separate(g, range(4), 2)
    assert found is not None and len(found) == 3 and g.is_clique(found)
    # survivors matter: dropping vertex 3 leaves no triangle
    assert separate(g, [0, 1, 2], 2) is None


def test_extend_clique_is_maximal_superset():
    rng = random.Random(14)
    for _ in range(100):
        g = random_graph(rng, rng.randint(2, 25), rng.choice([0.3, 0.6, 0.9]))
        u, v = rng.sample(range(g.n), 2)
        seed = (u, v) if g.has_edge(u, v) else (u,)
        ext = extend_clique(g, seed)
        assert set(seed) <= ext and g.is_clique(ext)
        assert not any(all(g.has_edge(w, x) for x in ext) for w in range(g.n) if w not in ext)
    assert extend_clique(g, ()) == frozenset()


def test_separate_batch_is_disjoint_and_violated():
    rng = random.Random(6)
    for _ in range(60):
        g = random_graph(rng, rng.randint(5, 30), rng.choice([0.3, 0.6]))
        y = rng.randint(1, 4)
        cuts = separate_batch(g, range(g.n), y, extra=10)
        flat = [v for c in cuts for v in c]
        assert len(flat) == len(set(flat))
        assert all(len(c) > y and g.is_clique(c) for c in cuts)
        if cuts:
            assert len(cuts[0]) == len(separate(g, range(g.n), 0))


def test_solve_examples():
    res = solve(complete_graph(5), 2)
    assert res.theta == 3 and len(res.interdiction_set) == 2 and res.status == OPTIMAL
    assert solve(cycle_graph(5), 3).theta == 1
    assert solve(build_graph(0, []), 2).theta == 0
    assert solve(build_graph(4, []), 0).theta == 1
    assert solve(complete_graph(4), 9).theta == 0


def test_solve_rejects_negative_budget():
    with pytest.raises(ValueError):
        solve(complete_graph(3), -1)


def nx_omega_after(g, removed):
    h = nx.Graph()
    h.add_nodes_from(v for v in range(g.n) if v not in removed)
    h.add_edges_from((u, v) for u, v in g.edge_list() if u not in removed and v not in removed)
    return max((len(c) for c in nx.find_cliques(h)), default=0)


def certify(g, k, res):
    assert res.status == OPTIMAL
    assert len(res.interdiction_set) <= k
    if g.n <= 16:
        assert omega_after_removal(g, res.interdiction_set) == res.theta
    else:
        assert nx_omega_after(g, res.interdiction_set) == res.theta
    assert res.lb == res.ub == res.theta


CONFIGS = {
    "default": SolverConfig(),
    "bnb": SolverConfig(master="bnb"),
    "bnb_no_flow": SolverConfig(master="bnb", flow_bound=False),
    "bnb_no_domination": SolverConfig(master="bnb", use_domination=False),
    "no_domination": SolverConfig(use_domination=False),
    "no_flow": SolverConfig(flow_bound=False),
    "strong_triangle": SolverConfig(strong_triangle=True),
    "split_search": SolverConfig(bitset_threshold=0),
    "one_cut": SolverConfig(cuts_per_round=1),
    "asc_order": SolverConfig(seed_order="deg-asc"),
    "id_order": SolverConfig(seed_order="id"),
}


@pytest.mark.parametrize("name", sorted(CONFIGS))
def test_solver_matches_brute_force(name):
    for g, k in random_instances(120, seed=40 + len(name)):
        res = solve(g, k, CONFIGS[name])
        assert res.theta == brute_force_theta(g, k)[0], (name, g.edge_list(), k)
        certify(g, k, res)


def random_tree(rng, n):
    return build_graph(n, [(v, rng.randrange(v)) for v in range(1, n)])


def tree_theta(t, k):
    """0 once every vertex goes, 1 once a vertex cover fits, else 2."""
    if k >= t.n:
        return 0
    if t.m == 0:
        return 1
    ref = nx.Graph(t.edge_list())
    cover = len(nx.max_weight_matching(ref, maxcardinality=True))  # König on a tree
    return 1 if k >= cover else 2


def test_trees_against_vertex_cover():
    rng = random.Random(50)
    for _ in range(25):
        t = random_tree(rng, 50)
        cover = len(nx.max_weight_matching(nx.Graph(t.edge_list()), maxcardinality=True))
        for k in sorted({0, 1, cover - 1, cover, cover + 1, 49, 50}):
            if k < 0:
                continue
            res = solve(t, k)
            assert res.theta == tree_theta(t, k)
            certify(t, k, res)


def test_node_limit_gives_timeout_with_bounds():
    rng = random.Random(77)
    hit = 0
    for _ in range(40):
        g = random_graph(rng, 12, 0.6)
        k = 3
        res = solve(g, k, SolverConfig(master="bnb", node_limit=1, cuts_per_round=1))
        truth = brute_force_theta(g, k)[0]
        if res.status == TIMEOUT:
            hit += 1
            assert res.theta is None
            assert res.lb <= truth <= res.ub
            assert len(res.interdiction_set) <= k
            assert omega_after_removal(g, res.interdiction_set) <= res.ub
        else:
            assert res.theta == truth
    assert hit > 0


def test_tiny_time_limit_reports_valid_bounds():
    rng = random.Random(3)
    g = random_graph(rng, 200, 0.5)
    res = solve(g, 10, SolverConfig(time_limit=0.01))
    assert res.status == TIMEOUT and res.theta is None
    assert res.lb <= res.ub


def test_stats_are_reported():
    res = solve(random_graph(random.Random(1), 12, 0.5), 2)
    for key in ("master_iterations", "separation_calls", "seconds", "lb_disjoint", "kernel", "stages"):
        assert key in res.stats


def nx_theta(g, k):
    """Exhaustive minimum over deletion sets of size exactly k, clique sizes from networkx."""
    return min(nx_omega_after(g, set(s)) for s in combinations(range(g.n), min(k, g.n)))


@pytest.mark.parametrize("master", ["milp", "bnb"])
def test_medium_graphs_against_exhaustive_search(master):
    rng = random.Random(88)
    for _ in range(12):
        g = random_graph(rng, rng.randint(16, 24), rng.choice([0.3, 0.5, 0.7]))
        k = rng.randint(1, 2)
        res = solve(g, k, SolverConfig(master=master))
        assert res.theta == nx_theta(g, k)
        certify(g, k, res)


@pytest.mark.slow
def test_large_sparse_graph_solves_with_certificate():
    g = collaboration_graph(20000, 20000, seed=4)
    k = math.ceil(0.005 * g.n)
    res = solve(g, k, SolverConfig(time_limit=300))
    assert res.status == OPTIMAL and res.lb == res.ub == res.theta
    certify(g, k, res)
    assert res.stats["kernel"]["n"] < g.n / 2
