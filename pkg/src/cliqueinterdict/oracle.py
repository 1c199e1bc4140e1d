"""Exhaustive ground truth for clique number and interdiction value on tiny graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph


class OracleBudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_vertices_omega: int = 16
    max_vertices_theta: int = 14
    max_k: int = 4


DEFAULT_BUDGET = OracleBudget()


def _omega_table(g: Graph) -> list[int]:
    """``table[mask] = omega(G[mask])`` for every vertex subset, by lowest-bit recursion."""
    bits = g.bits
    size = 1 << g.n
    table = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        with_v = 1 + table[rest & bits[v]]
        without = table[rest]
        table[mask] = with_v if with_v > without else without
    return table


def brute_force_omega(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    if g.n > budget.max_vertices_omega:
        raise OracleBudgetExceeded(f"n={g.n} exceeds oracle limit {budget.max_vertices_omega}")
    return _omega_table(g)[(1 << g.n) - 1]


def brute_force_theta(
    g: Graph, k: int, budget: OracleBudget = DEFAULT_BUDGET
) -> tuple[int, frozenset[int]]:
    """Minimum clique number after deleting ``min(k, n)`` vertices, with one argmin.

    Deleting extra vertices never raises the clique number, so only subsets of
    exactly ``min(k, n)`` vertices are enumerated.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if g.n > budget.max_vertices_theta:
        raise OracleBudgetExceeded(f"n={g.n} exceeds oracle limit {budget.max_vertices_theta}")
    if k > budget.max_k and k < g.n:
        raise OracleBudgetExceeded(f"k={k} exceeds oracle limit {budget.max_k}")
    full = (1 << g.n) - 1
    table = _omega_table(g)
    best = None
    best_set: tuple[int, ...] = ()
    for subset in combinations(range(g.n), min(k, g.n)):
        mask = full
        for v in subset:
            mask &= ~(1 << v)
        val = table[mask]
        if best is None or val < best:
            best, best_set = val, subset
            if val == 0:
                break
    return best, frozenset(best_set)


def _omega_by_enumeration(g: Graph, vertices: list[int]) -> int:
    nb = g.nbrs
    best = 0
    for size in range(1, len(vertices) + 1):
        found = False
        for cand in combinations(vertices, size):
            if all(cand[j] in nb[cand[i]] for i in range(size) for j in range(i + 1, size)):
                found = True
                break
        if not found:
            break
        best = size
    return best


def brute_force_theta_all_subsets(g: Graph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Independent cross-check: every subset of size ``<= k``, explicit clique enumeration."""
    if g.n > min(budget.max_vertices_theta, 12):
        raise OracleBudgetExceeded(f"n={g.n} too large for the all-subsets oracle")
    verts = range(g.n)
    best = None
    for size in range(0, min(k, g.n) + 1):
        for removed in combinations(verts, size):
            gone = set(removed)
            val = _omega_by_enumeration(g, [v for v in verts if v not in gone])
            if best is None or val < best:
                best = val
    return best


def omega_after_removal(g: Graph, removed: frozenset[int] | set[int]) -> int:
    if g.n > DEFAULT_BUDGET.max_vertices_omega:
        raise OracleBudgetExceeded(f"n={g.n} exceeds oracle limit")
    mask = (1 << g.n) - 1
    for v in removed:
        mask &= ~(1 << v)
    return _omega_table(g)[mask]
