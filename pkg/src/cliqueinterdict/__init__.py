"""Exact solver for the clique interdiction problem.

Given a graph and a budget ``k``, find at most ``k`` vertices whose deletion
minimizes the clique number of what remains.
"""

from .clique import CliqueFamily, Coloring, greedy_coloring, greedy_disjoint_cliques, max_clique
from .graph import Graph, build_graph, remove_edges, remove_vertices, triangle_counts
from .pipeline import preprocess
from .solver import SolveResult, SolverConfig, solve

__all__ = [
    "CliqueFamily",
    "Coloring",
    "Graph",
    "SolveResult",
    "SolverConfig",
    "build_graph",
    "greedy_coloring",
    "greedy_disjoint_cliques",
    "max_clique",
    "preprocess",
    "remove_edges",
    "remove_vertices",
    "solve",
    "triangle_counts",
]
