import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from cliqueinterdict.graph import Graph, build_graph

DATA = Path(__file__).parent / "data"


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_instances(count: int, seed: int, n_range=(6, 12), ks=(0, 1, 2, 3),
                     ps=(0.2, 0.35, 0.5, 0.65, 0.8)):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(*n_range)
        p = rng.choice(ps)
        out.append((random_graph(rng, n, p), rng.choice(ks)))
    return out


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [e for e, keep in zip(pairs, mask) if keep])


def collaboration_graph(n: int, groups: int, seed: int) -> Graph:
    """Union of small author cliques; half the authors are drawn by past activity."""
    rng = random.Random(seed)
    edges, history = [], []
    for _ in range(groups):
        size = min(2 + int(rng.expovariate(0.6)), 30)
        authors: set[int] = set()
        while len(authors) < size:
            authors.add(rng.choice(history) if history and rng.random() < 0.5 else rng.randrange(n))
        history.extend(authors)
        a = sorted(authors)
        edges += [(a[i], a[j]) for i in range(len(a)) for j in range(i + 1, len(a))]
    return build_graph(n, edges)


def brute_common(g: Graph, u: int, v: int) -> int:
    return len(set(g.adj[u]) & set(g.adj[v]))


@pytest.fixture
def data_dir() -> Path:
    return DATA


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
