import random

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings

from twforge.graph import Graph

settings.register_profile("twforge", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("twforge")


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def from_nx(G) -> Graph:
    G = nx.convert_node_labels_to_integers(G, ordering="sorted")
    return Graph(G.number_of_nodes(), list(G.edges()))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_connected(rng: random.Random, n: int, p: float) -> Graph:
    """A random tree plus extra edges with probability p."""
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges |= {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    return Graph(n, sorted(edges))


@pytest.fixture
def rng():
    return random.Random(12345)


def strong_block_host(rng: random.Random, b: int, k: int, d: int, shortcut_p: float = 0.4, pendants: int = 5):
    """Vertices 0..b-1 joined pairwise by k paths of length d+1..d+3, some
    pairs also by one short path (length 1..d), plus pendant trees.

    Returns the graph and the block vertices.
    """
    edges = []
    n = b

    def add_path(x, y, length):
        nonlocal n
        inner = list(range(n, n + length - 1))
        n += length - 1
        seq = [x] + inner + [y]
        edges.extend(zip(seq, seq[1:]))

    for x in range(b):
        for y in range(x + 1, b):
            for _ in range(k):
                add_path(x, y, rng.randint(d + 1, d + 3))
            if rng.random() < shortcut_p:
                add_path(x, y, rng.randint(1, d))
    for _ in range(pendants):
        edges.append((rng.randrange(n), n))
        n += 1
    return Graph(n, edges), list(range(b))


def spider_hub(roots: int, legs: int, L: int, extra: int = 0, rng: random.Random | None = None):
    """Hub 0 joined to each root by ``legs`` internally disjoint paths with
    ``L`` interior vertices, plus ``extra`` pendant vertices hung at random.

    Returns the graph and S = hub plus roots.
    """
    edges = []
    n = 1
    S = [0]
    for _ in range(roots):
        x = n
        n += 1
        S.append(x)
        for _ in range(legs):
            prev = x
            for _ in range(L):
                edges.append((prev, n))
                prev = n
                n += 1
            edges.append((prev, 0))
    rng = rng or random.Random(0)
    for _ in range(extra):
        edges.append((rng.randrange(n), n))
        n += 1
    return Graph(n, edges), S


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
