import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_connected
from twforge.budget import ExtractionFailed
from twforge.generators import make_caterpillar, star_forest_from_lengths
from twforge.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    is_connected,
    line_graph,
    path_graph,
    simplicial_set,
)
from twforge.connectifier import (
    check_kind,
    check_triple,
    extract_connectifier,
    find_bloated_tree,
    minimal_connected_triple,
    recognize_connectifier,
    verify_bloated_tree,
    verify_connectifier,
)


def star(legs):
    f = star_forest_from_lengths([legs])
    return f.host, set(f.leaves)


def line_of(g):
    lg, _ = line_graph(g)
    return lg, set(simplicial_set(lg))


def example(kind, eta):
    """A connectifier of the given kind with eta terminals; returns (g, S)."""
    if kind == 0:
        return line_of(star([2] * eta)[0])
    if kind == 1:
        return star([2] * eta)
    if kind == 2:
        g = path_graph(3 * (eta - 1) + 1)
        return g, set(range(0, g.n, 3))
    if kind == 3:
        g, roles = make_caterpillar([3] * (eta - 1), 2)
        return g, set(roles.leaves)
    g, roles = make_caterpillar([3] * (eta - 1), 2)
    return line_of(g)


@pytest.mark.parametrize("kind", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("eta", [3, 4, 5])
def test_examples_recognised(kind, eta):
    g, S = example(kind, eta)
    cert = check_kind(g, g.vertices(), S, eta, 1, kind)
    assert cert, str(cert)
    assert verify_connectifier(g, cert, S) == []
    assert set(cert.s_hits) == S


@pytest.mark.parametrize("kind", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("eta", [4, 5])
def test_kinds_are_exclusive_for_large_eta(kind, eta):
    g, S = example(kind, eta)
    res = recognize_connectifier(g, g.vertices(), S, eta)
    assert res and res.kind == kind
    for other in {0, 1, 2, 3, 4} - {kind}:
        assert not check_kind(g, g.vertices(), S, eta, 1, other)


@pytest.mark.parametrize("kind", [0, 1, 2, 3, 4])
def test_connectifiers_are_minimal(kind):
    g, S = example(kind, 4)
    H = set(g.vertices())
    for v in H - S:
        rest = H - {v}
        assert not is_connected(g, rest) or not recognize_connectifier(g, rest, S, 4)


def test_wrong_eta_or_sigma_rejected():
    g, S = example(2, 4)
    assert not recognize_connectifier(g, g.vertices(), S, 3)
    assert recognize_connectifier(g, g.vertices(), S, 4, sigma=3)
    assert not recognize_connectifier(g, g.vertices(), S, 4, sigma=4)
    rej = check_kind(g, [0, 1, 5], S, 2, 1, 2)
    assert not rej and "connected" in str(rej)


def test_tampered_certificate_fails_verification():
    g, S = example(3, 4)
    cert = check_kind(g, g.vertices(), S, 4, 1, 3)
    h2 = g.with_edges(add=[(0, g.n - 1)])
    assert verify_connectifier(h2, cert, S) != []


def bloat(tree: Graph, rng) -> Graph:
    """Replace some branch vertices of a tree by cliques, one edge per clique vertex."""
    adj = {v: set(tree.adj[v]) for v in tree.vertices()}
    n = tree.n
    for v in range(tree.n):
        nb = sorted(adj[v])
        if len(nb) < 3 or rng.random() < 0.4:
            continue
        clique = [v] + list(range(n, n + len(nb) - 1))
        n += len(nb) - 1
        for c in clique:
            adj.setdefault(c, set())
        for c, u in zip(clique, nb):
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(c)
            adj[c].add(u)
        for c in clique:
            adj[c] |= set(clique) - {c}
    return Graph(n, [(u, w) for u in adj for w in adj[u] if u < w])


@given(st.integers(0, 10_000))
def test_bloated_trees_are_hereditary(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 12)
    tree = Graph(n, [(rng.randrange(v), v) for v in range(1, n)])
    g = bloat(tree, rng)
    assert verify_bloated_tree(g, g.vertices())
    # grow a random connected subset
    J = {rng.randrange(g.n)}
    for _ in range(rng.randint(0, g.n)):
        frontier = sorted(set().union(*(g.adj[v] for v in J)) - J)
        if not frontier:
            break
        J.add(rng.choice(frontier))
    assert verify_bloated_tree(g, J)


def test_bloated_violations():
    assert verify_bloated_tree(cycle_graph(5), range(5)).clause == "not-a-tree"
    k4 = complete_graph(4)
    two = Graph(6, k4.edges() + [(0, 4), (0, 5)])
    assert verify_bloated_tree(two, range(6)).clause == "outside-neighbours"
    with pytest.raises(ValueError):
        verify_bloated_tree(Graph(3, []), [0, 1])


def test_find_bloated_tree():
    g, S = example(3, 4)
    cert = find_bloated_tree(g, S, 4)
    assert cert and len(cert.J & S) >= 4


def test_minimal_triples():
    g, _ = star([1, 2, 3])
    w = minimal_connected_triple(g, [1, 3, 6])
    assert w.shape == "star" and check_triple(g, [1, 3, 6], w) == []
    tri = Graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    w = minimal_connected_triple(tri, [3, 4, 5])
    assert w.shape == "triangle" and check_triple(tri, [3, 4, 5], w) == []
    with pytest.raises(ValueError):
        minimal_connected_triple(Graph(3, []), [0, 1, 2])


def test_extract_on_random_graphs():
    rng = random.Random(21)
    for _ in range(20):
        g = random_connected(rng, 20, 0.08)
        S = rng.sample(range(g.n), 12)
        for eta in (2, 3, 4):
            cert = extract_connectifier(g, S, eta, budget=200_000)
            assert verify_connectifier(g, cert, S) == []
            assert len(cert.s_hits) == eta


def test_extract_reports_small_terminal_set():
    with pytest.raises(ExtractionFailed) as e:
        extract_connectifier(path_graph(5), [0, 4], 3)
    assert "S must grow" in str(e.value)
