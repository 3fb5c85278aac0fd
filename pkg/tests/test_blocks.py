import random
from itertools import combinations

import networkx as nx
import pytest

from conftest import random_graph, strong_block_host, to_nx
from twforge.budget import ExtractionFailed
from twforge.generators import make_davies
from twforge.graph import Graph, complete_graph, cycle_graph, delete_vertices, grid_graph, path_graph
from twforge.blocks import (
    StrongBlockCert,
    distance_refine,
    find_k_block,
    find_strong_block,
    inseparable,
    is_d_stable,
    k_blocks,
    min_separator_size,
    pair_connectivity,
    verify_block_after_deletion,
    verify_strong_block,
)


def brute_separator(g, x, y):
    """Smallest vertex set avoiding x, y whose removal separates them."""
    rest = [v for v in g.vertices() if v not in (x, y)]
    for size in range(len(rest) + 1):
        for Z in combinations(rest, size):
            h, old = delete_vertices(g, Z)
            if not nx.has_path(to_nx(h), old.index(x), old.index(y)):
                return size
    return None


def test_pair_connectivity_matches_networkx():
    rng = random.Random(31)
    for _ in range(80):
        g = random_graph(rng, rng.randint(2, 12), 0.35)
        x, y = rng.sample(range(g.n), 2)
        G = to_nx(g)
        want = len(list(nx.node_disjoint_paths(G, x, y))) if nx.has_path(G, x, y) else 0
        count, paths = pair_connectivity(g, x, y)
        assert count == want
        inner = [set(p[1:-1]) for p in paths]
        assert all(not (a & b) for a, b in combinations(inner, 2))


def test_menger_agrees_with_brute_force_separator():
    rng = random.Random(32)
    for _ in range(50):
        g = random_graph(rng, rng.randint(3, 9), 0.35)
        x, y = rng.sample(range(g.n), 2)
        if g.has_edge(x, y):
            assert min_separator_size(g, x, y) is None
            continue
        assert min_separator_size(g, x, y) == brute_separator(g, x, y) == pair_connectivity(g, x, y)[0]


def test_pair_connectivity_rejects_equal_ends():
    with pytest.raises(ValueError):
        pair_connectivity(path_graph(3), 1, 1)


def test_k_block_examples():
    assert find_k_block(complete_graph(5), 4) == frozenset(range(5))
    assert find_k_block(path_graph(5), 2) == frozenset({0, 1})
    assert find_k_block(path_graph(5), 2, adjacent_inseparable=False) is None
    assert find_k_block(grid_graph(3, 3), 2) == frozenset(range(9))
    assert find_k_block(cycle_graph(6), 3) is None


def test_k_blocks_are_cliques_of_the_relation():
    rng = random.Random(33)
    for _ in range(30):
        g = random_graph(rng, rng.randint(4, 10), 0.5)
        for B in k_blocks(g, 3):
            assert len(B) >= 3
            for x, y in combinations(sorted(B), 2):
                assert inseparable(g, x, y, 3)


def test_strong_block_found_and_verified():
    cert = find_strong_block(complete_graph(4), 2)
    assert cert and verify_strong_block(complete_graph(4), cert, 2)[0]
    g, roles = make_davies(0, 1, 2)
    cert = find_strong_block(g, 2, candidates=roles.hubs)
    assert cert and verify_strong_block(g, cert, 2)[0]


@pytest.mark.parametrize("k", [3, 4])
def test_strong_block_impossible_in_small_complete_graphs(k):
    # a strong k-block on k vertices needs k-2 interior vertices per pair,
    # more than K_{2k} has to spare once k >= 3
    assert find_strong_block(complete_graph(2 * k), k) is None


def test_strong_block_absent_in_cycle():
    assert find_strong_block(cycle_graph(8), 3) is None


def test_davies_hubs_need_theta_two():
    g, roles = make_davies(0, 1, 3)
    assert find_strong_block(g, 3, candidates=roles.hubs) is None


def test_verify_rejects_tampering():
    g = complete_graph(4)
    cert = find_strong_block(g, 2)
    pair = next(iter(cert.paths))
    short = dict(cert.paths)
    short[pair] = short[pair][:1]
    assert not verify_strong_block(g, StrongBlockCert(cert.B, short), 2)[0]
    p = cert.paths[pair][0]
    assert not verify_strong_block(g.with_edges(remove=[(p[0], p[1])]), cert, 2)[0]
    missing = {k: v for k, v in cert.paths.items() if k != pair}
    assert not verify_strong_block(g, StrongBlockCert(cert.B, missing), 2)[0]


def test_d_stable_against_distances():
    rng = random.Random(34)
    for _ in range(40):
        g = random_graph(rng, rng.randint(4, 12), 0.25)
        S = rng.sample(range(g.n), 3)
        dist = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
        for d in (1, 2, 3):
            want = all(dist[x].get(y, 99) > d for x, y in combinations(S, 2))
            assert is_d_stable(g, S, d)[0] == want


def test_distance_refine_on_block_host():
    rng = random.Random(35)
    g, B = strong_block_host(rng, 5, 2, 2)
    cert = find_strong_block(g, 2, size=5)
    assert cert and cert.B == frozenset(B)
    res = distance_refine(g, cert.B, 5, 2, 2, block=cert)
    h, old = delete_vertices(g, res.A)
    assert is_d_stable(h, [old.index(v) for v in res.S], 2)[0]
    assert res.block is not None
    assert verify_block_after_deletion(g, res.block, res.A, 2)[0]


def test_distance_refine_fails_when_everything_is_close():
    with pytest.raises(ExtractionFailed):
        distance_refine(complete_graph(5), range(5), 5, 1, 2)
