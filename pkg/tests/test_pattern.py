import random
from itertools import combinations

import networkx as nx
import pytest

from conftest import random_graph, to_nx
from twforge.budget import Budget, BudgetExhausted
from twforge.generators import make_davies, make_wall
from twforge.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    line_graph,
    path_graph,
    subdivide,
)
from twforge.pattern import (
    check_clique,
    check_induced_biclique,
    check_induced_subdivision,
    check_line_subdivision,
    check_short_complete_subdivision,
    find_clique,
    find_induced_biclique,
    find_induced_line_subdivision,
    find_induced_subdivision,
    find_long_hole,
    find_short_complete_subdivision,
    is_feeble,
    is_hole,
    is_t_clean,
)


def brute_induced_biclique(g, t):
    for A in combinations(range(g.n), t):
        if any(g.has_edge(a, b) for a, b in combinations(A, 2)):
            continue
        common = set.intersection(*(set(g.adj[a]) for a in A)) - set(A)
        for B in combinations(sorted(common), t):
            if not any(g.has_edge(a, b) for a, b in combinations(B, 2)):
                return True
    return False


def test_clique_against_networkx():
    rng = random.Random(5)
    for _ in range(80):
        g = random_graph(rng, rng.randint(3, 11), 0.5)
        omega = max((len(c) for c in nx.find_cliques(to_nx(g))), default=0)
        for t in (3, 4):
            X = find_clique(g, t)
            assert (X is not None) == (omega >= t)
            if X:
                assert check_clique(g, X, t)


def test_biclique_against_brute_force():
    rng = random.Random(6)
    for _ in range(60):
        g = random_graph(rng, rng.randint(4, 9), 0.45)
        hit = find_induced_biclique(g, 2)
        assert (hit is not None) == brute_induced_biclique(g, 2)
        if hit:
            assert check_induced_biclique(g, hit[0], hit[1], 2)


def test_biclique_examples():
    assert find_induced_biclique(complete_bipartite(3, 3), 3) is not None
    assert find_induced_biclique(complete_graph(6), 2) is None
    assert not check_induced_biclique(complete_graph(4), [0, 1], [2, 3], 2)


def test_budget_exhaustion_is_reported():
    with pytest.raises(BudgetExhausted):
        find_clique(complete_graph(12), 12, Budget(3))


def test_wall_subdivision_found_and_checked():
    wall, _ = make_wall(3)
    rng = random.Random(7)
    h, _ = subdivide(wall, {e: rng.randint(1, 3) for e in wall.edges()})
    w = find_induced_subdivision(h, wall)
    assert w is not None
    assert check_induced_subdivision(h, wall, w) == []


def test_subdivision_checker_rejects_tampering():
    wall, _ = make_wall(3)
    w = find_induced_subdivision(wall, wall)
    assert w is not None
    chord = wall.with_edges(add=[(0, 2)]) if not wall.has_edge(0, 2) else wall
    assert check_induced_subdivision(chord, wall, w) != []


def test_wall_not_found_in_tree_or_cycle():
    wall, _ = make_wall(3)
    assert find_induced_subdivision(cycle_graph(20), wall) is None
    assert find_induced_subdivision(path_graph(20), wall) is None


def test_line_subdivision_found_and_checked():
    wall, _ = make_wall(3)
    h, _ = subdivide(wall, {e: 2 for e in wall.edges()})
    lg, _ = line_graph(h)
    w = find_induced_line_subdivision(lg, wall)
    assert w is not None
    assert check_line_subdivision(lg, wall, w) == []


def test_feeble_examples():
    assert is_feeble(path_graph(6))[0]
    assert is_feeble(cycle_graph(8))[0]
    wall, _ = make_wall(4)
    h, _ = subdivide(wall, {e: 2 for e in wall.edges()})
    assert not is_feeble(h)[0]
    with pytest.raises(ValueError):
        is_feeble(Graph(2, []))


def test_long_hole_examples():
    h = find_long_hole(cycle_graph(7), 5)
    assert h is not None and is_hole(cycle_graph(7), h)
    assert find_long_hole(cycle_graph(7), 7) is None
    assert find_long_hole(complete_graph(6), 2) is None


def test_long_hole_against_networkx():
    rng = random.Random(8)
    for _ in range(60):
        g = random_graph(rng, rng.randint(4, 10), 0.35)
        longest = max((len(c) for c in nx.chordless_cycles(to_nx(g))), default=0)
        for lam in (3, 4, 5):
            h = find_long_hole(g, lam)
            assert (h is not None) == (longest > max(lam, 3))
            if h:
                assert is_hole(g, h) and len(h) > lam


def test_short_complete_subdivision():
    k4 = complete_graph(4)
    h, _ = subdivide(k4, {e: 2 for e in k4.edges()})
    w = find_short_complete_subdivision(h, 4, 2)
    assert w is not None and check_short_complete_subdivision(h, w, 4, 2) == []
    assert find_short_complete_subdivision(h, 4, 1) is None


def test_t_clean_reports():
    assert is_t_clean(complete_graph(5), 4, 10_000).kind == "clique"
    assert is_t_clean(complete_bipartite(3, 3), 3, 10_000).kind == "biclique"
    wall, _ = make_wall(3)
    assert is_t_clean(wall, 3, 100_000).kind == "wall-subdivision"
    assert is_t_clean(path_graph(10), 3, 100_000).clean is True
    g, _ = make_davies(0, 1, 4)
    rep = is_t_clean(g, 4, 100_000, davies=(0, 1, 4))
    assert rep.clean is True and any("walls excluded" in n for n in rep.notes)
    assert is_t_clean(complete_graph(8), 8, 1).clean in (False, None)
