import random

import networkx as nx
import pytest

from conftest import spider_hub, to_nx
from twforge.budget import ExtractionFailed
from twforge.generators import RootedStarForest, StarComponent
from twforge.graph import Graph, cycle_graph, is_induced_path
from twforge.pattern import is_hole
from twforge.starforest import (
    PlantedForestCert,
    confirm_hole,
    extract_long_hole,
    hole_from_paths,
    plant_forest,
    plant_star,
    verify_planted,
)


@pytest.mark.parametrize("delta,lam", [(1, 1), (2, 1), (3, 2)])
def test_plant_star_is_induced(delta, lam):
    g, S = spider_hub(2, delta + 1, 2 * lam + 1)
    comp = plant_star(g, S, S[1], delta, lam)
    assert comp.root == S[1] and len(comp.stems) == delta
    assert all(L == lam for L in comp.lengths)
    for s in comp.stems:
        assert is_induced_path(g, list(s))
    assert RootedStarForest(g, (comp,)).violations() == []


def test_plant_star_needs_root_in_s():
    g, S = spider_hub(2, 2, 3)
    with pytest.raises(ValueError):
        plant_star(g, S, 2, 1, 1)


def test_plant_star_failure_carries_trace():
    # the two x-y paths touch right after x, so no two prefixes are anticomplete
    g = Graph(5, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)])
    with pytest.raises(ExtractionFailed) as e:
        plant_star(g, {0, 4}, 0, 2, 1)
    assert e.value.trace


def test_plant_forest_verified():
    g, S = spider_hub(3, 3, 3)
    cert = plant_forest(g, S, 2, 2, 1)
    assert verify_planted(g, cert, 2, 2, 1) == []
    assert set(cert.forest.roots) <= set(S)


def test_verify_planted_catches_problems():
    g, S = spider_hub(3, 3, 3)
    cert = plant_forest(g, S, 2, 2, 1)
    assert verify_planted(g, cert, 3, 2, 1) != []
    assert verify_planted(g, cert, 2, 2, 2) != []
    comp = cert.forest.components[0]
    chord = g.with_edges(add=[(comp.stems[0][0], comp.stems[1][0])])
    moved = PlantedForestCert(RootedStarForest(chord, cert.forest.components), cert.S)
    assert verify_planted(chord, moved) != []
    wrong_root = PlantedForestCert(cert.forest, frozenset())
    assert any("not in S" in v for v in verify_planted(g, wrong_root))


def test_plant_forest_too_few_roots():
    g, S = spider_hub(1, 3, 3)
    with pytest.raises(ExtractionFailed):
        plant_forest(g, S[1:], 2, 2, 1)


def test_hole_from_paths_on_cycle():
    g = cycle_graph(8)
    p1 = (0, 1, 2, 3, 4)
    p2 = (0, 7, 6, 5, 4)
    cyc = hole_from_paths(g, p1, p2)
    assert is_hole(g, cyc) and len(cyc) == 8


def test_extract_long_hole_with_chord():
    g = Graph(14, [(i, (i + 1) % 14) for i in range(14)] + [(3, 10)])
    cyc = extract_long_hole(g, [0, 7], 1)
    assert is_hole(g, cyc) and len(cyc) >= 4
    assert confirm_hole(g, cyc, 1)


def test_extract_long_hole_matches_networkx():
    rng = random.Random(41)
    for lam in (1, 2):
        g, S = spider_hub(2, 3, 2 * lam + 1, extra=6, rng=rng)
        cyc = extract_long_hole(g, S, lam)
        assert len(cyc) >= lam + 3
        assert any(set(c) == set(cyc) for c in nx.chordless_cycles(to_nx(g)))


def test_no_hole_in_tree():
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)])
    with pytest.raises(ExtractionFailed):
        extract_long_hole(g, [0, 3, 5], 1)
