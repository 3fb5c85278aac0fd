import itertools
import random

import pytest

from oracles import connectification_oracle
from twforge.budget import ExtractionFailed
from twforge.connectify import (
    PipelineKnobs,
    apply_embedding,
    build_connectification,
    embed_forest,
    pipeline,
    recognize_connectification,
    reduce_via_uniform,
    verify_connectification,
)
from twforge.generators import RootedStarForest, make_davies, make_star_forest, star_forest_from_lengths


@pytest.mark.parametrize("kind", [1, 2, 3, 4])
@pytest.mark.parametrize("sigma", [1, 2, 3])
def test_build_round_trip(kind, sigma):
    F = make_star_forest(3, 2, 2)
    for pi in itertools.permutations(F.roots):
        g, cert = build_connectification(F, pi, kind, sigma)
        ok, why, hc = verify_connectification(g, cert)
        assert ok, why
        assert hc.kind == kind and cert.pi == pi
        assert connectification_oracle(g, cert) is True


def test_build_rejects_bad_input():
    F = make_star_forest(2, 1, 1)
    with pytest.raises(ValueError):
        build_connectification(F, kind=0)
    with pytest.raises(ValueError):
        build_connectification(make_star_forest(1, 1, 1))
    with pytest.raises(ValueError):
        build_connectification(F, pi=(0, 0))
    with pytest.raises(ValueError):
        build_connectification(F, kind=2, sigma=3, gaps=[2])


def test_clause_failures_are_named():
    F = make_star_forest(2, 2, 1)
    g, cert = build_connectification(F, kind=2)
    leaf = next(iter(F.leaves))
    outside = max(cert.Xi)
    ok, why, _ = recognize_connectification(g.with_edges(add=[(leaf, outside)]), cert.Xi, cert.F_part, cert.X, cert.pi, 1)
    assert not ok and "anticomplete" in why
    r0, r1 = F.roots
    ok, why, _ = recognize_connectification(g.with_edges(add=[(r0, r1)]), cert.Xi, cert.F_part, cert.X, cert.pi, 1)
    assert not ok and "induced" in why
    ok, why, _ = recognize_connectification(g, cert.Xi, cert.F_part, {r0}, (r0,), 1)
    assert not ok
    ok, why, _ = recognize_connectification(g, cert.Xi, cert.F_part, cert.X, cert.pi, 1, kind=0)
    assert not ok and "not allowed" in why


def test_embed_forest_truncates_at_leaf_end():
    F1 = make_star_forest(2, 3, 3)
    F2 = star_forest_from_lengths([[1, 2], [3]])
    w = embed_forest(F1, F2)
    assert w is not None
    copy = apply_embedding(F1, w)
    assert sorted(sorted(c.lengths) for c in copy.components) == [[1, 2], [3]]
    assert copy.violations() == []
    for c in copy.components:
        assert all(s[-1] == c.root for s in c.stems)
    assert embed_forest(F1, star_forest_from_lengths([[4]])) is None
    assert embed_forest(F1, star_forest_from_lengths([[1]] * 3)) is None
    assert embed_forest(F1, star_forest_from_lengths([[1, 2]]), truncate=False) is None


def test_reduction_all_orders():
    F = star_forest_from_lengths([[1, 2], [2, 2, 2], [1]])
    for kind in (1, 2, 3, 4):
        for pi in itertools.permutations(F.roots):
            g, cert, vmap = reduce_via_uniform(F, pi, kind, 1)
            assert verify_connectification(g, cert)[0]
            assert cert.pi == tuple(vmap[x] for x in pi)
            lengths = sorted(sorted(c.lengths) for c in cert.F_part.components)
            assert lengths == sorted(sorted(c.lengths) for c in F.components)


def test_pipeline_on_davies_graph():
    g, _ = make_davies(0, 1, 4)
    F = make_star_forest(2, 1, 1)
    cert = pipeline(g, 4, F, knobs=PipelineKnobs(clean_budget=50_000))
    ok, why, _ = verify_connectification(g, cert)
    assert ok, why


def test_pipeline_failure_carries_attempts():
    g, _ = make_davies(0, 1, 2)
    F = make_star_forest(2, 3, 3)
    with pytest.raises(ExtractionFailed) as e:
        pipeline(g, 4, F, knobs=PipelineKnobs(clean_budget=20_000, max_extra=1))
    assert e.value.trace and all("extra_stems" in a for a in e.value.trace)
