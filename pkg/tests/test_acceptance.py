"""Desk-scale acceptance suite, one test per criterion."""

import itertools
import random
import time

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from conftest import random_connected, spider_hub, strong_block_host, to_nx
from oracles import connectification_oracle
from twforge.blocks import distance_refine, find_strong_block, verify_block_after_deletion
from twforge.budget import ExtractionFailed
from twforge.connectifier import extract_connectifier, recognize_connectifier
from twforge.connectify import build_connectification, reduce_via_uniform, verify_connectification
from twforge.formats import decode_dimacs, decode_graph6, encode_dimacs, encode_graph6
from twforge.generators import make_davies, make_star_forest, make_wall, star_forest_from_lengths
from twforge.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    delete_vertices,
    girth,
    grid_graph,
    induced_subgraph,
    is_isomorphic,
    subdivide,
)
from twforge.pattern import find_clique, find_induced_biclique, find_long_hole, is_feeble, is_hole
from twforge.starforest import extract_long_hole, plant_forest, verify_planted
from twforge.treewidth import decomposition_from_order, exact_treewidth, minor_lower_bound, torso, validate_decomposition
from twforge.treewidth import TreeDecomposition


def random_connected_subset(g: Graph, rng: random.Random) -> list:
    size = rng.randint(1, g.n)
    seen = {rng.randrange(g.n)}
    frontier = set(g.adj[next(iter(seen))])
    while len(seen) < size and frontier:
        v = rng.choice(sorted(frontier))
        seen.add(v)
        frontier |= g.adj[v]
        frontier -= seen
    return sorted(seen)


# ---------------------------------------------------------------- 1

def test_criterion_1_davies_invariants(acceptance):
    start = time.perf_counter()
    rng = random.Random(1)
    problems = []
    for rho, sigma, theta in itertools.product((0, 1), (1, 2, 3), (2, 3, 4)):
        g, roles = make_davies(rho, sigma, theta)
        tag = f"J({rho},{sigma},{theta})"
        if rho == 0:
            gi = girth(g)
            if gi != nx.girth(to_nx(g)) or gi < 2 * sigma + 4:
                problems.append(f"{tag} girth {gi}")
        if find_clique(g, 4) is not None:
            problems.append(f"{tag} has K4")
        if find_induced_biclique(g, 3) is not None:
            problems.append(f"{tag} has induced K33")
        if rho == 0 and sigma == 1:
            tw = exact_treewidth(g).value
            if tw is None or tw < theta:
                problems.append(f"{tag} treewidth {tw}")
        mb = minor_lower_bound(g, roles.paths, theta)
        if mb is None or mb.bound < theta:
            problems.append(f"{tag} no minor certificate")
        for _ in range(200):
            sub, _ = induced_subgraph(g, random_connected_subset(g, rng))
            if not is_feeble(sub)[0]:
                problems.append(f"{tag} non-feeble induced subgraph")
                break
    wall, _ = make_wall(4)
    for _ in range(20):
        h, _ = subdivide(wall, {e: rng.randint(1, 4) for e in wall.edges()})
        if is_feeble(h)[0]:
            problems.append("feeble wall subdivision")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 300
    acceptance(1, ok, f"18 Davies graphs, {elapsed:.1f}s, problems={problems[:3]}")
    assert ok


# ---------------------------------------------------------------- 2

def test_criterion_2_connectifier_contract(acceptance):
    start = time.perf_counter()
    rng = random.Random(2)
    runs = successes = 0
    bad = []
    for _ in range(500):
        n = rng.randint(14, 30)
        g = random_connected(rng, n, rng.uniform(0.0, 0.2))
        S = rng.sample(range(n), rng.randint(12, min(n, 18)))
        G = to_nx(g)
        for eta in (2, 3, 4):
            runs += 1
            try:
                cert = extract_connectifier(g, S, eta, budget=500_000)
            except ExtractionFailed as e:
                if not isinstance(e.trace, list) or not e.as_dict():
                    bad.append("unstructured failure")
                continue
            H = G.subgraph(cert.H)
            hits = set(cert.H) & set(S)
            if not recognize_connectifier(g, cert.H, S, eta) or len(hits) != eta:
                bad.append("unrecognised certificate")
            elif any(H.degree(v) > eta for v in hits) or not nx.is_connected(H):
                bad.append("degree bound")
            else:
                successes += 1
    elapsed = time.perf_counter() - start
    rate = successes / runs
    ok = rate >= 0.95 and not bad and elapsed < 600
    acceptance(2, ok, f"{successes}/{runs} verified ({rate:.1%}), {elapsed:.1f}s, problems={bad[:3]}")
    assert ok


# ---------------------------------------------------------------- 3

def closed_form_instances():
    for n in range(2, 13):
        for T in nx.nonisomorphic_trees(n):
            yield f"tree{n}", Graph(n, list(T.edges())), 1
    for n in range(3, 13):
        yield f"C{n}", cycle_graph(n), 2
    for n in range(1, 13):
        yield f"K{n}", complete_graph(n), n - 1
    for a in range(1, 12):
        for b in range(a, 13 - a):
            yield f"K{a},{b}", complete_bipartite(a, b), min(a, b)
    yield "grid3x3", grid_graph(3, 3), 3


def merge_bags(td: TreeDecomposition, rng: random.Random) -> TreeDecomposition:
    """Contract a random tree edge, uniting its two bags; stays valid."""
    if td.tree.m == 0:
        return td
    x, y = rng.choice(td.tree.edges())
    keep = [z for z in range(td.tree.n) if z != y]
    pos = {z: i for i, z in enumerate(keep)}
    pos[y] = pos[x]
    bags = [set(td.bags[z]) for z in keep]
    bags[pos[x]] |= td.bags[y]
    edges = {tuple(sorted((pos[a], pos[b]))) for a, b in td.tree.edges() if pos[a] != pos[b]}
    return TreeDecomposition.make(sorted(edges), bags)


def test_criterion_3_treewidth_oracles(acceptance):
    start = time.perf_counter()
    wrong = []
    count = 0
    for name, g, want in closed_form_instances():
        count += 1
        got = exact_treewidth(g).value
        if got != want:
            wrong.append(f"{name}: {got} != {want}")
    rng = random.Random(3)
    torso_bad = []
    for _ in range(200):
        n = rng.randint(2, 14)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < rng.choice((0.2, 0.35, 0.5))])
        order = list(range(n))
        rng.shuffle(order)
        td = decomposition_from_order(g, order)
        for _ in range(rng.randint(0, 3)):
            td = merge_bags(td, rng)
        if not validate_decomposition(g, td)[0]:
            torso_bad.append("invalid decomposition")
            continue
        tw = exact_treewidth(g).value
        upper, _ = treewidth_min_fill_in(to_nx(g))
        worst = max(exact_treewidth(torso(g, td, x)[0]).value for x in range(td.tree.n))
        if not tw <= worst or tw > upper:
            torso_bad.append(f"tw {tw} > torso max {worst}")
    elapsed = time.perf_counter() - start
    ok = not wrong and not torso_bad and elapsed < 300
    acceptance(3, ok, f"{count} closed forms, 200 torso pairs, {elapsed:.1f}s, problems={(wrong + torso_bad)[:3]}")
    assert ok


# ---------------------------------------------------------------- 4

def test_criterion_4_strong_block_refinement(acceptance):
    start = time.perf_counter()
    rng = random.Random(4)
    instances = refined = routed = 0
    bad = []
    seed = 0
    while instances < 200:
        seed += 1
        b = rng.randint(3, 5)
        k = rng.randint(2, 3)
        d = rng.randint(1, 3)
        g, B = strong_block_host(rng, b, k, d, pendants=rng.randint(0, 8))
        cert = find_strong_block(g, k, budget=200_000, size=b)
        if cert is None:
            continue
        instances += 1
        target = 2
        try:
            res = distance_refine(g, cert.B, b, d, target, block=cert)
        except ExtractionFailed:
            continue
        refined += 1
        h, old = delete_vertices(g, res.A)
        dist = dict(nx.all_pairs_shortest_path_length(to_nx(h), cutoff=d))
        S = [old.index(v) for v in res.S]
        if any(y in dist[x] for x, y in itertools.combinations(S, 2)):
            bad.append(f"seed {seed}: S not {d}-stable")
        if res.block is not None:
            routed += 1
            ok_block, why = verify_block_after_deletion(g, res.block, res.A, target)
            if not ok_block:
                bad.append(f"seed {seed}: {why}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    acceptance(4, ok, f"{instances} blocks, {refined} refined, {routed} routed, {elapsed:.1f}s, problems={bad[:3]}")
    assert ok


# ---------------------------------------------------------------- 5

def test_criterion_5_planting_and_holes(acceptance):
    start = time.perf_counter()
    rng = random.Random(5)
    bad = []
    hosts = 0
    for theta, delta, lam in itertools.product((1, 2), (2, 3), (1, 2)):
        for rep in range(3):
            legs = delta + 1
            L = 2 * lam + 1
            size = lambda legs: 1 + (theta + 1) * (1 + legs * L)
            if size(legs) > 60:
                legs = delta
            extra = max(0, rng.randint(30, 60) - size(legs))
            g, S = spider_hub(theta + 1, legs, L, extra=min(extra, 60 - size(legs)), rng=rng)
            hosts += 1
            tag = f"({theta},{delta},{lam}) n={g.n}"
            if not 30 <= g.n <= 60:
                bad.append(f"{tag}: host size")
            try:
                cert = plant_forest(g, S, theta, delta, lam)
                problems = verify_planted(g, cert, theta, delta, lam)
                if problems:
                    bad.append(f"{tag}: {problems[0]}")
            except ExtractionFailed as e:
                bad.append(f"{tag}: plant failed: {e}")
            try:
                cyc = extract_long_hole(g, S, lam)
                chordless = {frozenset(c) for c in nx.chordless_cycles(to_nx(g), length_bound=len(cyc))}
                if len(cyc) < lam + 3 or not is_hole(g, cyc) or frozenset(cyc) not in chordless:
                    bad.append(f"{tag}: hole rejected")
                if find_long_hole(g, lam + 2) is None:
                    bad.append(f"{tag}: independent finder disagrees")
            except ExtractionFailed as e:
                bad.append(f"{tag}: hole failed: {e}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    acceptance(5, ok, f"{hosts} hosts, {elapsed:.1f}s, problems={bad[:3]}")
    assert ok


# ---------------------------------------------------------------- 6

def test_criterion_6_connectification(acceptance):
    start = time.perf_counter()
    rng = random.Random(6)
    bad = []
    built = []
    for kind, sigma in itertools.product((1, 2, 3, 4), (1, 2)):
        for F in (make_star_forest(2, 3, 1), make_star_forest(3, 3, 2)):
            for pi in itertools.permutations(F.roots):
                g, cert = build_connectification(F, pi, kind, sigma)
                ok, why, _ = verify_connectification(g, cert)
                if not ok or connectification_oracle(g, cert) is not True:
                    bad.append(f"round trip kind {kind} sigma {sigma}: {why}")
                built.append((g, cert))
    rejected = survived = 0
    for i in range(1000):
        g, cert = built[rng.randrange(len(built))]
        u, v = rng.sample(sorted(cert.Xi), 2)
        g2 = g.with_edges(remove=[(u, v)]) if g.has_edge(u, v) else g.with_edges(add=[(u, v)])
        accepted = verify_connectification(g2, cert)[0]
        truth = connectification_oracle(g2, cert)
        if truth is None or accepted != truth:
            bad.append(f"mutant {u}-{v}: recogniser {accepted}, oracle {truth}")
        rejected += not accepted
        survived += accepted
    reductions = 0
    forests = [make_star_forest(theta, delta, lam) for theta in (2, 3) for delta in (0, 1, 2, 3) for lam in (1, 2)]
    shapes = [c for r in range(4) for c in itertools.combinations_with_replacement((1, 2), r)]
    for _ in range(20):
        forests.append(star_forest_from_lengths([list(rng.choice(shapes)) for _ in range(rng.choice((2, 3)))]))
    for F in forests:
        for pi in itertools.permutations(F.roots):
            for kind, sigma in itertools.product((1, 2, 3, 4), (1, 2)):
                try:
                    g, cert, vmap = reduce_via_uniform(F, pi, kind, sigma)
                except ValueError as e:
                    bad.append(f"reduction {[c.lengths for c in F.components]}: {e}")
                    continue
                reductions += 1
                shape = sorted(sorted(c.lengths) for c in cert.F_part.components)
                ok = verify_connectification(g, cert)[0]
                if not ok or shape != sorted(sorted(c.lengths) for c in F.components) or cert.pi != tuple(vmap[x] for x in pi):
                    bad.append(f"reduction {[c.lengths for c in F.components]} kind {kind}")
    elapsed = time.perf_counter() - start
    ok = not bad and survived == 0 and elapsed < 600
    acceptance(6, ok, f"{len(built)} round trips, {rejected}/1000 mutants rejected, {reductions} reductions, {elapsed:.1f}s, problems={bad[:3]}")
    assert ok


# ---------------------------------------------------------------- 7

def test_criterion_7_format_fidelity(acceptance):
    start = time.perf_counter()
    rng = random.Random(7)
    bad = 0
    for _ in range(1000):
        n = rng.randint(0, 80)
        p = rng.random()
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        data = encode_graph6(g)
        if decode_graph6(data) != g or encode_graph6(decode_graph6(data)) != data:
            bad += 1
        if n and data != nx.to_graph6_bytes(to_nx(g), header=False).strip():
            bad += 1
        if not is_isomorphic(decode_dimacs(encode_dimacs(g)), g):
            bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 60
    acceptance(7, ok, f"1000 graphs, {bad} mismatches, {elapsed:.1f}s")
    assert ok
