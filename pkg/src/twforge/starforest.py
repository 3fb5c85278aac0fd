"""Planting subdivided stars at block vertices, and long holes.

Both procedures start from internally disjoint paths between two vertices
of a well-connected, well-spread set ``S``, keep their short prefixes at
one end, and use how those prefixes touch each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blocks import _disjoint_paths, _max_stable, is_d_stable
from .budget import ExtractionFailed
from .generators import RootedStarForest, StarComponent
from .graph import Graph, anticomplete, bfs_distances, shortest_path
from .pattern import find_long_hole, is_hole


@dataclass(frozen=True)
class PlantedForestCert:
    forest: RootedStarForest
    S: frozenset

    def as_dict(self) -> dict:
        return {
            "S": sorted(self.S),
            "components": [{"root": c.root, "stems": [list(s) for s in c.stems]} for c in self.forest.components],
        }


def verify_planted(g: Graph, cert: PlantedForestCert, theta=None, delta=None, lam=None) -> list[str]:
    """Problems with a planted forest; empty when it is an induced,
    S-rooted copy of theta S_{delta,lam} with anticomplete components."""
    f = cert.forest
    if f.host != g:
        return ["forest is not hosted in g"]
    out = list(f.violations(induced=True))
    for r in f.roots:
        if r not in cert.S:
            out.append(f"root {r} is not in S")
    if theta is not None and f.size != theta:
        out.append(f"{f.size} components, expected {theta}")
    for c in f.components:
        if delta is not None and len(c.stems) != delta:
            out.append(f"root {c.root} has {len(c.stems)} stems, expected {delta}")
        if lam is not None and any(L != lam for L in c.lengths):
            out.append(f"root {c.root} has stem lengths {c.lengths}, expected {lam}")
    return out


def _induce(g: Graph, p: tuple) -> tuple:
    """Shortcut a path to an induced one on a subset of its vertices."""
    q = shortest_path(g, p[0], p[-1], allowed=set(p))
    return tuple(q)


def _prefix_paths(g: Graph, x: int, y: int, lam: int) -> list[tuple]:
    """Induced, internally disjoint x-y paths long enough that their
    length-``lam`` prefix at x misses y."""
    paths = [_induce(g, p) for p in _disjoint_paths(g, x, y)]
    return [p for p in paths if len(p) - 1 >= lam + 1]


def _partners(g: Graph, S, x: int) -> list[int]:
    dist = bfs_distances(g, x)
    return sorted((y for y in S if y != x and y in dist), key=lambda y: (dist[y], y))


def _conflicts(g: Graph, prefixes: list) -> Graph:
    edges = []
    for i in range(len(prefixes)):
        for j in range(i + 1, len(prefixes)):
            if not anticomplete(g, prefixes[i][1:], prefixes[j][1:]):
                edges.append((i, j))
    return Graph(len(prefixes), edges)


def plant_star(g: Graph, S, x: int, delta: int, lam: int, partners=None) -> StarComponent:
    """A copy of S_{delta,lam} rooted at ``x``, induced in ``g``.

    Route disjoint paths from ``x`` to a partner ``y`` in ``S``, cut them to
    length ``lam`` at ``x``, and take a stable set of the graph recording
    which prefixes touch.  Partners are tried nearest first.
    """
    S = frozenset(S)
    if x not in S:
        raise ValueError("x must lie in S")
    if delta < 1 or lam < 1:
        raise ValueError("delta and lambda must be >= 1")
    trace = []
    stable, witness = is_d_stable(g, S, 2 * lam + 1)
    if not stable:
        trace.append({"warning": "S is not (2*lambda+1)-stable", "short_path": list(witness)})
    for y in partners if partners is not None else _partners(g, S, x):
        paths = _prefix_paths(g, x, y, lam)
        prefixes = [p[: lam + 1] for p in paths]
        gamma = _conflicts(g, prefixes)
        ind, method = _max_stable(gamma, list(range(len(prefixes))))
        step = {"partner": y, "paths": len(paths), "stable": len(ind), "method": method}
        trace.append(step)
        if len(ind) < delta:
            if gamma.n:
                clique, _ = _max_stable(_complement(gamma), list(range(gamma.n)))
                step["clique"] = len(clique)
            continue
        stems = tuple(tuple(reversed(prefixes[i])) for i in ind[:delta])
        comp = StarComponent(x, stems)
        bad = RootedStarForest(g, (comp,)).violations(induced=True)
        if bad:
            step["rejected"] = bad
            continue
        return comp
    raise ExtractionFailed(f"no copy of S_{{{delta},{lam}}} rooted at {x}", trace)


def _complement(g: Graph) -> Graph:
    return Graph(g.n, [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)])


def find_star_at(g: Graph, S, x: int, delta: int, lam: int) -> StarComponent | None:
    try:
        return plant_star(g, S, x, delta, lam)
    except ExtractionFailed:
        return None


def plant_forest(g: Graph, S, theta: int, delta: int, lam: int) -> PlantedForestCert:
    """An S-planted induced copy of theta S_{delta,lam}.

    Stars are planted at the members of ``S`` in increasing order; a star
    is kept when it is disjoint from and anticomplete to those kept
    before it.  When ``S`` is (2 lam + 1)-stable every star qualifies.
    """
    if theta < 1:
        raise ValueError("theta must be >= 1")
    S = frozenset(S)
    kept = []
    used = set()
    trace = []
    for x in sorted(S):
        if len(kept) == theta:
            break
        if x in used or any(x in g.adj[u] for u in used):
            trace.append({"root": x, "skipped": "touches an earlier star"})
            continue
        try:
            comp = plant_star(g, S, x, delta, lam)
        except ExtractionFailed as e:
            trace.append({"root": x, "failed": e.trace})
            continue
        verts = comp.vertices
        if verts & used or not anticomplete(g, verts, used):
            trace.append({"root": x, "skipped": "star touches an earlier star"})
            continue
        kept.append(comp)
        used |= verts
        trace.append({"root": x, "planted": [list(s) for s in comp.stems]})
    if len(kept) < theta:
        raise ExtractionFailed(f"planted {len(kept)} of {theta} stars", trace)
    cert = PlantedForestCert(RootedStarForest(g, tuple(kept)), S)
    bad = verify_planted(g, cert, theta, delta, lam)
    if bad:
        raise ExtractionFailed("planted forest failed verification", trace + [{"violations": bad}])
    return cert


def hole_from_paths(g: Graph, p1: tuple, p2: tuple) -> tuple:
    """First-attachment scan along ``p1`` into ``p2`` (both start at x).

    ``z`` is the first interior vertex of ``p1`` with a neighbour in
    ``p2 - x`` and ``w`` the first such neighbour along ``p2``; the cycle
    x - p1 - z - w - p2 - x is returned as a vertex sequence.
    """
    rest2 = p2[1:]
    for i in range(1, len(p1) - 1):
        z = p1[i]
        hits = [j for j, v in enumerate(rest2) if v in g.adj[z]]
        if hits:
            j = hits[0]
            return tuple(p1[: i + 1]) + tuple(reversed(rest2[: j + 1]))
    raise ValueError("no interior vertex of p1 attaches to p2")


def extract_long_hole(g: Graph, S, lam: int) -> tuple:
    """A hole of length at least ``lam + 3`` built from two x-y paths with
    anticomplete length-``lam`` prefixes at x."""
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    S = sorted(S)
    trace = []
    for x in S:
        for y in _partners(g, S, x):
            paths = _prefix_paths(g, x, y, lam)
            prefixes = [p[: lam + 1] for p in paths]
            pair = None
            for i in range(len(paths)):
                for j in range(i + 1, len(paths)):
                    if anticomplete(g, prefixes[i][1:], prefixes[j][1:]):
                        pair = (i, j)
                        break
                if pair:
                    break
            trace.append({"x": x, "y": y, "paths": len(paths), "pair": pair})
            if pair is None:
                continue
            cyc = hole_from_paths(g, paths[pair[0]], paths[pair[1]])
            if not is_hole(g, cyc) or len(cyc) < lam + 3:
                trace[-1]["rejected"] = list(cyc)
                continue
            return cyc
    raise ExtractionFailed("no two paths with anticomplete prefixes", trace)


def confirm_hole(g: Graph, cycle, lam: int) -> bool:
    """Re-check a returned hole and that the independent finder agrees one exists."""
    return is_hole(g, cycle) and len(cycle) >= lam + 3 and find_long_hole(g, lam + 2) is not None
