"""Connectifications: a rooted star forest plus a connector glued at its roots.

A sigma-connectification of ``(F, X)`` with respect to an ordering ``pi``
of ``X`` is a graph in which ``F`` is induced, ``F - X`` sees nothing
outside ``F``, and what remains after deleting ``F - X`` is an
``(X, |X|, sigma)``-connectifier of kind 1 to 4 whose widening or leaf
enumeration follows ``pi``.

This module builds them from scratch, recognizes them inside a host,
embeds one star forest into another by deleting and shortening stems,
and runs the constructive chain that finds one inside a large host.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .blocks import distance_refine, find_strong_block
from .budget import Budget, BudgetExhausted, ExtractionFailed
from .connectifier import ConnectifierCert, check_kind, extract_connectifier
from .generators import RootedStarForest, StarComponent, make_caterpillar, make_star_forest
from .graph import Graph, components, contract_sets, induced_subgraph, line_graph
from .pattern import is_t_clean
from .starforest import plant_star

CONNECT_KINDS = (1, 2, 3, 4)


@dataclass(frozen=True)
class ConnectificationCert:
    Xi: frozenset
    F_part: RootedStarForest
    X: frozenset
    pi: tuple
    H_cert: ConnectifierCert

    @property
    def H(self) -> frozenset:
        return self.Xi - (self.F_part.vertices - self.X)

    def as_dict(self) -> dict:
        return {
            "Xi": sorted(self.Xi),
            "forest": [{"root": c.root, "stems": [list(s) for s in c.stems]} for c in self.F_part.components],
            "X": sorted(self.X),
            "pi": list(self.pi),
            "connectifier": self.H_cert.as_dict(),
        }


def _rehost(g: Graph, F: RootedStarForest) -> RootedStarForest:
    return F if F.host == g else RootedStarForest(g, F.components)


def recognize_connectification(g: Graph, Xi, F_part: RootedStarForest, X, pi, sigma: int, kind=None):
    """Check the three clauses literally.

    Returns ``(True, None, H_cert)`` on success and ``(False, reason, None)``
    at the first failed clause.  ``kind`` restricts the connectifier check
    to one kind; otherwise any of kinds 1 to 4 is accepted.
    """
    Xi, X, pi = frozenset(Xi), frozenset(X), tuple(pi)
    for v in Xi:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    if len(X) < 2:
        return False, "|X| < 2", None
    if len(pi) != len(X) or set(pi) != X:
        return False, "pi is not an ordering of X", None
    F = _rehost(g, F_part)
    Fv = F.vertices
    if not X <= Fv:
        return False, "X is not inside F", None
    if not Fv <= Xi:
        return False, "F is not inside Xi", None
    bad = F.violations(induced=True)
    if bad:
        return False, "F is not an induced subgraph: " + bad[0], None
    inner = Fv - X
    rest = Xi - Fv
    for u in sorted(inner):
        hit = g.adj[u] & rest
        if hit:
            return False, f"F - X is not anticomplete to Xi - F: edge {u}-{min(hit)}", None
    H = Xi - inner
    kinds = CONNECT_KINDS if kind is None else (kind,)
    reasons = []
    for k in kinds:
        if k not in CONNECT_KINDS:
            return False, f"kind {k} is not allowed in a connectification", None
        res = check_kind(g, H, X, len(X), sigma, k, pi if k in (2, 3, 4) else None)
        if res:
            return True, None, res
        reasons.append(str(res))
    return False, "connectifier clause: " + "; ".join(reasons), None


def verify_connectification(g: Graph, cert: ConnectificationCert, sigma: int | None = None):
    """recognize_connectification on the fields of ``cert`` at its claimed kind."""
    s = cert.H_cert.sigma if sigma is None else sigma
    return recognize_connectification(g, cert.Xi, cert.F_part, cert.X, cert.pi, s, cert.H_cert.kind)


# ---------------------------------------------------------------- building

def _default_gaps(theta, sigma, gaps, kind=2):
    if gaps is None:
        # roots must stay pairwise non-adjacent; in a line graph the two end
        # leaf edges of a bare path need three spine edges between them
        low = 3 if kind == 4 and theta == 2 else 2
        return [max(sigma + 1, low)] * (theta - 1)
    gaps = list(gaps)
    if len(gaps) != theta - 1:
        raise ValueError(f"need {theta - 1} gaps, got {len(gaps)}")
    return gaps


def build_connectification(F: RootedStarForest, pi=None, kind: int = 2, sigma: int = 1,
                           gaps=None, legs=None, stems=None) -> tuple[Graph, ConnectificationCert]:
    """A fresh graph holding ``F`` and a kind-``kind`` connector on its roots.

    The vertices of ``F``'s host keep their ids; connector vertices follow.
    ``gaps`` are the spacings between consecutive roots along the path
    (kind 2) or along the caterpillar spine (kinds 3 and 4), default
    ``sigma + 1``; ``legs`` are the caterpillar leg lengths; ``stems`` the
    stem lengths of the kind-1 star, default ``sigma``.
    """
    if kind not in CONNECT_KINDS:
        raise ValueError("kind must be one of 1, 2, 3, 4")
    if sigma < 1:
        raise ValueError("sigma must be >= 1")
    roots = F.roots
    theta = len(roots)
    if theta < 2:
        raise ValueError("F needs at least two roots")
    pi = tuple(roots) if pi is None else tuple(pi)
    if sorted(pi) != sorted(roots):
        raise ValueError("pi must order the roots of F")
    base = F.host
    edges = list(base.edges())
    n = base.n

    def fresh(k):
        nonlocal n
        out = list(range(n, n + k))
        n += k
        return out

    if kind == 1:
        lengths = [sigma] * theta if stems is None else list(stems)
        if len(lengths) != theta or any(L < sigma for L in lengths):
            raise ValueError(f"need {theta} stem lengths >= sigma")
        (centre,) = fresh(1)
        for r, L in zip(pi, lengths):
            seq = [centre] + fresh(L - 1) + [r]
            edges.extend(zip(seq, seq[1:]))
    elif kind == 2:
        gaps = _default_gaps(theta, sigma, gaps)
        if any(gp < sigma for gp in gaps):
            raise ValueError("gaps must be >= sigma")
        for a, b, gp in zip(pi, pi[1:], gaps):
            seq = [a] + fresh(gp - 1) + [b]
            edges.extend(zip(seq, seq[1:]))
    else:
        gaps = _default_gaps(theta, sigma, gaps, kind)
        cat, roles = make_caterpillar(gaps, sigma, legs)
        if kind == 3:
            ident = dict(zip(roles.leaves, pi))
            new = fresh(cat.n - theta)
            it = iter(new)
            ids = [ident[v] if v in ident else next(it) for v in range(cat.n)]
            edges.extend((ids[a], ids[b]) for a, b in cat.edges())
        else:
            lg, ends = line_graph(cat)
            leaf_edge = {}
            for v, (a, b) in enumerate(ends):
                for l in (a, b):
                    if cat.degree(l) == 1:
                        leaf_edge[v] = l
            ident = {v: pi[roles.leaves.index(l)] for v, l in leaf_edge.items()}
            new = fresh(lg.n - theta)
            it = iter(new)
            ids = [ident[v] if v in ident else next(it) for v in range(lg.n)]
            edges.extend((ids[a], ids[b]) for a, b in lg.edges())
    g = Graph(n, edges)
    Fh = RootedStarForest(g, F.components)
    X = frozenset(roots)
    ok, why, hc = recognize_connectification(g, frozenset(range(n)), Fh, X, pi, sigma, kind)
    if not ok:
        raise ValueError(f"inconsistent parameters: {why}")
    return g, ConnectificationCert(frozenset(range(n)), Fh, X, pi, hc)


# ---------------------------------------------------------------- embedding star forests

@dataclass(frozen=True)
class EmbedWitness:
    root_map: dict  # root of F2 -> root of F1
    kept: dict  # root of F1 -> list of (stem index in F1, kept length)
    deleted: dict  # root of F1 -> stem indices deleted
    vertex_map: dict  # vertex of F2's host -> vertex of F1's host


def _fits(c2: StarComponent, c1: StarComponent, truncate: bool):
    """Assign each stem of c2 to a distinct stem of c1 it fits in, longest first."""
    want = sorted(range(len(c2.stems)), key=lambda i: -len(c2.stems[i]))
    have = sorted(range(len(c1.stems)), key=lambda j: -len(c1.stems[j]))
    if len(want) > len(have):
        return None
    if truncate:
        pairs = list(zip(want, have))
        if any(len(c2.stems[i]) > len(c1.stems[j]) for i, j in pairs):
            return None
        return pairs
    free = list(have)
    pairs = []
    for i in want:
        j = next((j for j in free if len(c1.stems[j]) == len(c2.stems[i])), None)
        if j is None:
            return None
        free.remove(j)
        pairs.append((i, j))
    return pairs


def embed_forest(F1: RootedStarForest, F2: RootedStarForest, root_map=None, truncate: bool = True) -> EmbedWitness | None:
    """Delete (and, with ``truncate``, shorten at the leaf end) stems of
    ``F1`` to obtain a copy of ``F2``.

    Component matching is searched by augmenting paths unless ``root_map``
    (root of F2 -> root of F1) is given.  Shortening keeps the root end of
    each stem, so roots stay attached.  None when no copy exists.
    """
    c1 = {c.root: c for c in F1.components}
    c2 = {c.root: c for c in F2.components}
    if root_map is None:
        ok = {r2: [r1 for r1 in sorted(c1) if _fits(c2[r2], c1[r1], truncate) is not None] for r2 in sorted(c2)}
        match = {}

        def augment(r2, seen):
            for r1 in ok[r2]:
                if r1 in seen:
                    continue
                seen.add(r1)
                if r1 not in match or augment(match[r1], seen):
                    match[r1] = r2
                    return True
            return False

        for r2 in sorted(c2):
            if not augment(r2, set()):
                return None
        root_map = {r2: r1 for r1, r2 in match.items()}
    else:
        root_map = dict(root_map)
        if sorted(root_map) != sorted(c2) or len(set(root_map.values())) != len(root_map):
            raise ValueError("root_map must send the roots of F2 injectively into F1")
    kept, deleted, vmap = {}, {}, {}
    for r2, r1 in root_map.items():
        if r1 not in c1:
            raise ValueError(f"{r1} is not a root of F1")
        pairs = _fits(c2[r2], c1[r1], truncate)
        if pairs is None:
            return None
        vmap[r2] = r1
        kept[r1] = []
        for i, j in pairs:
            s2, s1 = c2[r2].stems[i], c1[r1].stems[j]
            off = len(s1) - len(s2)
            for a, v in enumerate(s2):
                vmap[v] = s1[off + a]
            kept[r1].append((j, len(s2) - 1))
        used = {j for j, _ in kept[r1]}
        deleted[r1] = [j for j in range(len(c1[r1].stems)) if j not in used]
    return EmbedWitness(root_map, kept, deleted, vmap)


def apply_embedding(F1: RootedStarForest, w: EmbedWitness) -> RootedStarForest:
    """The copy of F2 inside F1's host that ``w`` describes."""
    comps = []
    for r1 in sorted(w.kept):
        c = F1.component_of(r1)
        stems = []
        for j, L in w.kept[r1]:
            s = c.stems[j]
            stems.append(tuple(s[len(s) - 1 - L:]))
        comps.append(StarComponent(r1, tuple(stems)))
    return RootedStarForest(F1.host, tuple(comps))


def _single(F: RootedStarForest, root) -> RootedStarForest:
    return RootedStarForest(F.host, (F.component_of(root),))


def reduce_via_uniform(F: RootedStarForest, pi=None, kind: int = 2, sigma: int = 1, slack=(3, 1), **shape):
    """Connectification of ``(F, R(F))`` cut out of one over a uniform forest.

    Builds a connectification over ``F+ = theta S_{delta+a, lambda+b}``
    (``slack = (a, b)``), then trims each component of ``F+`` to a copy of
    the matching component of ``F`` by deleting and shortening stems.
    Returns ``(host, cert, vertex_map)``; ``vertex_map`` sends F's vertices
    into the host, so that ``cert.pi`` is the image of ``pi``.
    """
    theta = F.size
    pi = tuple(F.roots) if pi is None else tuple(pi)
    if sorted(pi) != sorted(F.roots):
        raise ValueError("pi must order the roots of F")
    a, b = slack
    Fp = make_star_forest(theta, F.max_degree + a, F.reach + b)
    pi_plus = tuple(Fp.roots)
    g, big = build_connectification(Fp, pi_plus, kind, sigma, **shape)
    Fp = big.F_part
    comps, vmap = [], {}
    for x, y in zip(pi, pi_plus):
        w = embed_forest(_single(Fp, y), _single(F, x), {x: y})
        if w is None:
            raise ValueError(f"component at {x} does not embed in the uniform component at {y}")
        comps.extend(apply_embedding(Fp, w).components)
        vmap.update(w.vertex_map)
    copy = RootedStarForest(g, tuple(comps))
    Xi = (big.Xi - Fp.vertices) | copy.vertices
    X = frozenset(pi_plus)
    ok, why, hc = recognize_connectification(g, Xi, copy, X, pi_plus, sigma, kind)
    if not ok:
        raise ValueError(f"reduction failed: {why}")
    return g, ConnectificationCert(frozenset(Xi), copy, X, pi_plus, hc), vmap


# ---------------------------------------------------------------- pipeline

@dataclass
class PipelineKnobs:
    """Desk-scale stand-ins for the constants of the existence proof."""

    extra_stems: int = 0  # planted stars get delta + extra_stems stems
    max_extra: int = 3  # on a failed prune, retry with more extra stems up to this
    gamma1: int | None = None  # eta of the first connectifier (default |roots|)
    max_roots: int = 12  # stop planting after this many stars
    block_k: int | None = None  # order of the strong block searched for
    clean_budget: int | None = 200_000
    search_budget: int | None = 2_000_000
    star_budget: int = 20_000


def _grow_star(g: Graph, x: int, delta: int, lam: int, forbid: set, budget: Budget) -> StarComponent | None:
    """Backtracking search for an induced S_{delta,lam} rooted at ``x``."""
    if delta == 0:
        return StarComponent(x, ())
    chosen = []
    body = set()

    def stems_from(path):
        budget.tick()
        if len(path) == lam + 1:
            yield tuple(path)
            return
        u = path[-1]
        for w in sorted(g.adj[u]):
            if w in forbid or w in path or w in body:
                continue
            if len(path) >= 2 and w in g.adj[x]:
                continue
            if any(w in g.adj[p] for p in path[:-1] if p != x) or any(w in g.adj[b] for b in body):
                continue
            yield from stems_from(path + [w])

    def rec():
        if len(chosen) == delta:
            return True
        low = chosen[-1][1] if chosen else -1
        for w in sorted(g.adj[x]):
            if w <= low or w in forbid or w in body or any(w in g.adj[b] for b in body):
                continue
            for p in itertools.islice(stems_from([x, w]), 50):
                chosen.append(p)
                body.update(p[1:])
                if rec():
                    return True
                chosen.pop()
                body.difference_update(p[1:])
        return False

    if not rec():
        return None
    return StarComponent(x, tuple(tuple(reversed(p)) for p in chosen))


def _plant(g: Graph, S: list, delta: int, lam: int, knobs: PipelineKnobs, trace: list) -> list:
    """Disjoint, pairwise anticomplete induced stars at members of S."""
    stars, used, near = [], set(), set()
    for x in S:
        if len(stars) >= knobs.max_roots:
            break
        if x in used or x in near:
            continue
        star = None
        try:
            star = plant_star(g, S, x, delta, lam)
            if star.vertices & (used | near):
                star = None
        except (ExtractionFailed, ValueError):
            star = None
        how = "paths to a partner"
        if star is None:
            how = "local search"
            try:
                star = _grow_star(g, x, delta, lam, used | near, Budget(knobs.star_budget))
            except BudgetExhausted:
                star = None
        if star is None:
            continue
        stars.append(star)
        verts = star.vertices
        used |= verts
        for v in verts:
            near |= g.adj[v]
        trace.append({"step": "plant", "root": x, "how": how})
    return stars


def _fail(step: str, msg: str, trace: list):
    trace.append({"step": step, "failed": msg})
    raise ExtractionFailed(f"{step}: {msg}", trace)


def pipeline(g: Graph, t: int, F: RootedStarForest, sigma: int = 1, pi=None, knobs: PipelineKnobs | None = None) -> ConnectificationCert:
    """Find a sigma-connectification of ``(F, R(F))`` in ``g``.

    Runs :func:`pipeline_once`; when stars run out of clean stems, retries
    with more extra stems per star (up to ``knobs.max_extra``).  The trace
    of every attempt is kept.
    """
    knobs = knobs or PipelineKnobs()
    trace = []
    first = None
    for extra in range(knobs.extra_stems, max(knobs.extra_stems, knobs.max_extra) + 1):
        k = PipelineKnobs(**{**knobs.__dict__, "extra_stems": extra})
        try:
            return pipeline_once(g, t, F, sigma, pi, k)
        except ExtractionFailed as e:
            trace.append({"extra_stems": extra, "trace": e.trace})
            first = first or e
            if not str(e).startswith(("prune", "plant", "degree2t")):
                break
    raise ExtractionFailed(str(first), trace)


def pipeline_once(g: Graph, t: int, F: RootedStarForest, sigma: int = 1, pi=None, knobs: PipelineKnobs | None = None) -> ConnectificationCert:
    """Find a sigma-connectification of ``(F, R(F))`` in ``g``.

    Steps: cleanness check; a strong block refined to a spread-out root
    set (falling back to high-degree vertices); planted stars with extra
    stems; removal of vertices seeing 2t or more forest vertices;
    contraction of each star to its root and a first connectifier on the
    roots; undoing the contraction; pruning each star to stems that see
    nothing else; a kind 1-4 connectifier on the surviving roots; trimming
    the stars to the components of ``F``; and a final independent check.
    ``ExtractionFailed.trace`` names the first step that could not be done.
    """
    knobs = knobs or PipelineKnobs()
    trace = []
    theta = F.size
    if theta < 2:
        raise ValueError("F needs at least two components")
    pi = tuple(F.roots) if pi is None else tuple(pi)
    delta, lam = max(F.max_degree, 1), max(F.reach, 1)

    rep = is_t_clean(g, t, knobs.clean_budget)
    trace.append({"step": "clean", "result": {True: "clean", False: rep.kind, None: "unknown"}[rep.clean]})
    if rep.clean is False:
        _fail("clean", f"g contains a {t}-basic obstruction ({rep.kind})", trace)

    D = delta + knobs.extra_stems
    alive = set(g.vertices())
    S = None
    k = knobs.block_k or max(theta, 2)
    try:
        blk = find_strong_block(g, k, Budget(knobs.search_budget), size=max(k, theta))
    except BudgetExhausted:
        blk = None
    if blk is not None:
        d = max(2 * sigma - 1, 2 * lam + 1)
        try:
            ref = distance_refine(g, blk.B, len(blk.B), d, theta, blk)
            alive -= ref.A
            S = sorted(ref.S)
            trace.append({"step": "block", "B": sorted(blk.B), "A": sorted(ref.A), "S": S})
        except ExtractionFailed as e:
            trace.append({"step": "block", "B": sorted(blk.B), "refine": str(e)})
    if S is None:
        S = sorted((v for v in alive if g.degree(v) >= D), key=lambda v: (-g.degree(v), v))
        trace.append({"step": "block", "fallback": "vertices of degree >= delta", "count": len(S)})

    g0, ids0 = induced_subgraph(g, alive)
    pos0 = {v: i for i, v in enumerate(ids0)}
    stars0 = _plant(g0, [pos0[v] for v in S if v in pos0], D, lam, knobs, trace)
    stars = [StarComponent(ids0[c.root], tuple(tuple(ids0[v] for v in s) for s in c.stems)) for c in stars0]
    if len(stars) < theta:
        _fail("plant", f"planted {len(stars)} stars, need {theta}", trace)

    Fv = set().union(*(c.vertices for c in stars))
    W = {v for v in alive - Fv if len(g.adj[v] & Fv) >= 2 * t}
    alive -= W
    trace.append({"step": "W", "removed": sorted(W)})

    g1, ids1 = induced_subgraph(g, alive)
    pos1 = {v: i for i, v in enumerate(ids1)}
    parts = [[pos1[v] for v in c.vertices] for c in stars]
    g2, groups = contract_sets(g1, parts)
    roots2 = list(range(len(stars)))
    comp = max(components(g2), key=lambda C: (len(set(C) & set(roots2)), -min(C)))
    S2 = [r for r in roots2 if r in set(comp)]
    if len(S2) < theta:
        _fail("contract", f"only {len(S2)} roots in one component after contraction", trace)
    h2, ids2 = induced_subgraph(g2, comp)
    pos2 = {v: i for i, v in enumerate(ids2)}
    eta1 = min(len(S2), knobs.gamma1 or len(S2))
    eta1 = max(eta1, theta)
    try:
        H2 = extract_connectifier(h2, [pos2[r] for r in S2], eta1, 1, knobs.search_budget)
    except (ExtractionFailed, BudgetExhausted) as e:
        _fail("first-connectifier", str(e), trace)
    H2g = [ids2[v] for v in H2.H]
    Sp = [v for v in H2g if v < len(stars)]
    trace.append({"step": "first-connectifier", "kind": H2.kind, "roots": len(Sp)})

    H1 = set()
    for v in H2g:
        H1 |= {ids1[u] for u in groups[v]}
    by_root = {stars[i].root: stars[i] for i in Sp}
    bound = 2 * t * eta1
    for x, c in by_root.items():
        outside = H1 - c.vertices
        boundary = {u for u in c.vertices if g.adj[u] & outside}
        if len(boundary) >= bound:
            _fail("degree2t", f"star at {x} has {len(boundary)} boundary vertices >= {bound}", trace)

    pruned = {}
    for x, c in by_root.items():
        outside = H1 - c.vertices
        good = [s for s in c.stems if not any(g.adj[u] & outside for u in s[:-1])]
        if len(good) >= delta:
            pruned[x] = StarComponent(x, tuple(good[:delta]))
    trace.append({"step": "prune", "kept": sorted(pruned), "dropped": sorted(set(by_root) - set(pruned))})
    if len(pruned) < theta:
        _fail("prune", f"{len(pruned)} stars keep {delta} clean stems, need {theta}", trace)
    H1p = set(H1)
    for x, c in pruned.items():
        H1p -= c.vertices - {x}
    roots1 = set(pruned)
    h1p, ids1p = induced_subgraph(g, H1p)
    pos1p = {v: i for i, v in enumerate(ids1p)}
    comp = max(components(h1p), key=lambda C: len({ids1p[v] for v in C} & roots1))
    inner_roots = [pos1p[x] for x in sorted(roots1) if pos1p[x] in set(comp)]
    if len(inner_roots) < theta:
        _fail("connectifier", f"only {len(inner_roots)} pruned roots in one component", trace)
    sub, ids_s = induced_subgraph(h1p, comp)
    pos_s = {v: i for i, v in enumerate(ids_s)}
    try:
        Hc = extract_connectifier(sub, [pos_s[r] for r in inner_roots], theta, sigma, knobs.search_budget)
    except (ExtractionFailed, BudgetExhausted) as e:
        _fail("connectifier", str(e), trace)
    if Hc.kind == 0:
        _fail("connectifier", "kind 0 connectifier found: g holds a large clique", trace)
    back = lambda v: ids1p[ids_s[v]]
    H = {back(v) for v in Hc.H}
    hits = tuple(back(v) for v in Hc.s_hits)
    trace.append({"step": "connectifier", "kind": Hc.kind})

    order = hits
    if Hc.kind == 1:
        order = tuple(sorted(hits))
    comps = []
    for x, y in zip(pi, order):
        w = embed_forest(RootedStarForest(g, (pruned[y],)), _single(F, x), {x: y})
        if w is None:
            _fail("trim", f"component at {x} does not fit the star at {y}", trace)
        comps.extend(apply_embedding(RootedStarForest(g, (pruned[y],)), w).components)
    Fc = RootedStarForest(g, tuple(comps))
    Xi = frozenset(H | Fc.vertices)
    ok, why, hc = recognize_connectification(g, Xi, Fc, frozenset(order), order, sigma)
    if not ok:
        _fail("verify", why, trace)
    trace.append({"step": "verify", "kind": hc.kind})
    return ConnectificationCert(Xi, Fc, frozenset(order), order, hc)
