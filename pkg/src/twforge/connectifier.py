"""Connectifiers: recognition of the five shapes, bloated trees, extraction.

A connectifier is a connected induced subgraph ``H`` meeting a terminal set
``S`` in exactly ``eta`` vertices, of one of five shapes:

    0  line graph of a subdivided star, loosely tied (Z(H) = H & S)
    1  rooted subdivided star, tied, only the root may be an inner S-vertex
    2  tied path whose S-vertices form a sigma-widening
    3  loosely tied sigma-caterpillar
    4  loosely tied line graph of a sigma-caterpillar

Every constructive routine in this module hands its output to
:func:`recognize_connectifier`; nothing is returned unverified.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .budget import Budget, ExtractionFailed
from .graph import (
    Graph,
    components,
    induced_subgraph,
    is_clique,
    is_connected,
    maximal_cliques,
    simplicial_set,
    suppress_bumps,
)

KINDS = (0, 1, 2, 3, 4)


@dataclass(frozen=True)
class ConnectifierCert:
    kind: int
    H: frozenset
    s_hits: tuple  # ordered: widening / enumeration order where it matters
    eta: int
    sigma: int
    witness: dict = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "H": sorted(self.H),
            "s_hits": list(self.s_hits),
            "eta": self.eta,
            "sigma": self.sigma,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class Rejection:
    """Why ``H`` is not a connectifier: the first failed clause per kind."""

    reasons: dict

    def __bool__(self):
        return False

    def __str__(self):
        return "; ".join(f"type {k}: {r}" for k, r in sorted(self.reasons.items()))


class _Fail(Exception):
    pass


# ---------------------------------------------------------------- tree helpers

def _is_tree(h: Graph) -> bool:
    return h.n >= 1 and h.m == h.n - 1 and is_connected(h)


def _tree_path(t: Graph, a: int, b: int) -> tuple:
    parent = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in sorted(t.adj[u]):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    out = [b]
    while out[-1] != a:
        out.append(parent[out[-1]])
    return tuple(reversed(out))


def _leaves(t: Graph) -> list:
    return [v for v in t.vertices() if t.degree(v) == 1]


def _line_root(h: Graph):
    """Invert ``h = L(C)`` for a tree ``C``.

    Returns ``(C, ends)`` where ``ends[v]`` is the edge of ``C`` standing for
    vertex ``v`` of ``h``, or None when ``h`` is not the line graph of a tree.
    The inversion is checked by rebuilding the line graph.
    """
    if h.n == 0 or not is_connected(h):
        return None
    if h.n == 1:
        return Graph(2, [(0, 1)]), [(0, 1)]
    cliques = maximal_cliques(h)
    member = [[] for _ in range(h.n)]
    for i, K in enumerate(cliques):
        for v in K:
            member[v].append(i)
    if any(len(m) > 2 for m in member):
        return None
    n = len(cliques)
    ends = []
    for v in range(h.n):
        if len(member[v]) == 1:
            ends.append((member[v][0], n))
            n += 1
        else:
            ends.append(tuple(member[v]))
    if len({frozenset(e) for e in ends}) != h.n:
        return None
    c = Graph(n, ends)
    if not _is_tree(c):
        return None
    for u in range(h.n):
        for v in range(u + 1, h.n):
            if bool(set(ends[u]) & set(ends[v])) != h.has_edge(u, v):
                return None
    return c, ends


def _attach(c: Graph, leaf: int) -> int:
    """The branch vertex reached first when walking in from ``leaf``."""
    prev, cur = None, leaf
    while c.degree(cur) < 3:
        nxt = [w for w in c.adj[cur] if w != prev]
        if not nxt:
            return cur
        prev, cur = cur, nxt[0]
    return cur


def _wide_problem(c: Graph, enum: tuple, sigma: int) -> str | None:
    """None if ``enum`` (leaves of caterpillar ``c``) is sigma-wide."""
    theta = len(enum)
    leaves = set(_leaves(c))
    if set(enum) != leaves or len(enum) != len(leaves):
        return "enumeration is not the leaf set"
    spine = _tree_path(c, enum[0], enum[-1])
    branch = {v for v in c.vertices() if c.degree(v) >= 3}
    if not branch <= set(spine):
        return "branch vertices are not on the spine between the end leaves"
    if theta == 2:
        return None if len(spine) - 1 >= sigma else f"path length {len(spine) - 1} < sigma={sigma}"
    pos = {v: i for i, v in enumerate(spine)}
    marks = [0]
    for l in enum[1:-1]:
        if l in pos:
            return f"leaf {l} lies on the spine"
        marks.append(pos[_attach(c, l)])
    marks.append(len(spine) - 1)
    for a, b in zip(marks, marks[1:]):
        if b - a < sigma:
            return f"gap {b - a} < sigma={sigma} along the spine"
    return None


def _caterpillar_enum(c: Graph, sigma: int, want=None):
    """A sigma-wide leaf enumeration of ``c`` (checking ``want`` if given)."""
    if not _is_tree(c):
        raise _Fail("not a tree")
    if c.max_degree() > 3:
        raise _Fail("a vertex has degree > 3")
    leaves = _leaves(c)
    if len(leaves) < 2:
        raise _Fail("fewer than two leaves")
    if want is not None:
        why = _wide_problem(c, tuple(want), sigma)
        if why:
            raise _Fail(why)
        return tuple(want)
    branch = {v for v in c.vertices() if c.degree(v) >= 3}
    last = "branch vertices do not lie on one path"
    for a, b in itertools.combinations(sorted(leaves), 2):
        spine = _tree_path(c, a, b)
        if not branch <= set(spine):
            continue
        pos = {v: i for i, v in enumerate(spine)}
        middle = sorted((l for l in leaves if l not in (a, b)), key=lambda l: pos[_attach(c, l)])
        enum = (a, *middle, b)
        why = _wide_problem(c, enum, sigma)
        if why is None:
            return enum
        last = why
    raise _Fail(last)


# ---------------------------------------------------------------- kind checks
# Each check works on h = g[H] in local ids and returns (s_hits, witness)
# in local ids; the caller maps them back.

def _kind0(h, Sl, eta, sigma, order):
    inv = _line_root(h)
    if inv is None:
        raise _Fail("not the line graph of a tree")
    c, ends = inv
    Z = simplicial_set(h)
    if Z != Sl:
        raise _Fail("not loosely tied: simplicial vertices differ from H & S")
    if len(Sl) != eta:
        raise _Fail(f"|H & S| = {len(Sl)} != eta={eta}")
    branch = [v for v in c.vertices() if c.degree(v) >= 3]
    if len(branch) > 1:
        raise _Fail("pre-image has two branch vertices")
    leaves = _leaves(c)
    if branch:
        root = branch[0]
    else:
        spine = _tree_path(c, leaves[0], leaves[1])
        if len(spine) - 1 < 2 * sigma:
            raise _Fail(f"pre-image path too short for two stems of length >= sigma={sigma}")
        root = spine[(len(spine) - 1) // 2]
    edge_at = {frozenset(e): v for v, e in enumerate(ends)}
    stems = []
    for l in leaves:
        p = _tree_path(c, root, l)
        if len(p) - 1 < sigma:
            raise _Fail(f"stem to pre-image leaf {l} has length {len(p) - 1} < sigma={sigma}")
        stems.append(tuple(edge_at[frozenset(e)] for e in zip(p, p[1:])))
    hits = tuple(sorted(Sl))
    return hits, {"stems": stems, "preimage": {"n": c.n, "edges": [list(e) for e in ends]},
                  "preimage_of": tuple(range(h.n))}


def _kind1(h, Sl, eta, sigma, order):
    if not _is_tree(h):
        raise _Fail("not a tree")
    leaves = set(_leaves(h))
    if not leaves <= Sl:
        raise _Fail("not tied: a leaf is outside S")
    if len(Sl) != eta:
        raise _Fail(f"|H & S| = {len(Sl)} != eta={eta}")
    branch = [v for v in h.vertices() if h.degree(v) >= 3]
    if len(branch) > 1:
        raise _Fail("not a subdivided star: two branch vertices")
    inner_hits = Sl - leaves
    if branch:
        root = branch[0]
    else:
        if h.n < 3:
            raise _Fail("path too short for an inner root")
        a, b = sorted(leaves)
        spine = _tree_path(h, a, b)
        if len(inner_hits) > 1:
            raise _Fail("two inner S-vertices on a path")
        if inner_hits:
            root = next(iter(inner_hits))
        else:
            root = spine[(len(spine) - 1) // 2]
    if not inner_hits <= {root}:
        raise _Fail("an S-vertex other than the root is not a leaf")
    stems = []
    for l in sorted(leaves):
        p = _tree_path(h, l, root)
        if len(p) - 1 < sigma:
            raise _Fail(f"stem from {l} has length {len(p) - 1} < sigma={sigma}")
        stems.append(p)
    hits = tuple(sorted(Sl))
    return hits, {"root": root, "stems": stems}


def _kind2(h, Sl, eta, sigma, order):
    if not _is_tree(h) or h.max_degree() > 2 or h.n < 2:
        raise _Fail("not a path on at least two vertices")
    a, b = _leaves(h)
    if a not in Sl or b not in Sl:
        raise _Fail("not tied: an end is outside S")
    if len(Sl) != eta:
        raise _Fail(f"|H & S| = {len(Sl)} != eta={eta}")
    path = _tree_path(h, a, b)
    hits = tuple(v for v in path if v in Sl)
    if order is not None:
        order = tuple(order)
        if order == tuple(reversed(hits)):
            path, hits = tuple(reversed(path)), order
        elif order != hits:
            raise _Fail("S-vertices do not appear along the path in the given order")
    pos = {v: i for i, v in enumerate(path)}
    for x, y in zip(hits, hits[1:]):
        if pos[y] - pos[x] < sigma:
            raise _Fail(f"widening gap {pos[y] - pos[x]} < sigma={sigma}")
    return hits, {"path": path}


def _kind3(h, Sl, eta, sigma, order):
    if not _is_tree(h):
        raise _Fail("not a tree")
    leaves = set(_leaves(h))
    if leaves != Sl:
        raise _Fail("not loosely tied: leaves differ from H & S")
    if len(Sl) != eta:
        raise _Fail(f"|H & S| = {len(Sl)} != eta={eta}")
    enum = _caterpillar_enum(h, sigma, order)
    return enum, {"enumeration": enum, "spine": _tree_path(h, enum[0], enum[-1])}


def _kind4(h, Sl, eta, sigma, order):
    inv = _line_root(h)
    if inv is None:
        raise _Fail("not the line graph of a tree")
    c, ends = inv
    if simplicial_set(h) != Sl:
        raise _Fail("not loosely tied: simplicial vertices differ from H & S")
    if len(Sl) != eta:
        raise _Fail(f"|H & S| = {len(Sl)} != eta={eta}")
    leaf_of = {}
    for v, (x, y) in enumerate(ends):
        if c.degree(x) == 1:
            leaf_of[v] = x
        elif c.degree(y) == 1:
            leaf_of[v] = y
    if set(leaf_of) != Sl:
        raise _Fail("simplicial vertices are not the leaf edges of the pre-image")
    back = {l: v for v, l in leaf_of.items()}
    want = None if order is None else tuple(leaf_of[v] for v in order)
    enum = _caterpillar_enum(c, sigma, want)
    hits = tuple(back[l] for l in enum)
    return hits, {"enumeration": hits, "preimage": {"n": c.n, "edges": [list(e) for e in ends]},
                  "preimage_of": tuple(range(h.n))}


_CHECKS = {0: _kind0, 1: _kind1, 2: _kind2, 3: _kind3, 4: _kind4}


def _localize(g: Graph, H, S):
    H = frozenset(H)
    if not H:
        raise _Fail("H is empty")
    for v in H:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    h, ids = induced_subgraph(g, H)
    if not is_connected(h):
        raise _Fail("H is not connected")
    pos = {v: i for i, v in enumerate(ids)}
    Sl = frozenset(pos[v] for v in S if v in pos)
    return h, ids, pos, Sl


def _globalize(obj, ids):
    if isinstance(obj, dict):
        return {k: (obj[k] if k == "preimage" else _globalize(obj[k], ids)) for k in obj}
    if isinstance(obj, (list, tuple)):
        return type(obj)(_globalize(x, ids) for x in obj)
    return ids[obj]


def check_kind(g: Graph, H, S, eta: int, sigma: int, kind: int, order=None):
    """Certificate if ``H`` is a connectifier of the given kind, else Rejection.

    ``order`` optionally fixes the widening order (kind 2) or the leaf
    enumeration (kinds 3, 4) that must be sigma-wide; it lists host vertices.
    """
    if kind not in _CHECKS:
        raise ValueError(f"unknown connectifier kind {kind}")
    S = frozenset(S)
    try:
        if eta < 2 or sigma < 1:
            raise _Fail("need eta >= 2 and sigma >= 1")
        h, ids, pos, Sl = _localize(g, H, S)
        local_order = None
        if order is not None:
            if any(v not in pos for v in order):
                raise _Fail("order names vertices outside H")
            local_order = [pos[v] for v in order]
        hits, wit = _CHECKS[kind](h, Sl, eta, sigma, local_order)
    except _Fail as e:
        return Rejection({kind: str(e)})
    return ConnectifierCert(kind, frozenset(H), tuple(ids[v] for v in hits), eta, sigma, _globalize(wit, ids))


def recognize_connectifier(g: Graph, H, S, eta: int, sigma: int = 1, kinds=KINDS):
    """Match ``H`` against the five shapes.

    The smallest matching kind wins, except that a path matching kind 2 is
    reported as kind 2 (paths also fit kinds 0, 1 and 3 in degenerate ways).
    """
    S = frozenset(S)
    order = list(kinds)
    try:
        h, _, _, _ = _localize(g, H, S)
        if 2 in order and _is_tree(h) and h.max_degree() <= 2:
            order.remove(2)
            order.insert(0, 2)
    except _Fail:
        pass
    reasons = {}
    for k in order:
        res = check_kind(g, H, S, eta, sigma, k)
        if res:
            return res
        reasons.update(res.reasons)
    return Rejection(reasons)


def verify_connectifier(g: Graph, cert: ConnectifierCert, S) -> list[str]:
    """Independent re-check of a certificate against the host."""
    out = []
    order = cert.s_hits if cert.kind in (2, 3, 4) else None
    res = check_kind(g, cert.H, S, cert.eta, cert.sigma, cert.kind, order)
    if not res:
        out.append(str(res))
        return out
    if set(res.s_hits) != set(cert.s_hits):
        out.append("claimed S-hits differ from H & S")
    h, ids = induced_subgraph(g, cert.H)
    pos = {v: i for i, v in enumerate(ids)}
    for v in cert.s_hits:
        if h.degree(pos[v]) > cert.eta:
            out.append(f"S-vertex {v} has degree {h.degree(pos[v])} > eta in H")
    return out


# ---------------------------------------------------------------- bloated trees

@dataclass(frozen=True)
class BloatedTreeCert:
    J: frozenset
    big_cliques: tuple


@dataclass(frozen=True)
class BloatedViolation:
    clause: str  # edge-in-two-cliques | outside-neighbours | not-a-tree | cycle-not-clique
    detail: dict

    def __bool__(self):
        return False


def _cycles_upto(g: Graph, J, cap: int):
    """Vertex sets of cycles of ``g[J]`` with at most ``cap`` vertices."""
    J = sorted(J)
    inside = set(J)
    for s in J:
        path = [s]
        on = {s}

        def rec():
            tip = path[-1]
            for w in sorted(g.adj[tip]):
                if w not in inside or w < s:
                    continue
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
                if w in on or len(path) >= cap:
                    continue
                on.add(w)
                path.append(w)
                yield from rec()
                path.pop()
                on.discard(w)

        yield from rec()


def verify_bloated_tree(g: Graph, J, cycle_cap: int = 7):
    """Check the three bloated-tree conditions on ``g[J]``.

    Also cross-checks, on every cycle of at most ``cycle_cap`` vertices, that
    its vertex set is a clique; a bloated tree always passes this check.
    """
    J = frozenset(J)
    if not J or not is_connected(g, J):
        raise ValueError("g[J] must be non-empty and connected")
    big = [frozenset(K) for K in maximal_cliques(g, J) if len(K) >= 3]
    seen = {}
    for K in big:
        for u, v in itertools.combinations(sorted(K), 2):
            if (u, v) in seen:
                return BloatedViolation("edge-in-two-cliques", {"edge": [u, v]})
            seen[(u, v)] = K
    for K in big:
        for v in sorted(K):
            out = (g.adj[v] & J) - K
            if len(out) > 1:
                return BloatedViolation("outside-neighbours", {"clique": sorted(K), "vertex": v, "outside": sorted(out)})
    in_clique = {v for K in big for v in K}
    nodes = len(big) + len(J - in_clique)
    loose = sum(1 for u in J for v in g.adj[u] if v in J and u < v and (u, v) not in seen)
    if loose != nodes - 1:
        return BloatedViolation("not-a-tree", {"nodes": nodes, "edges": loose})
    for cyc in _cycles_upto(g, J, cycle_cap):
        if not is_clique(g, cyc):
            return BloatedViolation("cycle-not-clique", {"cycle": list(cyc)})
    return BloatedTreeCert(J, tuple(sorted(big, key=sorted)))


def _is_bloated(g: Graph, J) -> bool:
    return bool(verify_bloated_tree(g, J, cycle_cap=0))


def _grow_induced_tree(g: Graph, start: int, S: frozenset, budget: Budget) -> set:
    """Greedy induced tree from ``start`` collecting S-vertices by shortest
    attachments that keep the tree induced."""
    T = {start}
    while True:
        budget.tick()
        # multi-source BFS: first step from T must see exactly one T-vertex,
        # later steps must see none
        parent = {}
        queue = deque()
        for v in sorted(set().union(*(g.adj[u] for u in T)) - T):
            if len(g.adj[v] & T) == 1:
                parent[v] = None
                queue.append(v)
        goal = None
        while queue:
            u = queue.popleft()
            if u in S:
                goal = u
                break
            for w in sorted(g.adj[u]):
                if w in parent or w in T or g.adj[w] & T:
                    continue
                parent[w] = u
                queue.append(w)
        if goal is None:
            return T
        while goal is not None:
            T.add(goal)
            goal = parent[goal]


def _best_bloated(g: Graph, S: frozenset, budget: Budget, want: int) -> frozenset:
    best = frozenset()
    for s in sorted(S):
        T = frozenset(_grow_induced_tree(g, s, S, budget))
        if len(T & S) > len(best & S):
            best = T
        if len(best & S) >= want:
            return best
    # clique-aware extension: try adding whole shortest paths that keep it bloated
    J = set(best)
    improved = True
    while improved and len(J & S) < want:
        improved = False
        for s in sorted(S - J):
            budget.tick()
            for u in sorted(set().union(*(g.adj[x] for x in J)) - J):
                p = _bfs_path(g, u, {s}, forbid=J)
                if p is None:
                    continue
                cand = J | set(p)
                if _is_bloated(g, cand):
                    J = cand
                    improved = True
                    break
            if len(J & S) >= want:
                break
    return frozenset(J)


def _bfs_path(g: Graph, src, targets, forbid=frozenset(), allowed=None):
    """Shortest path from ``src`` (vertex or set) to a target avoiding ``forbid``."""
    srcs = [src] if isinstance(src, int) else sorted(src)
    parent = {s: None for s in srcs if s not in forbid}
    queue = deque(parent)
    while queue:
        u = queue.popleft()
        if u in targets:
            out = [u]
            while parent[out[-1]] is not None:
                out.append(parent[out[-1]])
            return tuple(reversed(out))
        for w in sorted(g.adj[u]):
            if w in parent or w in forbid or (allowed is not None and w not in allowed):
                continue
            parent[w] = u
            queue.append(w)
    return None


def _exhaustive_bloated(g: Graph, S: frozenset, want: int, budget: Budget) -> frozenset:
    """Largest-hit bloated tree by enumerating connected bloated sets."""
    best = frozenset()
    seen = set()
    stack = [frozenset([v]) for v in sorted(g.vertices(), reverse=True)]
    while stack:
        X = stack.pop()
        if X in seen:
            continue
        seen.add(X)
        budget.tick()
        if len(X & S) > len(best & S):
            best = X
            if len(best & S) >= want:
                return best
        for v in sorted(set().union(*(g.adj[x] for x in X)) - X, reverse=True):
            Y = X | {v}
            if Y not in seen and _is_bloated(g, Y):
                stack.append(Y)
    return best


def find_bloated_tree(g: Graph, S, k: int, budget=None, exhaustive_limit: int = 16):
    """A verified bloated tree ``J`` with ``|J & S| >= k``, or None (unknown).

    Greedy induced-tree growth first, then clique-aware extension, then an
    exhaustive enumeration of connected bloated sets for small graphs.
    """
    budget = Budget.coerce(budget)
    S = frozenset(S)
    _require_one_component(g, S)
    J = _best_bloated(g, S, budget, k)
    if len(J & S) < k and g.n <= exhaustive_limit:
        J2 = _exhaustive_bloated(g, S, k, budget)
        if len(J2 & S) > len(J & S):
            J = J2
    if len(J & S) < k:
        return None
    return verify_bloated_tree(g, J) or None


def _require_one_component(g: Graph, S):
    if not S:
        return
    comp = next(c for c in components(g) if min(S) in c)
    if not set(S) <= set(comp):
        raise ValueError("S is split across components")


# ---------------------------------------------------------------- minimal triples

@dataclass(frozen=True)
class TripleWitness:
    shape: str  # "star" (centre a) or "triangle"
    H: frozenset
    centre: tuple  # (a,) for a star, the three triangle vertices otherwise
    paths: dict  # x -> path from the centre vertex (or its triangle corner) to x


def _minimize(g: Graph, H, keep) -> set:
    H = set(H)
    keep = set(keep)
    changed = True
    while changed:
        changed = False
        for v in sorted(H - keep):
            if is_connected(g, H - {v}):
                H.discard(v)
                changed = True
    return H


def _steiner(g: Graph, X, forbid=frozenset()) -> set | None:
    X = sorted(X)
    H = {X[0]}
    for x in X[1:]:
        if x in H:
            continue
        p = _bfs_path(g, x, H, forbid=forbid - H)
        if p is None:
            return None
        H.update(p)
    return H


def minimal_connected_triple(g: Graph, X) -> TripleWitness:
    """An inclusion-minimal connected induced ``H`` containing three vertices,
    classified as a subdivided star or a triangle with three paths."""
    X = tuple(sorted(set(X)))
    if len(X) != 3:
        raise ValueError("X must have three vertices")
    H = _steiner(g, X)
    if H is None:
        raise ValueError("X is not inside one component")
    H = _minimize(g, H, X)
    h, ids = induced_subgraph(g, H)
    pos = {v: i for i, v in enumerate(ids)}
    if _is_tree(h):
        branch = [v for v in h.vertices() if h.degree(v) >= 3]
        if branch:
            a = branch[0]
        else:
            a = next(pos[x] for x in X if h.degree(pos[x]) != 1) if h.n > 1 else pos[X[0]]
        paths = {x: tuple(ids[v] for v in _tree_path(h, a, pos[x])) for x in X}
        w = TripleWitness("star", frozenset(H), (ids[a],), paths)
    else:
        tri = next(K for K in maximal_cliques(h) if len(K) == 3)
        corner = {}
        for x in X:
            for c in tri:
                rest = set(tri) - {c}
                reach = components(h, [v for v in h.vertices() if v not in rest])
                if any(c in comp and pos[x] in comp for comp in reach):
                    corner[x] = c
                    break
        paths = {}
        for x in X:
            c = corner[x]
            allowed = set(h.vertices()) - (set(tri) - {c})
            p = _bfs_path(h, c, {pos[x]}, allowed=allowed)
            paths[x] = tuple(ids[v] for v in p)
        w = TripleWitness("triangle", frozenset(H), tuple(ids[c] for c in tri), paths)
    problems = check_triple(g, X, w)
    assert not problems, problems
    return w


def check_triple(g: Graph, X, w: TripleWitness) -> list[str]:
    out = []
    union = set()
    for p in w.paths.values():
        union |= set(p)
    if union != set(w.H):
        out.append("H is not the union of the three paths")
    if not is_connected(g, w.H):
        out.append("H is not connected")
    tails = []
    for x in X:
        p = w.paths[x]
        if p[-1] != x:
            out.append(f"path for {x} does not end at {x}")
        if any(p[i + 1] not in g.adj[p[i]] for i in range(len(p) - 1)):
            out.append(f"path for {x} is not a path")
        if w.shape == "star" and p[0] != w.centre[0]:
            out.append(f"path for {x} does not start at the centre")
        if w.shape == "triangle" and p[0] not in w.centre:
            out.append(f"path for {x} does not start on the triangle")
        tails.append(set(p[1:]) if w.shape == "star" else set(p))
    if w.shape == "triangle" and (len(set(w.centre)) != 3 or not is_clique(g, w.centre)):
        out.append("centre is not a triangle")
    for i, j in itertools.combinations(range(3), 2):
        A, B = tails[i], tails[j]
        if A & B:
            out.append("paths overlap")
        edges = {(a, b) for a in A for b in g.adj[a] if b in B}
        if w.shape == "triangle":
            edges -= {(a, b) for a in w.centre for b in w.centre}
        if edges:
            out.append("paths are not anticomplete")
    return out


# ---------------------------------------------------------------- extraction

def _expand(J1_vertices, old, paths, J1: Graph, ids) -> frozenset:
    """Undo bump suppression for an induced subgraph of the suppressed graph."""
    U = set(J1_vertices)
    out = {ids[old[u]] for u in U}
    for u in U:
        for v in J1.adj[u]:
            if v in U and u < v:
                out.update(ids[x] for x in paths[(u, v)])
    return frozenset(out)


def _paths_to_S(J1: Graph, start: int, region, S1) -> tuple | None:
    return _bfs_path(J1, start, S1, allowed=set(region))


def _stage_clique(J1, S1, eta):
    for K in maximal_cliques(J1):
        if len(K) < max(3, eta):
            continue
        picks = []
        for v in K:
            region = [x for x in J1.vertices() if x not in set(K) - {v}]
            comp = next(c for c in components(J1, region) if v in c)
            p = _bfs_path(J1, v, S1, allowed=set(comp))
            if p is not None:
                picks.append(p)
        if len(picks) >= eta:
            picks.sort(key=len)
            yield "big-clique", set().union(*map(set, picks[:eta]))


def _stage_star(J1, S1, eta):
    for x in sorted(J1.vertices(), key=lambda v: (-J1.degree(v), v)):
        nb = J1.adj[x]
        need = eta - 1 if x in S1 else eta
        if len(nb) < need or need < 2 or not all(not (J1.adj[a] & nb) for a in nb):
            continue
        picks = []
        region = [v for v in J1.vertices() if v != x]
        comps = components(J1, region)
        for a in sorted(nb):
            comp = next(c for c in comps if a in c)
            p = _bfs_path(J1, a, S1, allowed=set(comp))
            if p is not None:
                picks.append(p)
        if len(picks) >= need:
            picks.sort(key=len)
            yield "stable-neighbourhood", {x}.union(*map(set, picks[:need]))


def _longest_path(J1: Graph, budget: Budget, cap: int = 20000) -> tuple:
    best = ()
    count = 0
    for s in J1.vertices():
        path = [s]
        on = {s}

        def rec():
            nonlocal best, count
            count += 1
            budget.tick()
            if len(path) > len(best):
                best = tuple(path)
            if count > cap:
                return
            for w in sorted(J1.adj[path[-1]]):
                # keep it induced: w may only touch the current tip
                if w in on or (J1.adj[w] & on) != {path[-1]}:
                    continue
                on.add(w)
                path.append(w)
                rec()
                path.pop()
                on.discard(w)

        rec()
    return best


def _stage_path(J1, S1, eta, P):
    hits = [i for i, v in enumerate(P) if v in S1]
    for k in range(len(hits) - eta + 1):
        yield "tied-subpath", set(P[hits[k]:hits[k + eta - 1] + 1])


def _stage_caterpillar(J1, S1, eta, P, literal_only=False):
    """Windows A = (a, b, c) on S-free stretches of the long path, each with a
    third component reaching S; eta windows of one weight make a caterpillar
    (light) or its line graph (heavy)."""
    runs, cur = [], []
    for v in P:
        if v in S1:
            if cur:
                runs.append(cur)
            cur = []
        else:
            cur.append(v)
    if cur:
        runs.append(cur)
    for run in runs:
        if literal_only and len(run) - 1 < 8 * eta:
            continue
        wins = []
        for j in range(1, len(run) - 3):
            A = run[j:j + 3]
            left, right = set(run[:j]), set(run[j + 3:])
            rest = [v for v in J1.vertices() if v not in A]
            for comp in components(J1, rest):
                cs = set(comp)
                if cs & left or cs & right or not cs & S1:
                    continue
                entry = {v for v in cs if J1.adj[v] & set(A)}
                W = _bfs_path(J1, entry, S1, allowed=cs)
                if W is None:
                    continue
                touch = J1.adj[W[0]] & set(A)
                a, b, c = A
                if len(touch) == 1:
                    weight = "light"
                elif touch in ({a, b}, {b, c}):
                    weight = "heavy"
                else:
                    continue
                wins.append((j, weight, tuple(A), W))
                break
        for weight in ("light", "heavy"):
            cand = [w for w in wins if w[1] == weight]
            for combo in _spaced(cand, eta):
                first, last = combo[0], combo[-1]
                body = set(run[first[0] + 2:last[0] + 1])
                H = set(body)
                for w in combo[1:-1]:
                    H |= set(w[2]) | set(w[3])
                for w, end in ((first, first[2][2]), (last, last[2][0])):
                    G = set(w[2]) | set(w[3])
                    z = _bfs_path(J1, end, {w[3][-1]}, allowed=G)
                    H |= set(z)
                yield f"caterpillar-{weight}", H


def _spaced(wins, eta, limit=200):
    """Up to ``limit`` choices of eta windows with a vertex between neighbours."""
    out = []

    def rec(i, chosen):
        if len(out) >= limit:
            return
        if len(chosen) == eta:
            out.append(list(chosen))
            return
        for k in range(i, len(wins)):
            if chosen and wins[k][0] < chosen[-1][0] + 4:
                continue
            chosen.append(wins[k])
            rec(k + 1, chosen)
            chosen.pop()

    rec(0, [])
    return out


def _direct_path(g: Graph, S, eta, sigma, budget, cap=4000):
    """Induced paths from an S-vertex collecting eta S-vertices."""
    for s in sorted(S):
        path, on = [s], {s}
        count = 0

        def rec(hits, since):
            nonlocal count
            count += 1
            budget.tick()
            if count > cap:
                return None
            for w in sorted(g.adj[path[-1]]):
                if w in on or (g.adj[w] & on) != {path[-1]}:
                    continue
                if w in S:
                    if since + 1 < sigma:
                        continue
                    if hits + 1 == eta:
                        return path + [w]
                path.append(w)
                on.add(w)
                got = rec(hits + (w in S), 0 if w in S else since + 1)
                path.pop()
                on.discard(w)
                if got:
                    return got
            return None

        got = rec(1, 0)
        if got:
            yield "direct-path", set(got)


def _route_stems(g: Graph, starts: list, S, block, need: int, min_len: int, budget: Budget):
    """Pairwise disjoint and anticomplete shortest paths from some ``need``
    of the start vertices to S, avoiding ``block`` and the other starts."""
    chosen = []

    def rec(i, shadow):
        budget.tick()
        if len(chosen) == need:
            return True
        if len(starts) - i < need - len(chosen):
            return False
        a = starts[i]
        if a not in shadow:
            forbid = (set(block) | shadow | set(starts)) - {a}
            p = _bfs_path(g, a, S, forbid=forbid)
            if p is not None and len(p) >= min_len:
                chosen.append(p)
                closed = set(p).union(*(g.adj[x] for x in p))
                if rec(i + 1, shadow | closed):
                    return True
                chosen.pop()
        return rec(i + 1, shadow)

    return list(chosen) if rec(0, set()) else None


def _direct_star(g: Graph, S, eta, sigma, budget):
    for x in sorted(g.vertices(), key=lambda v: (-g.degree(v), v)):
        need = eta - 1 if x in S else eta
        if need < 2 or g.degree(x) < need:
            continue
        stems = _route_stems(g, sorted(g.adj[x]), S - {x}, {x}, need, sigma, budget)
        if stems:
            yield "direct-star", {x}.union(*map(set, stems))


def _direct_clique(g: Graph, S, eta, sigma, budget):
    for K in maximal_cliques(g):
        if len(K) < max(eta, 3):
            continue
        for sub in itertools.islice(itertools.combinations(K, eta), 50):
            budget.tick()
            others = set(K) - set(sub)
            stems = []
            used = set(sub)
            ok = True
            for v in sub:
                if v in S:
                    if sigma > 1:
                        ok = False
                        break
                    stems.append((v,))
                    continue
                forbid = (used | others | set().union(*(g.adj[u] for u in set(sub) - {v}))) - {v}
                for p in stems:
                    forbid |= set(p) | set().union(*(g.adj[u] for u in p))
                forbid -= {v}
                p = _bfs_path(g, v, S, forbid=forbid)
                if p is None or len(p) < sigma:
                    ok = False
                    break
                stems.append(p)
                used |= set(p)
            if ok:
                yield "direct-clique", set().union(*map(set, stems))


def _steiner_combos(g: Graph, S, eta, budget, limit=3000):
    Ss = sorted(S)
    dist = {}
    for s in Ss:
        d = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if w not in d:
                    d[w] = d[u] + 1
                    q.append(w)
        dist[s] = d
    combos = []
    for X in itertools.combinations(Ss, eta):
        spread = sum(dist[a].get(b, 10**6) for a, b in itertools.combinations(X, 2))
        combos.append((spread, X))
    combos.sort()
    for _, X in combos[:limit]:
        budget.tick()
        forbid = frozenset(S) - set(X)
        for rot in range(eta):
            order = X[rot:] + X[:rot]
            H = {order[0]}
            ok = True
            for x in order[1:]:
                if x in H:
                    continue
                p = _bfs_path(g, x, H, forbid=forbid)
                if p is None:
                    ok = False
                    break
                H.update(p)
            if ok:
                yield "steiner", _minimize(g, H, X)


def _attempt(g, S, eta, sigma, H, trace, stage):
    res = recognize_connectifier(g, H, S, eta, sigma)
    trace.append({"stage": stage, "size": len(H), "ok": bool(res), **({} if res else {"why": str(res)})})
    return res or None


def _extract_unit(g: Graph, S: frozenset, eta: int, budget: Budget, trace: list, literal: bool):
    want = len(S)
    J = _best_bloated(g, S, budget, want)
    trace.append({"stage": "bloated-tree", "vertices": len(J), "hits": len(J & S)})
    if len(J & S) < eta:
        return None
    # claim: every component left after deleting a connected set meets S
    J = set(J)
    changed = True
    while changed:
        changed = False
        for v in sorted(J - S):
            if is_connected(g, J - {v}):
                J.discard(v)
                changed = True
    trace.append({"stage": "prune", "vertices": len(J)})
    if eta == 2:
        s = min(J & S)
        p = _bfs_path(g, s, (J & S) - {s}, allowed=J)
        inner = [v for v in p[1:-1] if v in S] if p else []
        if p and not inner:
            res = _attempt(g, S, eta, 1, set(p), trace, "eta-2-path")
            if res:
                return res
    gj, ids = induced_subgraph(g, J)
    pos = {v: i for i, v in enumerate(ids)}
    SJ = {pos[v] for v in J & S}
    J1, old, paths = suppress_bumps(gj, SJ)
    S1 = {i for i, v in enumerate(old) if v in SJ}
    trace.append({"stage": "suppress-bumps", "vertices": J1.n})

    def lift(U):
        return _expand(U, old, paths, J1, ids)

    stages = [_stage_clique(J1, S1, eta), _stage_star(J1, S1, eta)]
    for gen in stages:
        for name, U in gen:
            res = _attempt(g, S, eta, 1, lift(U), trace, name)
            if res:
                return res
    P = _longest_path(J1, budget)
    trace.append({"stage": "long-path", "vertices": len(P), "literal_threshold": 8 * eta * eta + eta})
    for name, U in _stage_path(J1, S1, eta, P):
        res = _attempt(g, S, eta, 1, lift(U), trace, name)
        if res:
            return res
    for name, U in _stage_caterpillar(J1, S1, eta, P, literal_only=literal):
        budget.tick()
        res = _attempt(g, S, eta, 1, lift(U), trace, name)
        if res:
            return res
    return None


def _fallback(g: Graph, S: frozenset, eta: int, sigma: int, budget: Budget, trace: list):
    searches = [
        _direct_path(g, S, eta, sigma, budget),
        _direct_star(g, S, eta, sigma, budget),
        _direct_clique(g, S, eta, sigma, budget),
        _steiner_combos(g, S, eta, budget),
    ]
    for gen in searches:
        for name, H in gen:
            res = recognize_connectifier(g, H, S, eta, sigma)
            if res:
                trace.append({"stage": name, "size": len(H), "ok": True})
                return res
        trace.append({"stage": "fallback-exhausted", "search": gen.__name__ if hasattr(gen, "__name__") else str(gen)})
    return None


def _sub_select(g: Graph, S, cert: ConnectifierCert, eta: int, sigma: int, budget: Budget, limit: int = 500):
    """Find an (S, eta, sigma)-connectifier inside a larger connectifier."""
    hits = list(cert.s_hits)
    H = set(cert.H)
    tried = 0
    windows = [tuple(hits[i:i + eta]) for i in range(len(hits) - eta + 1)]
    rest = [X for X in itertools.combinations(hits, eta) if X not in windows]
    for X in itertools.chain(windows, rest):
        tried += 1
        if tried > limit:
            break
        budget.tick()
        sub = _minimize(g, H, X)
        res = recognize_connectifier(g, sub, S, eta, sigma)
        if res:
            return res
    return None


def extract_connectifier(g: Graph, S, eta: int, sigma: int = 1, budget=None, literal: bool = False) -> ConnectifierCert:
    """Find an (S, eta, sigma)-connectifier following the bloated-tree route.

    Stages: bloated tree, pruning to S-essential vertices, bump suppression,
    big clique (type 0), stable high-degree vertex (type 1), long path (type
    2), caterpillar windows (types 3 and 4).  ``literal=True`` restricts the
    caterpillar stage to S-free stretches of length at least ``8 * eta``.
    If every stage dead-ends, direct searches in the whole graph are tried.
    For ``sigma > 1`` a larger unit-spaced connectifier is extracted first
    and an (S, eta, sigma) one is selected inside it.  Raises
    :class:`ExtractionFailed` with the stage trace when nothing verifies.
    """
    if eta < 2:
        raise ValueError("eta must be >= 2")
    if sigma < 1:
        raise ValueError("sigma must be >= 1")
    budget = Budget.coerce(budget)
    S = frozenset(S)
    _require_one_component(g, S)
    trace = []
    if len(S) < eta:
        raise ExtractionFailed(f"|S| = {len(S)} < eta = {eta}; S must grow by {eta - len(S)}", trace)
    if sigma == 1:
        res = _extract_unit(g, S, eta, budget, trace, literal)
        if res is None:
            res = _fallback(g, S, eta, 1, budget, trace)
    else:
        res = None
        big = max(eta * sigma, eta + 1)
        if len(S) >= big:
            outer = _extract_unit(g, S, big, budget, trace, literal) or _fallback(g, S, big, 1, budget, trace)
            if outer is not None:
                trace.append({"stage": "outer", "eta": big, "kind": outer.kind})
                res = _sub_select(g, S, outer, eta, sigma, budget)
        if res is None:
            res = _fallback(g, S, eta, sigma, budget, trace)
    if res is None:
        raise ExtractionFailed("no connectifier verified", trace)
    problems = verify_connectifier(g, res, S)
    if problems:
        raise ExtractionFailed("internal: certificate failed re-check: " + "; ".join(problems), trace)
    return res
