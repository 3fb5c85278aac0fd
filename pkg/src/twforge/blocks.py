"""Vertex connectivity, k-blocks, strong k-blocks and distance refinement.

Two vertices are *separated* by ``M`` when some separation ``(L, M, R)``
puts them on opposite sides.  Adjacent vertices are never separated, since
``L`` and ``R`` must be anticomplete.  For non-adjacent pairs the smallest
separator equals the maximum number of internally disjoint paths (Menger).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .budget import Budget, ExtractionFailed
from .graph import Graph, delete_vertices, maximal_cliques

# ---------------------------------------------------------------- Menger


def _disjoint_paths(g: Graph, x: int, y: int, forbid=frozenset(), want: int | None = None) -> list[tuple]:
    """Maximum family of internally disjoint x-y paths of length >= 2 avoiding
    ``forbid``, by unit-capacity augmenting paths on the split graph.

    Node ``(v, 0)`` is the entry of ``v`` and ``(v, 1)`` its exit; every
    vertex other than ``x`` and ``y`` has capacity one.  The direct edge
    ``xy``, if any, is ignored.
    """
    flow = {}  # (a, b) -> units on arc a->b in the split graph

    def cap(a, b):
        # arcs: (v,0)->(v,1) capacity 1 (inf for x, y); (u,1)->(w,0) for edges
        if a[0] == b[0]:
            return 1 if a[0] not in (x, y) else 10**9
        return 1

    def succ(a):
        v, side = a
        if side == 0:
            yield (v, 1), True
            for u in sorted(g.adj[v]):
                if u in forbid:
                    continue
                yield (u, 1), False  # residual of u->v
        else:
            yield (v, 0), False
            for u in sorted(g.adj[v]):
                if u in forbid or {u, v} == {x, y}:
                    continue
                yield (u, 0), True

    def residual(a, b, forward):
        if forward:
            return cap(a, b) - flow.get((a, b), 0)
        return flow.get((b, a), 0)

    src, dst = (x, 1), (y, 0)
    count = 0
    while want is None or count < want:
        parent = {src: None}
        queue = deque([src])
        while queue and dst not in parent:
            a = queue.popleft()
            for b, forward in succ(a):
                if b in parent or residual(a, b, forward) <= 0:
                    continue
                parent[b] = (a, forward)
                queue.append(b)
        if dst not in parent:
            break
        b = dst
        while parent[b] is not None:
            a, forward = parent[b]
            if forward:
                flow[(a, b)] = flow.get((a, b), 0) + 1
            else:
                flow[(b, a)] -= 1
            b = a
        count += 1
    # decompose the flow into paths
    nxt = {}
    for (a, b), f in flow.items():
        if f > 0 and a[1] == 1 and b[1] == 0:
            nxt.setdefault(a[0], []).append(b[0])
    paths = []
    for _ in range(count):
        p = [x]
        while p[-1] != y:
            u = p[-1]
            w = nxt[u].pop()
            p.append(w)
        paths.append(tuple(p))
    return sorted(paths, key=lambda p: (len(p), p))


def pair_connectivity(g: Graph, x: int, y: int) -> tuple[int, list[tuple]]:
    """Maximum number of internally disjoint x-y paths, with such a family.

    The edge ``xy`` counts as one path when present.
    """
    if x == y:
        raise ValueError("x and y must differ")
    paths = _disjoint_paths(g, x, y)
    if g.has_edge(x, y):
        paths = [(x, y)] + paths
    return len(paths), paths


def min_separator_size(g: Graph, x: int, y: int) -> int | None:
    """Smallest ``|M|`` separating non-adjacent ``x`` and ``y``; None if adjacent."""
    if g.has_edge(x, y):
        return None
    return len(_disjoint_paths(g, x, y))


def inseparable(g: Graph, x: int, y: int, k: int, adjacent_inseparable: bool = True) -> bool:
    """True when no set of fewer than ``k`` vertices separates ``x`` and ``y``."""
    if g.has_edge(x, y):
        if adjacent_inseparable:
            return True
        return 1 + len(_disjoint_paths(g, x, y, want=k - 1)) >= k
    return len(_disjoint_paths(g, x, y, want=k)) >= k


def k_blocks(g: Graph, k: int, adjacent_inseparable: bool = True) -> list[frozenset]:
    """All k-blocks: maximal cliques of size ``>= k`` of the inseparability
    relation, largest first."""
    if k < 1:
        raise ValueError("k must be >= 1")
    cand = [v for v in g.vertices() if g.degree(v) >= k - 1 or adjacent_inseparable]
    rel = []
    for u, v in itertools.combinations(cand, 2):
        if inseparable(g, u, v, k, adjacent_inseparable):
            rel.append((u, v))
    r = Graph(g.n, rel)
    out = [frozenset(K) for K in maximal_cliques(r, cand) if len(K) >= k]
    return sorted(out, key=lambda B: (-len(B), sorted(B)))


def find_k_block(g: Graph, k: int, adjacent_inseparable: bool = True) -> frozenset | None:
    blocks = k_blocks(g, k, adjacent_inseparable)
    return blocks[0] if blocks else None


# ---------------------------------------------------------------- strong blocks

@dataclass(frozen=True)
class StrongBlockCert:
    B: frozenset
    paths: dict  # frozenset({x, y}) -> tuple of paths, each running x -> y

    def as_dict(self) -> dict:
        return {
            "B": sorted(self.B),
            "paths": [{"pair": sorted(p), "paths": [list(q) for q in ps]} for p, ps in sorted(self.paths.items(), key=lambda kv: sorted(kv[0]))],
        }


def verify_strong_block(g: Graph, cert: StrongBlockCert, k: int) -> tuple[bool, str | None]:
    """Check every clause of the strong k-block definition literally."""
    B = cert.B
    if len(B) < k:
        return False, f"|B| = {len(B)} < k = {k}"
    for v in B:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    pairs = [frozenset(p) for p in itertools.combinations(sorted(B), 2)]
    for pair in pairs:
        if pair not in cert.paths:
            return False, f"pair {sorted(pair)} has no path system"
    for key in cert.paths:
        if key not in pairs:
            raise ValueError(f"path system for {sorted(key)} is not a pair of B")
    for pair in pairs:
        x, y = sorted(pair)
        ps = cert.paths[pair]
        if len(set(ps)) < k:
            return False, f"pair {x},{y} has {len(set(ps))} < {k} distinct paths"
        inner = set()
        for p in ps:
            if {p[0], p[-1]} != {x, y}:
                return False, f"path {p} does not join {x} and {y}"
            if len(set(p)) != len(p) or any(p[i + 1] not in g.adj[p[i]] for i in range(len(p) - 1)):
                return False, f"{p} is not a path of g"
            mid = set(p[1:-1])
            if mid & inner:
                return False, f"paths for pair {x},{y} are not internally disjoint"
            inner |= mid
    for a, b in itertools.combinations(pairs, 2):
        allowed = a & b
        for p in cert.paths[a]:
            sp = set(p)
            for q in cert.paths[b]:
                if sp & set(q) != allowed:
                    return False, f"paths {p} and {q} of pairs {sorted(a)}, {sorted(b)} meet outside their common end"
    return True, None


def _route_block(g: Graph, B: list, k: int, budget: Budget, order=None) -> StrongBlockCert | None:
    """Route k paths per pair of B, reserving interiors as we go."""
    pairs = list(itertools.combinations(B, 2)) if order is None else order
    reserved = set(B)
    out = {}
    for x, y in pairs:
        budget.tick()
        forbid = reserved - {x, y}
        direct = [(x, y)] if g.has_edge(x, y) else []
        need = k - len(direct)
        got = _disjoint_paths(g, x, y, forbid=frozenset(forbid), want=need) if need > 0 else []
        if len(got) < need:
            return None
        chosen = direct + got[:need]
        for p in chosen:
            reserved |= set(p[1:-1])
        out[frozenset((x, y))] = tuple(chosen)
    return StrongBlockCert(frozenset(B), out)


def find_strong_block(g: Graph, k: int, budget=None, candidates=None, size: int | None = None) -> StrongBlockCert | None:
    """Search for a strong k-block of ``size`` vertices (default ``k``).

    Candidates are drawn from the k-blocks (or ``candidates`` if given),
    high-degree vertices first; each is routed pair by pair with interior
    reservation, trying a few pair orders.  Output is always verified;
    None means nothing was found within the budget.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    budget = Budget.coerce(budget)
    size = k if size is None else size
    if size < max(k, 1):
        raise ValueError("size must be >= k")
    if size == 1:
        v = next(iter(g.vertices()), None)
        return None if v is None else StrongBlockCert(frozenset([v]), {})
    pools = [sorted(candidates)] if candidates is not None else [sorted(B) for B in k_blocks(g, k)]
    tried = set()
    for pool in pools:
        pool = sorted(pool, key=lambda v: (-g.degree(v), v))
        for B in itertools.islice(itertools.combinations(pool, size), 2000):
            key = frozenset(B)
            if key in tried:
                continue
            tried.add(key)
            if any(g.degree(v) < k * (size - 1) for v in B):
                continue
            base = list(itertools.combinations(sorted(B), 2))
            for order in (base, list(reversed(base))):
                cert = _route_block(g, sorted(B), k, budget, order)
                if cert is not None:
                    ok, why = verify_strong_block(g, cert, k)
                    assert ok, why
                    return cert
    return None


# ---------------------------------------------------------------- d-stable sets

def short_path(g: Graph, x: int, y: int, d: int, forbid=frozenset()) -> tuple | None:
    """A shortest x-y path of length at most ``d`` with interior outside ``forbid``."""
    parent = {x: None}
    queue = deque([(x, 0)])
    while queue:
        u, depth = queue.popleft()
        if depth == d:
            continue
        for w in sorted(g.adj[u]):
            if w in parent:
                continue
            if w == y:
                out = [y, u]
                while parent[out[-1]] is not None:
                    out.append(parent[out[-1]])
                return tuple(reversed(out))
            if w in forbid:
                continue
            parent[w] = u
            queue.append((w, depth + 1))
    return None


def is_d_stable(g: Graph, S, d: int) -> tuple[bool, tuple | None]:
    """No path of length at most ``d`` between distinct members of ``S``."""
    S = sorted(S)
    for x, y in itertools.combinations(S, 2):
        p = short_path(g, x, y, d)
        if p is not None:
            return False, p
    return True, None


def _max_stable(g0: Graph, verts: list, exact_limit: int = 20) -> tuple[list, str]:
    if len(verts) <= exact_limit:
        best = []

        def rec(chosen, rest):
            nonlocal best
            if len(chosen) + len(rest) <= len(best):
                return
            if not rest:
                best = list(chosen)
                return
            v = rest[0]
            rec(chosen + [v], [u for u in rest[1:] if u not in g0.adj[v]])
            rec(chosen, rest[1:])

        rec([], list(verts))
        return sorted(best), "exact"
    out = []
    for v in sorted(verts, key=lambda u: (g0.degree(u), u)):
        if not any(u in g0.adj[v] for u in out):
            out.append(v)
    return sorted(out), "greedy"


@dataclass
class RefineResult:
    A: frozenset
    S: frozenset
    X: tuple
    short_paths: dict  # pair -> path used to grow U
    conflict_edges: list
    stable_method: str
    block: StrongBlockCert | None = None  # S as a strong k-block of g - A, in g's ids
    trace: list = field(default_factory=list)


def restrict_block(cert: StrongBlockCert, S, A, k: int) -> StrongBlockCert | None:
    """Sub-certificate on ``S``: keep the paths avoiding ``A``, k per pair."""
    S = frozenset(S)
    out = {}
    for pair in itertools.combinations(sorted(S), 2):
        key = frozenset(pair)
        keep = [p for p in cert.paths[key] if not set(p) & set(A)]
        if len(keep) < k:
            return None
        out[key] = tuple(keep[:k])
    return StrongBlockCert(S, out)


def verify_block_after_deletion(g: Graph, cert: StrongBlockCert, A, k: int) -> tuple[bool, str | None]:
    """verify_strong_block in ``g - A`` with the certificate relabelled."""
    h, old = delete_vertices(g, A)
    new = {v: i for i, v in enumerate(old)}
    try:
        moved = StrongBlockCert(
            frozenset(new[v] for v in cert.B),
            {frozenset(new[v] for v in pair): tuple(tuple(new[v] for v in p) for p in ps) for pair, ps in cert.paths.items()},
        )
    except KeyError as e:
        return False, f"certificate uses deleted vertex {e.args[0]}"
    return verify_strong_block(h, moved, k)


def distance_refine(g: Graph, B0, X_size: int, d: int, k: int, block: StrongBlockCert | None = None) -> RefineResult:
    """Greedy short-path refinement of a block into a d-stable strong block.

    Take ``X`` = the ``X_size`` smallest vertices of ``B0``.  Scan the pairs
    of ``X`` in lexicographic order; for each, look for a path of length at
    most ``d`` whose interior avoids ``X`` and everything collected so far,
    and collect its interior into ``U``.  Pairs with such a path form the
    conflict graph on ``X``; a stable set ``S`` of it with ``|S| >= k`` is
    d-stable in ``g - A`` for ``A = U + (X - S)``.  When ``block`` (a strong
    block certificate containing ``X``) is given, the surviving paths are
    kept as a certificate for ``S`` in ``g - A``.
    """
    B0 = sorted(B0)
    if X_size > len(B0):
        raise ValueError("X_size exceeds |B0|")
    X = tuple(B0[:X_size])
    U = set()
    used = {}
    trace = []
    for x, y in itertools.combinations(X, 2):
        p = short_path(g, x, y, d, forbid=U | set(X))
        if p is not None:
            used[(x, y)] = p
            U |= set(p[1:-1])
            trace.append({"pair": [x, y], "path": list(p)})
    g0 = Graph(g.n, list(used))
    S, method = _max_stable(g0, list(X))
    trace.append({"stable": S, "method": method})
    if len(S) < k:
        raise ExtractionFailed(f"stable set of size {len(S)} < k = {k} ({method})", trace)
    S = S[:k] if len(S) > k else S
    A = frozenset(U | (set(X) - set(S)))
    ok, witness = is_d_stable(delete_vertices(g, A)[0], [delete_vertices(g, A)[1].index(v) for v in S], d)
    if not ok:
        raise ExtractionFailed("internal: S is not d-stable after deletion", trace)
    res = RefineResult(A, frozenset(S), X, used, sorted(used), method, None, trace)
    if block is not None:
        sub = restrict_block(block, S, A, k)
        if sub is not None:
            ok, why = verify_block_after_deletion(g, sub, A, k)
            if ok:
                res.block = sub
            else:
                trace.append({"block": why})
        else:
            trace.append({"block": "too few surviving paths for some pair"})
    return res
