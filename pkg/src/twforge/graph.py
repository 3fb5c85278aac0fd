"""Immutable simple graphs on vertices ``0..n-1`` and the primitive operations.

Every operation that renumbers vertices returns an explicit map back to the
ids of its input, so certificates can always be traced to the host graph.
Iteration is in ascending id order throughout; ties go to the smallest id.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

Path = tuple  # an ordered tuple of vertex ids


class Graph:
    """Simple undirected graph with frozen set adjacency."""

    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(s) for s in adj)
        self._edges = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        return cls(len(adj), ((u, v) for u, nb in enumerate(adj) for v in nb if u < v))

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            self._edges = [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]
        return self._edges

    @property
    def m(self) -> int:
        return len(self.edges())

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def with_edges(self, add=(), remove=()) -> "Graph":
        """A copy with some edges added and some removed."""
        es = set(self.edges())
        for u, v in remove:
            es.discard((min(u, v), max(u, v)))
        for u, v in add:
            es.add((min(u, v), max(u, v)))
        return Graph(self.n, sorted(es))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Separation:
    L: frozenset
    M: frozenset
    R: frozenset

    def is_valid(self, g: Graph) -> bool:
        L, M, R = self.L, self.M, self.R
        if L & M or L & R or M & R or not L or not R:
            return False
        if len(L) + len(M) + len(R) != g.n:
            return False
        return anticomplete(g, L, R)


# ---------------------------------------------------------------- basics

def _check_vertices(g: Graph, X: Iterable[int]) -> list[int]:
    xs = sorted(set(X))
    for v in xs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    return xs


def induced_subgraph(g: Graph, X: Iterable[int]) -> tuple[Graph, list[int]]:
    """``g[X]`` relabelled to ``0..|X|-1``; the list maps new ids to old ids."""
    old = _check_vertices(g, X)
    new = {v: i for i, v in enumerate(old)}
    edges = [(new[u], new[v]) for u in old for v in g.adj[u] if v in new and u < v]
    return Graph(len(old), edges), old


def delete_vertices(g: Graph, X: Iterable[int]) -> tuple[Graph, list[int]]:
    drop = set(X)
    return induced_subgraph(g, [v for v in g.vertices() if v not in drop])


def line_graph(g: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Line graph; vertex ``i`` of the result is edge ``edges[i]`` of ``g``."""
    edges = g.edges()
    at = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        at[u].append(i)
        at[v].append(i)
    lg = set()
    for inc in at:
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                lg.add((inc[a], inc[b]))
    return Graph(len(edges), sorted(lg)), list(edges)


def subdivide(g: Graph, lengths) -> tuple[Graph, dict[tuple[int, int], tuple]]:
    """Replace each edge ``uv`` by a path with ``lengths[uv]`` edges.

    ``lengths`` is an int (all edges), a dict keyed by ``(u, v)`` with
    ``u < v``, or a callable on the edge.  Original vertices keep their ids;
    subdivision vertices are appended.  Returns the graph and, per original
    edge, the replacing path from ``u`` to ``v``.
    """
    if isinstance(lengths, int):
        length_of = lambda e: lengths
    elif callable(lengths):
        length_of = lengths
    else:
        length_of = lambda e: lengths[e]
    n = g.n
    edges = []
    paths = {}
    for e in g.edges():
        k = length_of(e)
        if k < 1:
            raise ValueError(f"edge {e} has subdivision length {k} < 1")
        seq = [e[0]] + list(range(n, n + k - 1)) + [e[1]]
        n += k - 1
        edges.extend(zip(seq, seq[1:]))
        paths[e] = tuple(seq)
    return Graph(n, edges), paths


def bfs_distances(g: Graph, source, allowed=None, limit: int | None = None) -> dict[int, int]:
    """Hop distances from a vertex or a set of vertices, optionally inside ``allowed``."""
    sources = [source] if isinstance(source, int) else list(source)
    dist = {s: 0 for s in sources}
    queue = deque(sources)
    while queue:
        u = queue.popleft()
        if limit is not None and dist[u] >= limit:
            continue
        for w in sorted(g.adj[u]):
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def shortest_path(g: Graph, s: int, t, allowed=None) -> Path | None:
    """Shortest path from ``s`` to ``t`` (a vertex or a target set).

    Interior and target vertices must lie in ``allowed`` when it is given; ``s``
    itself is always permitted.  Ties go to the smallest ids.
    """
    targets = {t} if isinstance(t, int) else set(t)
    if s in targets:
        return (s,)
    parent = {s: None}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u]):
            if w in parent or (allowed is not None and w not in allowed):
                continue
            parent[w] = u
            if w in targets:
                out = [w]
                while parent[out[-1]] is not None:
                    out.append(parent[out[-1]])
                return tuple(reversed(out))
            queue.append(w)
    return None


def components(g: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components (of ``g[within]`` if given), each sorted, ordered by min id."""
    allowed = set(g.vertices()) if within is None else set(within)
    seen = set()
    out = []
    for v in sorted(allowed):
        if v in seen:
            continue
        comp = bfs_distances(g, v, allowed)
        seen.update(comp)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph, within: Iterable[int] | None = None) -> bool:
    return len(components(g, within)) <= 1


def is_clique(g: Graph, X: Iterable[int]) -> bool:
    xs = list(X)
    return all(xs[j] in g.adj[xs[i]] for i in range(len(xs)) for j in range(i + 1, len(xs)))


def is_stable(g: Graph, X: Iterable[int]) -> bool:
    xs = list(X)
    return not any(xs[j] in g.adj[xs[i]] for i in range(len(xs)) for j in range(i + 1, len(xs)))


def anticomplete(g: Graph, A: Iterable[int], B: Iterable[int]) -> bool:
    """No edges between ``A`` and ``B`` (the sets are expected to be disjoint)."""
    B = set(B)
    return not any(g.adj[a] & B for a in A)


def simplicial_set(g: Graph, within: Iterable[int] | None = None) -> frozenset:
    """Z(G): vertices whose neighbourhood is a clique (of ``g[within]`` if given)."""
    allowed = set(g.vertices()) if within is None else set(within)
    return frozenset(v for v in allowed if is_clique(g, sorted(g.adj[v] & allowed)))


def girth(g: Graph):
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    for s in g.vertices():
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def is_path(g: Graph, seq: Sequence[int]) -> bool:
    return len(set(seq)) == len(seq) and all(seq[i + 1] in g.adj[seq[i]] for i in range(len(seq) - 1))


def is_induced_path(g: Graph, seq: Sequence[int]) -> bool:
    if not is_path(g, seq):
        return False
    pos = {v: i for i, v in enumerate(seq)}
    return all(abs(pos[w] - i) == 1 for i, v in enumerate(seq) for w in g.adj[v] if w in pos)


def is_induced_cycle(g: Graph, seq: Sequence[int]) -> bool:
    """``seq`` lists the vertices of an induced cycle (length ≥ 3) in cyclic order."""
    k = len(seq)
    if k < 3 or len(set(seq)) != k:
        return False
    pos = {v: i for i, v in enumerate(seq)}
    for i, v in enumerate(seq):
        inside = {pos[w] for w in g.adj[v] if w in pos}
        if inside != {(i - 1) % k, (i + 1) % k}:
            return False
    return True


def suppress_bumps(g: Graph, S: Iterable[int]) -> tuple[Graph, list[int], dict[tuple[int, int], Path]]:
    """Repeatedly suppress S-bumps (smallest id first).

    An S-bump is a vertex outside ``S`` of degree 2 whose neighbours are not
    adjacent; suppressing it deletes it and joins its neighbours.  Returns the
    result, the list mapping its ids to ids of ``g``, and for every edge of the
    result (in new ids, ``u < v``) the path of ``g`` it stands for.  ``g`` is a
    subdivision of the result.
    """
    S = set(S)
    adj = {v: set(g.adj[v]) for v in g.vertices()}
    via = {(u, v): (u, v) for u, v in g.edges()}

    def key(a, b):
        return (a, b) if a < b else (b, a)

    def route(a, b):
        p = via[key(a, b)]
        return p if p[0] == a else tuple(reversed(p))

    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            if v in S or len(adj[v]) != 2:
                continue
            a, b = sorted(adj[v])
            if b in adj[a]:
                continue
            path = route(a, v) + route(v, b)[1:]
            del via[key(a, v)], via[key(v, b)]
            adj[a].discard(v)
            adj[b].discard(v)
            adj[a].add(b)
            adj[b].add(a)
            del adj[v]
            via[key(a, b)] = path
            changed = True
            break
    old = sorted(adj)
    new = {v: i for i, v in enumerate(old)}
    h = Graph(len(old), [(new[u], new[w]) for u in old for w in adj[u] if u < w])
    paths = {key(new[a], new[b]): p for (a, b), p in via.items()}
    return h, old, paths


def contract_sets(g: Graph, parts: Sequence[Iterable[int]]) -> tuple[Graph, list[list[int]]]:
    """Contract each part into one vertex.

    Parts become vertices ``0..len(parts)-1`` in the given order; the
    remaining vertices follow in ascending order.  Returns the minor and, per
    new vertex, the list of original vertices it stands for.
    """
    owner = {}
    groups = []
    for i, part in enumerate(parts):
        p = sorted(set(part))
        if not p:
            raise ValueError(f"part {i} is empty")
        if not is_connected(g, p):
            raise ValueError(f"part {i} is not connected")
        for v in p:
            if v in owner:
                raise ValueError(f"vertex {v} lies in two parts")
            owner[v] = i
        groups.append(p)
    for v in g.vertices():
        if v not in owner:
            owner[v] = len(groups)
            groups.append([v])
    edges = {(min(owner[u], owner[v]), max(owner[u], owner[v])) for u, v in g.edges() if owner[u] != owner[v]}
    return Graph(len(groups), sorted(edges)), groups


def maximal_cliques(g: Graph, within: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """All maximal cliques (of ``g[within]``), Bron–Kerbosch with pivoting, sorted."""
    allowed = frozenset(g.vertices()) if within is None else frozenset(within)
    out = []

    def expand(R, P, X):
        if not P and not X:
            out.append(tuple(sorted(R)))
            return
        pivot = max(P | X, key=lambda u: (len(g.adj[u] & P), -u))
        for v in sorted(P - g.adj[pivot]):
            nb = g.adj[v] & allowed
            expand(R | {v}, P & nb, X & nb)
            P = P - {v}
            X = X | {v}

    if allowed:
        expand(frozenset(), allowed, frozenset())
    return sorted(out)


# ---------------------------------------------------------------- isomorphism

def _joint_refinement(g: Graph, h: Graph) -> tuple[list[int], list[int]]:
    cg = [g.degree(v) for v in g.vertices()]
    ch = [h.degree(v) for v in h.vertices()]
    classes = len(set(cg) | set(ch))
    while True:
        sg = [(cg[v], tuple(sorted(cg[u] for u in g.adj[v]))) for v in g.vertices()]
        sh = [(ch[v], tuple(sorted(ch[u] for u in h.adj[v]))) for v in h.vertices()]
        ids = {s: i for i, s in enumerate(sorted(set(sg) | set(sh)))}
        cg = [ids[s] for s in sg]
        ch = [ids[s] for s in sh]
        if len(ids) == classes:
            return cg, ch
        classes = len(ids)


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A bijection ``phi`` with ``uv ∈ E(g) ⇔ phi[u]phi[v] ∈ E(h)``, or None."""
    if g.n != h.n or g.m != h.m:
        return None
    cg, ch = _joint_refinement(g, h)
    if sorted(cg) != sorted(ch):
        return None
    by_colour = {}
    for v in h.vertices():
        by_colour.setdefault(ch[v], []).append(v)
    # Place rare colours first, then grow along edges so adjacency checks bite early.
    order = []
    placed = set()
    rank = sorted(g.vertices(), key=lambda v: (len(by_colour[cg[v]]), -g.degree(v), v))
    for root in rank:
        if root in placed:
            continue
        queue = deque([root])
        placed.add(root)
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(g.adj[u], key=lambda w: (len(by_colour[cg[w]]), w)):
                if w not in placed:
                    placed.add(w)
                    queue.append(w)
    phi = [-1] * g.n
    used = set()

    def extend(i):
        if i == len(order):
            return True
        u = order[i]
        mapped_nb = [w for w in g.adj[u] if phi[w] >= 0]
        for cand in by_colour[cg[u]]:
            if cand in used:
                continue
            if any(phi[w] not in h.adj[cand] for w in mapped_nb):
                continue
            if sum(1 for w in h.adj[cand] if w in used) != len(mapped_nb):
                continue
            phi[u] = cand
            used.add(cand)
            if extend(i + 1):
                return True
            used.discard(cand)
            phi[u] = -1
        return False

    return list(phi) if extend(0) else None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


# ---------------------------------------------------------------- small named graphs

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def disjoint_union(*graphs: Graph) -> tuple[Graph, list[int]]:
    """Disjoint union; the list gives each input's id offset."""
    offsets, edges, n = [], [], 0
    for h in graphs:
        offsets.append(n)
        edges.extend((u + n, v + n) for u, v in h.edges())
        n += h.n
    return Graph(n, edges), offsets
