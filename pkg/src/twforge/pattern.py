"""Detection of basic obstructions and related predicates.

All searches take a node-expansion budget.  They return a witness, ``None``
when the search finished without one (an exhaustive negative), or raise
:class:`BudgetExhausted` when they ran out of budget (unknown).  Every
witness can be re-checked by the ``check_*`` functions, which share no code
with the searches.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations

from .budget import Budget, BudgetExhausted
from .graph import (
    Graph,
    components,
    is_clique,
    is_connected,
    is_induced_cycle,
    is_stable,
    line_graph,
    subdivide,
)


# ---------------------------------------------------------------- cliques and bicliques

def find_clique(g: Graph, t: int, budget=None) -> tuple | None:
    """Lexicographically least set of ``t`` pairwise adjacent vertices."""
    budget = Budget.coerce(budget)
    if t <= 0:
        return ()
    cand = [v for v in g.vertices() if g.degree(v) >= t - 1]

    def grow(chosen, pool):
        if len(chosen) == t:
            return tuple(chosen)
        if len(chosen) + len(pool) < t:
            return None
        for i, v in enumerate(pool):
            budget.tick()
            if len(chosen) + len(pool) - i < t:
                return None
            rest = [u for u in pool[i + 1:] if u in g.adj[v]]
            found = grow(chosen + [v], rest)
            if found:
                return found
        return None

    return grow([], cand)


def _stable_subset(g: Graph, pool: list, size: int, budget: Budget) -> tuple | None:
    def grow(chosen, rest):
        if len(chosen) == size:
            return tuple(chosen)
        for i, v in enumerate(rest):
            budget.tick()
            if len(chosen) + len(rest) - i < size:
                return None
            found = grow(chosen + [v], [u for u in rest[i + 1:] if u not in g.adj[v]])
            if found:
                return found
        return None

    return grow([], list(pool))


def find_induced_biclique(g: Graph, t: int, budget=None) -> tuple | None:
    """Disjoint stable sets ``A, B`` of size ``t``, complete to each other.

    The side containing the smallest vertex is returned first.
    """
    budget = Budget.coerce(budget)
    if t <= 0:
        return ((), ())
    cand = [v for v in g.vertices() if g.degree(v) >= t]

    def grow(A, common, rest):
        if len(A) == t:
            B = _stable_subset(g, sorted(v for v in common if v > A[0]), t, budget)
            return (tuple(A), B) if B else None
        for i, v in enumerate(rest):
            budget.tick()
            if len(A) + len(rest) - i < t:
                return None
            nc = common & g.adj[v] if A else set(g.adj[v])
            if sum(1 for u in nc if u > (A[0] if A else v)) < t:
                continue
            found = grow(A + [v], nc, [u for u in rest[i + 1:] if u not in g.adj[v]])
            if found:
                return found
        return None

    return grow([], set(), cand)


def check_clique(g: Graph, X, t: int) -> bool:
    return len(set(X)) == t and is_clique(g, list(X))


def check_induced_biclique(g: Graph, A, B, t: int) -> bool:
    A, B = list(A), list(B)
    return (
        len(set(A)) == t
        and len(set(B)) == t
        and not set(A) & set(B)
        and is_stable(g, A)
        and is_stable(g, B)
        and all(b in g.adj[a] for a in A for b in B)
    )


# ---------------------------------------------------------------- template engine

@dataclass
class _Template:
    """Abstract structure to embed as an induced subgraph.

    ``fixed`` pairs of nodes must be adjacent; each link ``(a, b, lo, hi)``
    is realised by an induced path between the images of ``a`` and ``b``
    with between ``lo`` and ``hi`` edges (``hi=None`` for unbounded).  A
    link with ``lo == 0`` may collapse its two nodes onto one vertex.
    """

    size: int
    fixed: set = field(default_factory=set)
    links: list = field(default_factory=list)
    order: list = field(default_factory=list)

    def prepare(self):
        self.fixed_nb = defaultdict(set)
        for p in self.fixed:
            a, b = tuple(p)
            self.fixed_nb[a].add(b)
            self.fixed_nb[b].add(a)
        self.links_at = defaultdict(list)
        for j, (a, b, lo, hi) in enumerate(self.links):
            self.links_at[a].append(j)
            self.links_at[b].append(j)
        self.req = [
            len(self.fixed_nb[v]) + sum(1 for j in self.links_at[v] if self.links[j][2] >= 1)
            for v in range(self.size)
        ]
        if not self.order:
            self.order = _bfs_order(self.size, self.fixed_nb, self.links, self.links_at)

    def min_vertices(self) -> int:
        return self.size - sum(1 for l in self.links if l[2] == 0) + sum(max(0, l[2] - 1) for l in self.links)


def _bfs_order(size, fixed_nb, links, links_at) -> list:
    rel = defaultdict(set)
    for v in range(size):
        rel[v] |= fixed_nb[v]
        for j in links_at[v]:
            a, b = links[j][:2]
            rel[v].add(b if a == v else a)
    order, seen = [], set()
    for root in sorted(range(size), key=lambda v: (-len(rel[v]), v)):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(rel[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


class _Embedder:
    def __init__(self, g: Graph, tpl: _Template, budget: Budget):
        self.g = g
        self.t = tpl
        self.budget = budget
        self.phi = {}
        self.hosted = defaultdict(list)
        self.used = set()
        self.intended = {}
        self.route = {}
        # forced[d] = c: node d must later collapse onto node c, because an
        # adjacency was accepted on the promise of that collapse
        self.forced = {}
        self.zero = defaultdict(set)
        for a, b, lo, hi in tpl.links:
            if lo == 0:
                self.zero[a].add(b)
                self.zero[b].add(a)

    # state helpers -------------------------------------------------------
    def _add(self, x, nbrs):
        self.used.add(x)
        self.intended[x] = set(nbrs)
        for w in nbrs:
            self.intended[w].add(x)

    def _drop(self, x):
        for w in self.intended.pop(x):
            self.intended[w].discard(x)
        self.used.discard(x)

    def _join(self, x, y):
        self.intended[x].add(y)
        self.intended[y].add(x)

    def _unjoin(self, x, y):
        self.intended[x].discard(y)
        self.intended[y].discard(x)

    def _placed_partner(self, j, b):
        a = self.t.links[j][0] if self.t.links[j][1] == b else self.t.links[j][1]
        return a if a in self.phi else None

    def _host(self, b, x, direct, promises):
        self.phi[b] = x
        self.hosted[x].append(b)
        for j in direct:
            self.route[j] = "direct"
        for d, c in promises.items():
            self.forced[d] = c

    def _unhost(self, b, x, direct, promises):
        for d in promises:
            del self.forced[d]
        for j in direct:
            del self.route[j]
        self.hosted[x].remove(b)
        del self.phi[b]

    # main recursion ------------------------------------------------------
    def run(self) -> bool:
        return self._place(0)

    def _place(self, i) -> bool:
        t = self.t
        if i == len(t.order):
            return True
        b = t.order[i]
        if b in self.forced:
            return self._collapse(b, self.forced[b], i)
        grow_link = None
        for j in t.links_at[b]:
            if j not in self.route and self._placed_partner(j, b) is not None:
                grow_link = j
                break
        if grow_link is not None:
            a = self._placed_partner(grow_link, b)
            if t.links[grow_link][2] == 0 and self._collapse(b, a, i):
                return True
            for x in self._grow(b, grow_link, a):
                if self._finish_node(b, i):
                    return True
            return False
        placed_fixed = [self.phi[a] for a in t.fixed_nb[b] if a in self.phi]
        if placed_fixed:
            pool = set.intersection(*(set(self.g.adj[v]) for v in placed_fixed)) - self.used
        else:
            pool = [v for v in self.g.vertices() if v not in self.used]
        for x in sorted(pool):
            self.budget.tick()
            if self.g.degree(x) < t.req[b]:
                continue
            verdict = self._host_check(b, x, prev=None, skip=None)
            if verdict is None:
                continue
            direct, promises = verdict
            self._add(x, self._intended_for(b, direct, None))
            self._host(b, x, direct, promises)
            if self._finish_node(b, i):
                return True
            self._unhost(b, x, direct, promises)
            self._drop(x)
        return False

    def _collapse(self, b, c, i) -> bool:
        """Place ``b`` on the vertex already hosting ``c`` (a zero-length link)."""
        t = self.t
        s = self.phi[c]
        if len(self.hosted[s]) != 1:
            return False
        j = next((j for j in t.links_at[b] if t.links[j][2] == 0 and c in t.links[j][:2] and j not in self.route), None)
        if j is None:
            return False
        for f in t.fixed_nb[b]:
            if f in self.phi and self.phi[f] not in self.g.adj[s]:
                return False
        self.budget.tick()
        self.phi[b] = s
        self.hosted[s].append(b)
        self.route[j] = (s,)
        ok = self._finish_node(b, i)
        if not ok:
            del self.route[j]
            self.hosted[s].remove(b)
            del self.phi[b]
        return ok

    def _finish_node(self, b, i) -> bool:
        pending = [j for j in self.t.links_at[b] if j not in self.route and self._placed_partner(j, b) is not None]
        return self._route_all(pending, 0, i)

    def _route_all(self, pending, k, i) -> bool:
        if k == len(pending):
            return self._place(i + 1)
        j = pending[k]
        a0, b0, lo, hi = self.t.links[j]
        if j in self.route:  # became direct as a side effect
            return self._route_all(pending, k + 1, i)
        s, tgt = self.phi[a0], self.phi[b0]
        if s == tgt:
            return False
        for path in self._routes(s, tgt, lo, hi):
            self.route[j] = path
            if self._route_all(pending, k + 1, i):
                return True
            del self.route[j]
        return False

    # node hosting ---------------------------------------------------------
    def _intended_for(self, b, direct, prev):
        out = set()
        if prev is not None:
            out.add(prev)
        for a in self.t.fixed_nb[b]:
            if a in self.phi:
                out.add(self.phi[a])
        for j in direct:
            out.add(self.phi[self._placed_partner(j, b)])
        return out

    def _promise(self, b, w, promises):
        """Explain an adjacency between a new host of ``b`` and used vertex ``w``
        by collapses still to come: a fixed partner of ``b`` may collapse onto
        a node at ``w``, or some unplaced ``d`` collapsing onto ``b`` must be
        fixed-adjacent to a node at ``w`` or to an unplaced ``d2`` collapsing
        onto a node at ``w``."""
        t = self.t

        def free(d, onto):
            cur = promises.get(d, self.forced.get(d))
            return d not in self.phi and cur in (None, onto)

        for a in self.hosted[w]:
            for d2 in sorted(t.fixed_nb[b] & self.zero[a]):
                if free(d2, a):
                    return {d2: a}
        for d in sorted(self.zero[b]):
            if not free(d, b):
                continue
            for a in self.hosted[w]:
                if a in t.fixed_nb[d]:
                    return {d: b}
                for d2 in sorted(self.zero[a]):
                    if d2 != d and d2 in t.fixed_nb[d] and free(d2, a):
                        return {d: b, d2: a}
        return None

    def _host_check(self, b, x, prev, skip):
        """``(direct links, promised collapses)`` if ``x`` can host ``b``, else None."""
        g, t = self.g, self.t
        touching = g.adj[x] & self.used
        explained = set()
        if prev is not None:
            explained.add(prev)
        for a in t.fixed_nb[b]:
            if a in self.phi:
                if self.phi[a] not in touching:
                    return None
                explained.add(self.phi[a])
        direct = []
        promises = {}
        for w in sorted(touching - explained):
            choice = None
            for j in t.links_at[b]:
                if j == skip or j in self.route or j in direct or t.links[j][2] > 1:
                    continue
                a = self._placed_partner(j, b)
                if a is not None and self.phi[a] == w:
                    choice = j
                    break
            if choice is not None:
                direct.append(choice)
                continue
            extra = self._promise(b, w, promises)
            if extra is None:
                return None
            promises.update(extra)
        promises = {d: c for d, c in promises.items() if self.forced.get(d) != c}
        return direct, promises

    def _grow(self, b, j, a):
        """Hosts for ``b`` found by growing link ``j`` out of ``phi[a]``.

        Each yield leaves the node placed and the path recorded; the state is
        rolled back when the generator resumes.
        """
        g, t = self.g, self.t
        lo, hi = t.links[j][2], t.links[j][3]
        s = self.phi[a]
        forward = t.links[j][0] == a
        path = [s]

        def rec():
            tip = path[-1]
            length = len(path) - 1
            for y in sorted(g.adj[tip]):
                if y in self.used:
                    continue
                self.budget.tick()
                if length + 1 >= lo and (hi is None or length + 1 <= hi) and g.degree(y) >= t.req[b]:
                    verdict = self._host_check(b, y, prev=tip, skip=j)
                    if verdict is not None:
                        direct, promises = verdict
                        self._add(y, self._intended_for(b, direct, tip))
                        self._host(b, y, direct, promises)
                        full = tuple(path) + (y,)
                        self.route[j] = full if forward else tuple(reversed(full))
                        yield y
                        del self.route[j]
                        self._unhost(b, y, direct, promises)
                        self._drop(y)
                if hi is not None and length + 2 > hi:
                    continue
                if g.adj[y] & self.used != {tip}:
                    continue
                self._add(y, {tip})
                path.append(y)
                yield from rec()
                path.pop()
                self._drop(y)

        yield from rec()

    # link routing ---------------------------------------------------------
    def _free_dist(self, s, tgt):
        g = self.g
        dist = {tgt: 0}
        queue = deque([tgt])
        ends = {s, tgt}
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in dist or w in self.used:
                    continue
                if not (g.adj[w] & self.used) <= ends:
                    continue
                dist[w] = dist[u] + 1
                queue.append(w)
        return dist

    def _routes(self, s, tgt, lo, hi):
        """Induced paths from ``s`` to ``tgt`` through unused vertices."""
        g = self.g
        dist = self._free_dist(s, tgt)
        path = [s]

        def rec():
            tip = path[-1]
            length = len(path) - 1
            for y in sorted(g.adj[tip], key=lambda w: (dist.get(w, math.inf), w)):
                if y in self.used or y not in dist:
                    continue
                self.budget.tick()
                extra = (g.adj[y] & self.used) - {tip}
                if extra - {tgt}:
                    continue
                if tgt in extra:
                    total = length + 2
                    if total >= lo and (hi is None or total <= hi):
                        self._add(y, {tip})
                        self._join(y, tgt)
                        yield tuple(path) + (y, tgt)
                        self._unjoin(y, tgt)
                        self._drop(y)
                    continue
                if hi is not None and length + 1 + dist[y] > hi:
                    continue
                self._add(y, {tip})
                path.append(y)
                yield from rec()
                path.pop()
                self._drop(y)

        yield from rec()


def _threads(h: Graph):
    """Split ``h`` into threads between vertices of degree != 2, plus pure cycles."""
    nodes = [v for v in h.vertices() if h.degree(v) != 2]
    seen = set()
    threads = []
    for u in nodes:
        for w in sorted(h.adj[u]):
            if (u, w) in seen:
                continue
            seq = [u, w]
            seen.add((u, w))
            seen.add((w, u))
            while h.degree(seq[-1]) == 2:
                nxt = next(x for x in sorted(h.adj[seq[-1]]) if (seq[-1], x) not in seen)
                seen.add((seq[-1], nxt))
                seen.add((nxt, seq[-1]))
                seq.append(nxt)
            threads.append(seq)
    cycles = []
    for v in h.vertices():
        if h.degree(v) != 2 or any((v, w) in seen for w in h.adj[v]):
            continue
        seq = [v]
        prev, cur = None, v
        while True:
            nxt = min(x for x in h.adj[cur] if x != prev) if prev is None else next(x for x in h.adj[cur] if x != prev)
            seen.add((cur, nxt))
            seen.add((nxt, cur))
            if nxt == v:
                break
            seq.append(nxt)
            prev, cur = cur, nxt
        cycles.append(seq)
    return nodes, threads, cycles


def _split(total: int, k: int, L: int) -> list:
    return [L] * (k - 1) + [total - L * (k - 1)]


# ---------------------------------------------------------------- induced subdivisions

@dataclass
class SubdivisionWitness:
    branch: dict  # vertex of h -> vertex of g
    paths: dict  # edge (u, v) of h with u < v -> path of g from branch[u] to branch[v]

    @property
    def vertices(self) -> frozenset:
        out = set(self.branch.values())
        for p in self.paths.values():
            out.update(p)
        return frozenset(out)


def _subdivision_template(h: Graph, L: int):
    nodes, threads, cycles = _threads(h)
    node_id = {v: i for i, v in enumerate(nodes)}
    tpl = _Template(size=len(nodes))
    pieces = []  # (h-vertex sequence, list of link indices covering it in order)
    for seq in threads:
        k = len(seq) - 1
        if seq[0] == seq[-1]:
            mid = seq[k // 2]
            m = tpl.size
            tpl.size += 1
            node_id[("mid", len(pieces))] = m
            tpl.links.append((node_id[seq[0]], m, (k // 2) * L, None))
            tpl.links.append((m, node_id[seq[-1]], (k - k // 2) * L, None))
            pieces.append((seq, [len(tpl.links) - 2, len(tpl.links) - 1], [k // 2, k - k // 2]))
        else:
            tpl.links.append((node_id[seq[0]], node_id[seq[-1]], k * L, None))
            pieces.append((seq, [len(tpl.links) - 1], [k]))
    for cyc in cycles:
        k = len(cyc)
        a, b = tpl.size, tpl.size + 1
        tpl.size += 2
        seq = cyc + [cyc[0]]
        tpl.links.append((a, b, (k // 2) * L, None))
        tpl.links.append((b, a, (k - k // 2) * L, None))
        pieces.append((seq, [len(tpl.links) - 2, len(tpl.links) - 1], [k // 2, k - k // 2]))
    tpl.prepare()
    return tpl, nodes, pieces


def find_induced_subdivision(g: Graph, h: Graph, min_edge_len: int = 1, budget=None) -> SubdivisionWitness | None:
    """Induced subgraph of ``g`` that is a subdivision of ``h``.

    Every edge of ``h`` becomes a path of at least ``min_edge_len`` edges.
    Branch images are chosen by anchored backtracking and connecting paths are
    grown as induced paths that touch the structure only at their ends.
    """
    budget = Budget.coerce(budget)
    L = max(1, min_edge_len)
    tpl, nodes, pieces = _subdivision_template(h, L)
    if tpl.min_vertices() > g.n:
        return None
    emb = _Embedder(g, tpl, budget)
    if not emb.run():
        return None
    branch = {v: emb.phi[i] for i, v in enumerate(nodes)}
    paths = {}
    for seq, link_ids, counts in pieces:
        full = []
        for j, cnt in zip(link_ids, counts):
            a, b = tpl.links[j][:2]
            r = emb.route[j]
            r = (emb.phi[a], emb.phi[b]) if r == "direct" else r
            full.extend(r if not full else r[1:])
        k = len(seq) - 1
        chunks = _split(len(full) - 1, k, L)
        pos = 0
        for i in range(k):
            u, w = seq[i], seq[i + 1]
            part = tuple(full[pos: pos + chunks[i] + 1])
            pos += chunks[i]
            branch.setdefault(u, part[0])
            branch.setdefault(w, part[-1])
            paths[(u, w) if u < w else (w, u)] = part if u < w else tuple(reversed(part))
    return SubdivisionWitness(branch, paths)


def check_induced_subdivision(g: Graph, h: Graph, w: SubdivisionWitness, min_edge_len: int = 1) -> list[str]:
    """Violations of ``w`` being an induced subdivision of ``h`` in ``g``."""
    out = []
    if sorted(w.branch) != list(h.vertices()):
        out.append("branch map does not cover V(h)")
        return out
    images = list(w.branch.values())
    if len(set(images)) != len(images):
        out.append("branch map is not injective")
    if sorted(w.paths) != h.edges():
        out.append("paths do not match E(h)")
        return out
    interiors = set()
    edges = set()
    for (u, v), p in w.paths.items():
        if p[0] != w.branch[u] or p[-1] != w.branch[v]:
            out.append(f"path for {u}{v} has wrong ends")
        if len(p) - 1 < min_edge_len:
            out.append(f"path for {u}{v} is shorter than {min_edge_len}")
        for a, b in zip(p, p[1:]):
            if b not in g.adj[a]:
                out.append(f"path for {u}{v} uses a non-edge {a}{b}")
            edges.add((min(a, b), max(a, b)))
        inner = set(p[1:-1])
        if inner & interiors or inner & set(images) or len(inner) != len(p) - 2:
            out.append(f"path for {u}{v} is not internally disjoint")
        interiors |= inner
    X = set(images) | interiors
    actual = {(a, b) for a in X for b in g.adj[a] if b in X and a < b}
    if actual != edges:
        out.append("g[X] has edges outside the subdivision")
    return out


# ---------------------------------------------------------------- line graphs of subdivisions

@dataclass
class LineSubdivisionWitness:
    lengths: dict  # edge of h -> number of edges replacing it
    edge_map: dict  # edge of the subdivision H' (u < v, ids of subdivide(h, lengths)) -> vertex of g

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.edge_map.values())


def _line_template(h: Graph, L: int):
    if h.max_degree() > 3:
        raise ValueError("line-graph templates need maximum degree at most 3")
    nodes, threads, cycles = _threads(h)
    tpl = _Template(size=0)
    corner = {}  # (thread index, end) -> node
    triangle = defaultdict(list)
    for ti, seq in enumerate(threads):
        for end, v in ((0, seq[0]), (1, seq[-1])):
            corner[(ti, end)] = tpl.size
            triangle[v].append(tpl.size)
            tpl.size += 1
    for v, cs in triangle.items():
        for a, b in combinations(cs, 2):
            tpl.fixed.add(frozenset((a, b)))
    pieces = []
    for ti, seq in enumerate(threads):
        k = len(seq) - 1
        tpl.links.append((corner[(ti, 0)], corner[(ti, 1)], k * L - 1, None))
        pieces.append((seq, [len(tpl.links) - 1], False))
    for cyc in cycles:
        k = len(cyc)
        a, b = tpl.size, tpl.size + 1
        tpl.size += 2
        tot = k * L
        tpl.links.append((a, b, tot // 2, None))
        tpl.links.append((b, a, tot - tot // 2, None))
        pieces.append((cyc + [cyc[0]], [len(tpl.links) - 2, len(tpl.links) - 1], True))
    tpl.prepare()
    # Place one triangle at a time; corners that may collapse onto an
    # already placed corner go first so merges are decided before their
    # triangle partners look at the structure.
    branch_order = []
    seen = set()
    for root in sorted(triangle, key=lambda v: (-h.degree(v), v)):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            branch_order.append(u)
            for seq in threads:
                for x, y in ((seq[0], seq[-1]), (seq[-1], seq[0])):
                    if x == u and y not in seen:
                        seen.add(y)
                        queue.append(y)
    order = []
    placed = set()
    for v in branch_order:
        cs = triangle[v]

        def rank(c):
            linked = [tpl.links[j] for j in tpl.links_at[c]]
            partner = [l[0] if l[1] == c else l[1] for l in linked]
            return (0 if any(p in placed for p in partner) else 1, c)

        for c in sorted(cs, key=rank):
            order.append(c)
            placed.add(c)
    for c in range(tpl.size):
        if c not in placed:
            order.append(c)
    tpl.order = order
    return tpl, threads, corner, pieces


def find_induced_line_subdivision(g: Graph, h: Graph, min_edge_len: int = 1, budget=None) -> LineSubdivisionWitness | None:
    """Induced subgraph of ``g`` isomorphic to the line graph of a subdivision of ``h``.

    ``h`` must have maximum degree three.  Degree-3 vertices of ``h`` are
    anchored on triangles of ``g``; threads become induced paths between
    triangle corners, and a corner may be shared by two triangles when the
    thread is a single edge.
    """
    budget = Budget.coerce(budget)
    L = max(1, min_edge_len)
    tpl, threads, corner, pieces = _line_template(h, L)
    if tpl.size == 0 or tpl.min_vertices() > g.n:
        return None
    emb = _Embedder(g, tpl, budget)
    if not emb.run():
        return None
    lengths = {}
    chunked = []
    for seq, link_ids, cyclic in pieces:
        full = []
        for j in link_ids:
            a, b = tpl.links[j][:2]
            r = emb.route[j]
            r = (emb.phi[a], emb.phi[b]) if r == "direct" else r
            full.extend(r if not full else r[1:])
        if cyclic:
            full = full[:-1]
        k = len(seq) - 1
        chunks = _split(len(full), k, L)
        pos = 0
        for i in range(k):
            u, w = seq[i], seq[i + 1]
            e = (u, w) if u < w else (w, u)
            lengths[e] = chunks[i]
            part = full[pos: pos + chunks[i]]
            pos += chunks[i]
            chunked.append((u, w, part))
    sub, sub_paths = subdivide(h, lengths)
    edge_map = {}
    for u, w, part in chunked:
        e = (u, w) if u < w else (w, u)
        p = sub_paths[e]
        if u > w:
            p = tuple(reversed(p))
        for i, gv in enumerate(part):
            a, b = p[i], p[i + 1]
            edge_map[(min(a, b), max(a, b))] = gv
    return LineSubdivisionWitness(lengths, edge_map)


def check_line_subdivision(g: Graph, h: Graph, w: LineSubdivisionWitness, min_edge_len: int = 1) -> list[str]:
    """Violations of ``w`` describing an induced copy of L(subdivision of h)."""
    out = []
    if sorted(w.lengths) != h.edges():
        return ["lengths do not cover E(h)"]
    if any(l < min_edge_len for l in w.lengths.values()):
        out.append(f"an edge is subdivided into fewer than {min_edge_len} edges")
    sub, _ = subdivide(h, w.lengths)
    lg, edges = line_graph(sub)
    if sorted(w.edge_map) != sorted(edges):
        return out + ["edge map does not cover the subdivision"]
    image = [w.edge_map[e] for e in edges]
    if len(set(image)) != len(image):
        out.append("edge map is not injective")
        return out
    pos = {v: i for i, v in enumerate(image)}
    for i, v in enumerate(image):
        actual = {pos[x] for x in g.adj[v] if x in pos}
        if actual != set(lg.adj[i]):
            out.append(f"adjacency mismatch at g-vertex {v}")
            break
    return out


# ---------------------------------------------------------------- feebleness

def is_feeble(g: Graph) -> tuple[bool, dict | None]:
    """Feebleness test.

    Feeble means: some vertex ``v`` with ``g - N[v]`` disconnected (at least
    two components), or a set of at most two branch vertices whose removal
    leaves maximum degree at most two.  Returns the flag and a witness.
    """
    if g.n == 0 or not is_connected(g):
        raise ValueError("feebleness is defined for connected non-empty graphs")
    for v in g.vertices():
        rest = set(g.vertices()) - g.adj[v] - {v}
        if len(components(g, rest)) >= 2:
            return True, {"vertex": v}
    branch = [v for v in g.vertices() if g.degree(v) > 2]
    for size in range(3):
        for S in combinations(branch, size):
            gone = set(S)
            if all(len(g.adj[u] - gone) <= 2 for u in g.vertices() if u not in gone):
                return True, {"branch_set": list(S)}
    return False, None


# ---------------------------------------------------------------- holes

def find_long_hole(g: Graph, lam: int, budget=None) -> tuple | None:
    """An induced cycle with more than ``lam`` vertices (and at least 4).

    The cycle is returned starting at its smallest vertex.
    """
    budget = Budget.coerce(budget)
    need = max(lam + 1, 4)
    for s in g.vertices():
        allowed = {v for v in g.vertices() if v > s}
        path = [s]
        inpath = {s}

        def rec():
            tip = path[-1]
            for y in sorted(g.adj[tip]):
                if y not in allowed or y in inpath:
                    continue
                budget.tick()
                touch = g.adj[y] & inpath
                if touch - {tip, s}:
                    continue
                if s in touch and len(path) > 1:
                    if len(path) + 1 >= need:
                        return tuple(path) + (y,)
                    continue
                path.append(y)
                inpath.add(y)
                found = rec()
                path.pop()
                inpath.discard(y)
                if found:
                    return found
            return None

        found = rec()
        if found:
            return found
    return None


def is_hole(g: Graph, cycle) -> bool:
    return len(cycle) >= 4 and is_induced_cycle(g, list(cycle))


# ---------------------------------------------------------------- short subdivisions of K_m as subgraphs

@dataclass
class ShortSubdivisionWitness:
    branch: tuple
    paths: dict  # (i, j) index pair -> path from branch[i] to branch[j]


def find_short_complete_subdivision(g: Graph, m: int, d: int, budget=None) -> ShortSubdivisionWitness | None:
    """A (<= d)-subdivision of K_m as a subgraph (paths need not be induced)."""
    budget = Budget.coerce(budget)
    pairs = list(combinations(range(m), 2))
    cand = [v for v in g.vertices() if g.degree(v) >= m - 1]
    branch = []
    used = set()
    paths = {}

    def short_paths(s, t):
        path = [s]

        def rec():
            tip = path[-1]
            if len(path) - 1 >= d:
                return
            for y in sorted(g.adj[tip]):
                budget.tick()
                if y == t:
                    yield tuple(path) + (t,)
                    continue
                if y in used or y in path:
                    continue
                if len(path) >= d:
                    continue
                path.append(y)
                yield from rec()
                path.pop()

        found = sorted(rec(), key=len)
        return found

    def route(k):
        if k == len(pairs):
            return True
        i, j = pairs[k]
        for p in short_paths(branch[i], branch[j]):
            inner = set(p[1:-1])
            if inner & used:
                continue
            used.update(inner)
            paths[(i, j)] = p
            if route(k + 1):
                return True
            used.difference_update(inner)
            del paths[(i, j)]
        return False

    def choose(start):
        if len(branch) == m:
            return route(0)
        for idx in range(start, len(cand)):
            budget.tick()
            v = cand[idx]
            branch.append(v)
            used.add(v)
            if choose(idx + 1):
                return True
            used.discard(v)
            branch.pop()
        return False

    if m < 2:
        return ShortSubdivisionWitness(tuple(cand[:m]), {}) if len(cand) >= m else None
    if choose(0):
        return ShortSubdivisionWitness(tuple(branch), dict(paths))
    return None


def check_short_complete_subdivision(g: Graph, w: ShortSubdivisionWitness, m: int, d: int) -> list[str]:
    out = []
    if len(set(w.branch)) != m:
        return ["need m distinct branch vertices"]
    seen = set(w.branch)
    for i, j in combinations(range(m), 2):
        p = w.paths.get((i, j))
        if p is None:
            out.append(f"missing path {i}{j}")
            continue
        if p[0] != w.branch[i] or p[-1] != w.branch[j] or len(p) - 1 > d:
            out.append(f"path {i}{j} has wrong ends or is too long")
        if any(p[k + 1] not in g.adj[p[k]] for k in range(len(p) - 1)):
            out.append(f"path {i}{j} uses a non-edge")
        inner = set(p[1:-1])
        if inner & seen or len(inner) != len(p) - 2:
            out.append(f"path {i}{j} is not internally disjoint from the rest")
        seen |= inner
    return out


# ---------------------------------------------------------------- cleanness

@dataclass
class ObstructionReport:
    kind: str  # clique | biclique | wall-subdivision | line-of-wall-subdivision | none
    witness: object = None
    budget_exhausted: bool = False
    notes: list = field(default_factory=list)

    @property
    def clean(self):
        """True (clean), False (obstruction found) or None (unknown)."""
        if self.kind != "none":
            return False
        return None if self.budget_exhausted else True


def is_t_clean(g: Graph, t: int, budget=None, davies: tuple | None = None) -> ObstructionReport:
    """Search the four t-basic obstructions and report the first one found.

    Walls and their line graphs are searched before bicliques and cliques:
    the line graph of a subdivided wall is full of triangles, so a clique
    search first would hide the more informative witness for ``t = 3``.
    Each kind gets its own budget of the same size; ``notes`` carries the
    expansions used per kind.

    ``davies=(rho, sigma, theta)`` licenses skipping the wall searches for
    ``t >= 4`` once ``g`` is confirmed to be exactly that Davies graph: every
    connected induced subgraph of it is feeble, while subdivisions of the
    4x4-wall and their line graphs are not.
    """
    from .generators import make_davies, make_wall

    if t < 2:
        raise ValueError("t must be >= 2")
    limit = budget.limit if isinstance(budget, Budget) else budget
    report = ObstructionReport("none")
    skip_walls = False
    if davies is not None and t >= 4:
        ref, _ = make_davies(*davies)
        if ref == g:
            skip_walls = True
            report.notes.append(f"walls excluded: g is J{tuple(davies)}, whose connected induced subgraphs are feeble")
        else:
            report.notes.append("davies hint ignored: graph differs from the named Davies graph")
    wall, _ = make_wall(t)

    def clique(b):
        X = find_clique(g, t, b)
        return {"vertices": list(X)} if X else None

    def biclique(b):
        AB = find_induced_biclique(g, t, b)
        return {"A": list(AB[0]), "B": list(AB[1])} if AB else None

    searches = []
    if not skip_walls:
        searches.append(("wall-subdivision", lambda b: find_induced_subdivision(g, wall, 1, b)))
        searches.append(("line-of-wall-subdivision", lambda b: find_induced_line_subdivision(g, wall, 1, b)))
    searches.append(("biclique", biclique))
    searches.append(("clique", clique))
    for kind, run in searches:
        b = Budget(limit)
        try:
            w = run(b)
        except BudgetExhausted:
            report.budget_exhausted = True
            report.notes.append(f"budget exhausted in {kind} search")
            continue
        finally:
            report.notes.append(f"{kind}: {b.used} expansions")
        if w is not None:
            return ObstructionReport(kind, w, notes=report.notes)
    return report
