"""Exact treewidth at small scale, tree decompositions and their torsos.

The exact solver works on elimination orderings.  Safe reduction rules
(simplicial and almost-simplicial vertices) shrink each component to a
kernel; the kernel is then decided for increasing widths by a depth-first
search over sets of eliminated vertices with a memo of failed states.
"""

from __future__ import annotations

from dataclasses import dataclass

from .budget import Budget
from .graph import Graph, components, contract_sets, is_connected


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: tuple  # bags[x] is a frozenset of vertices of the decomposed graph

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @classmethod
    def make(cls, tree_edges, bags) -> "TreeDecomposition":
        bags = tuple(frozenset(b) for b in bags)
        return cls(Graph(len(bags), tree_edges), bags)


@dataclass(frozen=True)
class TreewidthResult:
    value: int | None  # None when the instance is beyond the limit
    decomposition: TreeDecomposition | None = None
    kernel_sizes: tuple = ()

    @property
    def known(self) -> bool:
        return self.value is not None


# ---------------------------------------------------------------- validation

def _is_tree(t: Graph) -> bool:
    return t.n >= 1 and t.m == t.n - 1 and is_connected(t)


def validate_decomposition(g: Graph, td: TreeDecomposition) -> tuple[bool, list[str]]:
    """Check the three tree-decomposition conditions.  Violations are tagged
    ``(i)`` cover, ``(ii)`` edges, ``(iii)`` connectivity of occurrences."""
    if len(td.bags) != td.tree.n:
        raise ValueError("one bag per tree vertex is required")
    for x, bag in enumerate(td.bags):
        bad = [v for v in bag if not (0 <= v < g.n)]
        if bad:
            raise ValueError(f"bag {x} references vertices {bad} outside the graph")
    out = []
    if not _is_tree(td.tree):
        out.append("tree: the decomposition tree is not a tree")
    where = [[] for _ in range(g.n)]
    for x, bag in enumerate(td.bags):
        for v in bag:
            where[v].append(x)
    for v in g.vertices():
        if not where[v]:
            out.append(f"(i) vertex {v} is in no bag")
    for u, v in g.edges():
        if not any(v in td.bags[x] for x in where[u]):
            out.append(f"(ii) edge {u}-{v} is in no bag")
    for v in g.vertices():
        if len(where[v]) > 1 and not is_connected(td.tree, where[v]):
            out.append(f"(iii) bags containing vertex {v} are not connected in the tree")
    return not out, out


# ---------------------------------------------------------------- torsos

def _side(tree: Graph, x: int, y: int) -> set:
    """Tree vertices of the component of ``T - xy`` that contains ``x``."""
    seen, stack = {x}, [x]
    while stack:
        u = stack.pop()
        for w in tree.adj[u]:
            if w not in seen and not (u == x and w == y):
                seen.add(w)
                stack.append(w)
    return seen


def adhesions(td: TreeDecomposition) -> list[tuple[int, int, frozenset]]:
    return [(x, y, td.bags[x] & td.bags[y]) for x, y in td.tree.edges()]


def torso(g: Graph, td: TreeDecomposition, x: int) -> tuple[Graph, list[int]]:
    """The bag at ``x`` with every adhesion to a tree neighbour made a clique.

    Returns the torso relabelled to ``0..|bag|-1`` and the sorted bag, so
    that vertex ``i`` of the torso is ``ids[i]`` in ``g``.
    """
    if not (0 <= x < td.tree.n):
        raise ValueError(f"{x} is not a tree vertex")
    ids = sorted(td.bags[x])
    pos = {v: i for i, v in enumerate(ids)}
    edges = {(pos[u], pos[v]) for u in ids for v in g.adj[u] if v in pos and u < v}
    for y in td.tree.adj[x]:
        adh = sorted(td.bags[x] & td.bags[y])
        edges.update((pos[a], pos[b]) for i, a in enumerate(adh) for b in adh[i + 1:])
    return Graph(len(ids), edges), ids


def is_tight(g: Graph, td: TreeDecomposition) -> tuple[bool, dict | None]:
    """Tightness: for each tree edge ``xy`` there is a component ``C`` of
    ``chi(T_{y,x}) - chi(T_{x,y})`` such that every vertex of the adhesion
    has a neighbour in ``C``.  Returns the first failing oriented edge."""
    for a, b in td.tree.edges():
        for x, y in ((a, b), (b, a)):
            near = set().union(*(td.bags[z] for z in _side(td.tree, x, y)))
            far = set().union(*(td.bags[z] for z in _side(td.tree, y, x)))
            adh = td.bags[x] & td.bags[y]
            if not adh:
                continue
            ok = False
            for comp in components(g, far - near):
                c = set(comp)
                if all(g.adj[v] & c for v in adh):
                    ok = True
                    break
            if not ok:
                return False, {"x": x, "y": y, "adhesion": sorted(adh)}
    return True, None


# ---------------------------------------------------------------- lower bounds

def _has_biclique_subgraph(g: Graph, theta: int) -> tuple | None:
    """A (not necessarily induced) K_{theta,theta} subgraph, as two sides."""
    verts = [v for v in g.vertices() if g.degree(v) >= theta]

    def pick_a(A, start):
        if len(A) == theta:
            common = set(verts)
            for a in A:
                common &= g.adj[a]
            common -= set(A)
            if len(common) >= theta:
                return tuple(A), tuple(sorted(common)[:theta])
            return None
        for i in range(start, len(verts)):
            v = verts[i]
            if A:
                common = set.intersection(*(set(g.adj[a]) for a in A + [v]))
                if len(common - set(A) - {v}) < theta:
                    continue
            hit = pick_a(A + [v], i + 1)
            if hit:
                return hit
        return None

    return pick_a([], 0)


@dataclass(frozen=True)
class MinorBound:
    bound: int
    parts: tuple
    sides: tuple | None  # (A, B) as part indices when a biclique was found


def minor_lower_bound(g: Graph, parts, theta: int) -> MinorBound | None:
    """Certify ``tw(g) >= theta`` by a K_{theta,theta} minor.

    ``parts`` are the branch sets to contract.  Parts must be disjoint and
    connected; the contracted graph is searched for a K_{theta,theta}
    subgraph.  ``theta == 1`` needs only an edge.  Returns None when the
    contraction does not contain the target.
    """
    if theta < 1:
        raise ValueError("theta must be >= 1")
    if theta == 1:
        return MinorBound(1, (), None) if g.m else None
    h, groups = contract_sets(g, [sorted(p) for p in parts])
    hit = _has_biclique_subgraph(h, theta)
    if hit is None:
        return None
    return MinorBound(theta, tuple(tuple(x) for x in groups), hit)


def minor_min_width(g: Graph) -> int:
    """Contraction-degeneracy heuristic: a lower bound on treewidth."""
    adj = {v: set(g.adj[v]) for v in g.vertices()}
    best = 0
    while len(adj) > 1:
        v = min(adj, key=lambda u: (len(adj[u]), u))
        best = max(best, len(adj[v]))
        if not adj[v]:
            del adj[v]
            continue
        u = min(adj[v], key=lambda w: (len(adj[w]), w))
        for w in adj[v]:
            adj[w].discard(v)
            if w != u:
                adj[w].add(u)
                adj[u].add(w)
        adj[u].discard(u)
        del adj[v]
    return best


# ---------------------------------------------------------------- exact solver

def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _eliminate(adj: list, v: int) -> list:
    out = list(adj)
    nb = adj[v]
    for u in _bits(nb):
        out[u] = (out[u] | nb) & ~(1 << u) & ~(1 << v)
    out[v] = 0
    return out


def _min_fill_order(adj: list, alive: int) -> tuple[list, int]:
    order, width = [], 0
    while alive:
        best = None
        for v in _bits(alive):
            nb = adj[v]
            fill = 0
            for u in _bits(nb):
                fill += bin(nb & ~adj[u] & ~(1 << u)).count("1")
            key = (fill, bin(nb).count("1"), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        width = max(width, bin(adj[v]).count("1"))
        order.append(v)
        adj = _eliminate(adj, v)
        alive &= ~(1 << v)
    return order, width


def _reduce(adj: list, alive: int, low: int) -> tuple[list, list, int, int]:
    """Apply simplicial / almost-simplicial rules until none fires."""
    order = []
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            nb = adj[v]
            d = bin(nb).count("1")
            # vertices of nb that are not adjacent to some other vertex of nb
            defect = [u for u in _bits(nb) if (nb & ~adj[u] & ~(1 << u))]
            simplicial = not defect
            almost = False
            if not simplicial and d <= low:
                for w in _bits(nb):
                    rest = nb & ~(1 << w)
                    if all((rest & ~adj[u] & ~(1 << u)) == 0 for u in _bits(rest)):
                        almost = True
                        break
            if simplicial or almost:
                if simplicial:
                    low = max(low, d)
                order.append(v)
                adj = _eliminate(adj, v)
                alive &= ~(1 << v)
                changed = True
                break
    return adj, order, alive, low


def _decide(adj: list, alive: int, k: int, budget: Budget, failed: set):
    """An elimination order of width <= k for the alive part, or None."""
    if bin(alive).count("1") <= k + 1:
        return list(_bits(alive))
    if alive in failed:
        return None
    budget.tick()
    # a simplicial vertex of degree <= k can always be eliminated first
    for v in _bits(alive):
        nb = adj[v]
        if bin(nb).count("1") <= k and all((nb & ~adj[u] & ~(1 << u)) == 0 for u in _bits(nb)):
            rest = _decide(_eliminate(adj, v), alive & ~(1 << v), k, budget, failed)
            if rest is None:
                failed.add(alive)
                return None
            return [v] + rest
    cands = sorted((bin(adj[v]).count("1"), v) for v in _bits(alive))
    for d, v in cands:
        if d > k:
            break
        rest = _decide(_eliminate(adj, v), alive & ~(1 << v), k, budget, failed)
        if rest is not None:
            return [v] + rest
    failed.add(alive)
    return None


def _solve_component(g: Graph, comp: list, limit: int, budget: Budget):
    """(width, elimination order in g's ids, kernel size) or (None, None, size)."""
    idx = {v: i for i, v in enumerate(comp)}
    adj = [0] * len(comp)
    for v in comp:
        for u in g.adj[v]:
            adj[idx[v]] |= 1 << idx[u]
    alive = (1 << len(comp)) - 1
    sub = Graph(len(comp), [(idx[u], idx[v]) for u in comp for v in g.adj[u] if u < v])
    low = minor_min_width(sub)
    adj, pre, alive, low = _reduce(adj, alive, low)
    size = bin(alive).count("1")
    if size > limit:
        return None, None, size
    upper_order, upper = _min_fill_order(adj, alive)
    low = max(low, minor_min_width_mask(adj, alive))
    order = upper_order
    width = upper
    for k in range(low, upper):
        found = _decide(adj, alive, k, budget, set())
        if found is not None:
            order, width = found, k
            break
    full = [comp[i] for i in pre + order]
    return max(width, low), full, size


def minor_min_width_mask(adj: list, alive: int) -> int:
    verts = list(_bits(alive))
    pos = {v: i for i, v in enumerate(verts)}
    edges = [(pos[v], pos[u]) for v in verts for u in _bits(adj[v] & alive) if v < u]
    return minor_min_width(Graph(len(verts), edges))


def decomposition_from_order(g: Graph, order: list) -> TreeDecomposition:
    """Bags ``{v} + later neighbours`` of the filled graph; each bag hangs
    below the earliest-eliminated vertex among its later neighbours."""
    if sorted(order) != list(g.vertices()):
        raise ValueError("order must list every vertex once")
    rank = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.adj[v]) for v in g.vertices()}
    bags, parent = [], {}
    for v in order:
        later = adj[v]
        bags.append(frozenset(later | {v}))
        if later:
            parent[rank[v]] = rank[min(later, key=rank.__getitem__)]
        for u in later:
            adj[u] |= later - {u}
            adj[u].discard(v)
    if not order:
        return TreeDecomposition.make([], [frozenset()])
    edges = [(c, p) for c, p in parent.items()]
    roots = [i for i in range(len(order)) if i not in parent]
    edges.extend(zip(roots, roots[1:]))
    return TreeDecomposition.make(edges, bags)


def exact_treewidth(g: Graph, limit: int = 18, budget=None) -> TreewidthResult:
    """Exact treewidth with an optimal decomposition.

    ``limit`` bounds the size of each component's kernel after the safe
    reductions; beyond it the answer is unknown (``value is None``).
    """
    budget = Budget.coerce(budget)
    if g.n == 0:
        return TreewidthResult(-1, TreeDecomposition.make([], [frozenset()]))
    width, order, sizes = 0, [], []
    for comp in components(g):
        w, o, size = _solve_component(g, comp, limit, budget)
        sizes.append(size)
        if w is None:
            return TreewidthResult(None, None, tuple(sizes))
        width = max(width, w)
        order.extend(o)
    td = decomposition_from_order(g, order)
    assert td.width == width, (td.width, width)
    return TreewidthResult(width, td, tuple(sizes))
