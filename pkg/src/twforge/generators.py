"""Constructors for the named graph families, each with a role map.

Role maps are part of the output: certificates elsewhere refer to roles such
as hubs, marked widening positions, roots and stems rather than raw ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, Path, is_connected


# ---------------------------------------------------------------- walls

def make_wall(t: int) -> tuple[Graph, dict]:
    """The (t x t)-wall on ``2t^2 - 2t`` vertices.

    Canonical layout: ``t`` rows, each a path on columns ``0..2t-3``.  Rows
    ``i`` and ``i+1`` are joined by vertical edges at the columns ``j`` with
    ``j = i (mod 2)`` and at both end columns.  For ``t >= 4`` the top and
    bottom gaps drop the inner vertical of a half brick, so no corner
    vertex sits on a 4-cycle; otherwise the wall and its subdivisions would
    be feeble.  Vertex ``(i, j)`` has id ``i*(2t-2) + j``.  The result is
    planar, bipartite (colour ``i+j`` mod 2), and has maximum degree three.
    """
    if t < 2:
        raise ValueError("a wall needs t >= 2")
    width = 2 * t - 2
    vid = lambda i, j: i * width + j
    edges = []
    for i in range(t):
        edges.extend((vid(i, j), vid(i, j + 1)) for j in range(width - 1))
    for i in range(t - 1):
        cols = {j for j in range(width) if j % 2 == i % 2} | {0, width - 1}
        if t >= 4 and i in (0, t - 2):
            cols -= {j for j in cols if 0 < j < width - 1 and (j - 1 in cols or j + 1 in cols)}
        edges.extend((vid(i, j), vid(i + 1, j)) for j in sorted(cols))
    coords = {vid(i, j): (i, j) for i in range(t) for j in range(width)}
    return Graph(t * width, edges), {"coords": coords, "rows": t, "cols": width}


# ---------------------------------------------------------------- star forests

@dataclass(frozen=True)
class StarComponent:
    root: int
    stems: tuple  # each stem is a Path running leaf -> root

    @property
    def vertices(self) -> frozenset:
        out = {self.root}
        for s in self.stems:
            out.update(s)
        return frozenset(out)

    @property
    def leaves(self) -> frozenset:
        return frozenset(s[0] for s in self.stems)

    @property
    def lengths(self) -> tuple:
        return tuple(len(s) - 1 for s in self.stems)


@dataclass(frozen=True)
class RootedStarForest:
    """A rooted subdivided star forest living inside ``host``."""

    host: Graph
    components: tuple = field(default_factory=tuple)

    @property
    def roots(self) -> tuple:
        return tuple(c.root for c in self.components)

    @property
    def vertices(self) -> frozenset:
        out = set()
        for c in self.components:
            out |= c.vertices
        return frozenset(out)

    @property
    def leaves(self) -> frozenset:
        out = set()
        for c in self.components:
            out |= c.leaves
        return frozenset(out)

    @property
    def reach(self) -> int:
        return max((l for c in self.components for l in c.lengths), default=0)

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def max_degree(self) -> int:
        return max((len(c.stems) for c in self.components), default=0)

    def component_of(self, root: int) -> StarComponent:
        for c in self.components:
            if c.root == root:
                return c
        raise KeyError(root)

    def violations(self, induced: bool = True) -> list[str]:
        """Structural problems with the claimed stems inside ``host``."""
        out = []
        seen = set()
        g = self.host
        for c in self.components:
            verts = c.vertices
            if verts & seen:
                out.append(f"component at root {c.root} overlaps another component")
            seen |= verts
            body = set()
            for s in c.stems:
                if len(s) < 2 or s[-1] != c.root:
                    out.append(f"stem {s} does not run from a leaf to root {c.root}")
                    continue
                if any(s[i + 1] not in g.adj[s[i]] for i in range(len(s) - 1)):
                    out.append(f"stem {s} is not a path of the host")
                inner = set(s[:-1])
                if inner & body or len(inner) != len(s) - 1:
                    out.append(f"stem {s} meets another stem away from the root")
                body |= inner
            claimed = {(min(a, b), max(a, b)) for s in c.stems for a, b in zip(s, s[1:])}
            if induced:
                actual = {(u, v) for u in verts for v in g.adj[u] if v in verts and u < v}
                if actual != claimed:
                    out.append(f"component at root {c.root} is not induced as claimed")
        if induced:
            comps = list(self.components)
            for i in range(len(comps)):
                for j in range(i + 1, len(comps)):
                    a, b = comps[i].vertices, comps[j].vertices
                    if any(g.adj[u] & b for u in a):
                        out.append(f"components at roots {comps[i].root} and {comps[j].root} are adjacent")
        return out


def star_forest_from_lengths(stem_lengths: list) -> RootedStarForest:
    """Forest whose ``c``-th component has stems of the given lengths.

    A component with no stems is a single root vertex.  Ids: each component's
    root first, then its stems outward from the root.
    """
    edges = []
    comps = []
    n = 0
    for lengths in stem_lengths:
        root = n
        n += 1
        stems = []
        for length in lengths:
            if length < 1:
                raise ValueError("stem length must be >= 1")
            out = list(range(n, n + length))
            n += length
            seq = [root] + out
            edges.extend(zip(seq, seq[1:]))
            stems.append(tuple(reversed(seq)))
        comps.append(StarComponent(root, tuple(stems)))
    return RootedStarForest(Graph(n, edges), tuple(comps))


def make_star_forest(theta: int, delta: int, lam: int) -> RootedStarForest:
    """``theta`` disjoint copies of S_{delta,lam}, roots marked."""
    if theta < 1:
        raise ValueError("theta must be >= 1")
    if delta < 0:
        raise ValueError("delta must be >= 0")
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    return star_forest_from_lengths([[lam] * delta for _ in range(theta)])


# ---------------------------------------------------------------- Davies graphs

@dataclass(frozen=True)
class DaviesRoles:
    rho: int
    sigma: int
    theta: int
    paths: tuple  # paths[j] is P_j as a tuple of ids
    marks: tuple  # marks[j][i] is p^j_{i+1}, i in 0..2*theta-1
    hubs: tuple  # hubs[i] is x_{i+1}


def make_davies(rho: int, sigma: int, theta: int) -> tuple[Graph, DaviesRoles]:
    """J_{rho,sigma,theta}: theta anticomplete paths with strict widenings plus hubs.

    Each path has ``theta*rho + (theta-1)*sigma + 1`` vertices.  Hub ``x_i``
    sees exactly the ``i``-th widening segment of every path.
    """
    if rho < 0 or sigma < 1 or theta < 2:
        raise ValueError("need rho >= 0, sigma >= 1, theta >= 2")
    length = theta * rho + (theta - 1) * sigma + 1
    paths, marks, edges = [], [], []
    for j in range(theta):
        p = tuple(range(j * length, (j + 1) * length))
        paths.append(p)
        edges.extend(zip(p, p[1:]))
        m = []
        for i in range(theta):
            start = i * (rho + sigma)
            m.extend((p[start], p[start + rho]))
        marks.append(tuple(m))
    hubs = tuple(range(theta * length, theta * length + theta))
    for i, x in enumerate(hubs):
        for j in range(theta):
            a, b = marks[j][2 * i], marks[j][2 * i + 1]
            edges.extend((x, v) for v in range(a, b + 1))
    g = Graph(theta * length + theta, edges)
    return g, DaviesRoles(rho, sigma, theta, tuple(paths), tuple(marks), hubs)


def davies_vertex_count(rho: int, sigma: int, theta: int) -> int:
    return theta * (theta * rho + (theta - 1) * sigma + 1) + theta


# ---------------------------------------------------------------- caterpillars

@dataclass(frozen=True)
class CaterpillarRoles:
    spine: Path
    leaves: tuple  # sigma-wide enumeration (l_1, ..., l_theta)
    branch: tuple  # branch[i] is the spine vertex carrying leaf i+2's leg


def make_caterpillar(gaps, sigma: int, legs=None) -> tuple[Graph, CaterpillarRoles]:
    """A caterpillar whose leaf enumeration is a sigma-widening of its spine.

    ``gaps`` lists the theta-1 spine distances l_1 -> v_2 -> ... -> v_{theta-1}
    -> l_theta, so the caterpillar has ``len(gaps) + 1`` leaves.  ``legs``
    optionally gives the leg length for each middle leaf (default 1).
    """
    gaps = list(gaps)
    if len(gaps) < 1:
        raise ValueError("need at least one gap")
    for gp in gaps:
        if gp < max(sigma, 1):
            raise ValueError(f"gap {gp} is shorter than sigma={sigma}")
    theta = len(gaps) + 1
    legs = [1] * (theta - 2) if legs is None else list(legs)
    if len(legs) != theta - 2 or any(l < 1 for l in legs):
        raise ValueError("need one leg length >= 1 per middle leaf")
    total = sum(gaps)
    spine = tuple(range(total + 1))
    edges = list(zip(spine, spine[1:]))
    n = total + 1
    branch, leaves = [], [spine[0]]
    pos = 0
    for i, gp in enumerate(gaps[:-1]):
        pos += gp
        v = spine[pos]
        seq = [v] + list(range(n, n + legs[i]))
        n += legs[i]
        edges.extend(zip(seq, seq[1:]))
        branch.append(v)
        leaves.append(seq[-1])
    leaves.append(spine[-1])
    g = Graph(n, edges)
    assert is_connected(g)
    return g, CaterpillarRoles(spine, tuple(leaves), tuple(branch))
