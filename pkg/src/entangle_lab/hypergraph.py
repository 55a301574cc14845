"""Hypergraphs, their incidence statistics and closed-form concurrence predictions.

Vertices are labelled 1..N.  Named families and their vertex labelling:

* ``complete(n, k)``: all k-subsets of 1..n.
* ``cycle(n)``, ``path(n)``: edges {i, i+1} (cyclically for the cycle).
* ``platonic(solid, kind)``: vertices numbered in the order of the coordinate
  tables below, edges are the nearest-neighbour pairs, faces are the vertex sets
  cut out by supporting planes.
* ``hypercube(m, dim)``: vertex x in {0,1}^m gets label 1 + int(x, base 2);
  hyperedges are the vertex sets of the dim-dimensional faces.
* ``orthoplex(m, dim)``: vertices +e_i -> 2i-1 and -e_i -> 2i; hyperedges are
  the (dim+1)-subsets with no antipodal pair.
* ``hexagonal(l1, l2)``: honeycomb on an l1 x l2 torus of cells, sublattice A
  cell (i, j) -> 2(i*l2 + j) + 1, sublattice B -> 2(i*l2 + j) + 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb, sqrt

import numpy as np

PHI = (1 + sqrt(5)) / 2


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[frozenset, ...]

    def __post_init__(self):
        edges = tuple(frozenset(int(v) for v in e) for e in self.edges)
        if any(not e for e in edges):
            raise ValueError("empty edge")
        if len(set(edges)) != len(edges):
            raise ValueError("repeated edge")
        if any(not 1 <= v <= self.n for e in edges for v in e):
            raise ValueError(f"vertex outside 1..{self.n}")
        object.__setattr__(self, "edges", edges)

    @property
    def uniformity(self):
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v) -> set:
        return {w for e in self.edges if v in e for w in e} - {v}

    def is_graph(self) -> bool:
        return self.uniformity == 2

    def relabel(self, perm) -> "Hypergraph":
        """perm[i-1] is the new label of vertex i."""
        return Hypergraph(self.n, tuple(frozenset(perm[v - 1] for v in e) for e in self.edges))


def _check(g, *vs):
    for v in vs:
        if not 1 <= v <= g.n:
            raise ValueError(f"vertex {v} outside 1..{g.n}")
    if len(vs) == 2 and vs[0] == vs[1]:
        raise ValueError("pairwise statistic needs distinct vertices")


def degree(g: Hypergraph, v) -> int:
    _check(g, v)
    return sum(v in e for e in g.edges)


def section(g: Hypergraph, v, w) -> int:
    _check(g, v, w)
    return sum(v in e and w in e for e in g.edges)


def joint_neighborhood(g: Hypergraph, v, w) -> int:
    _check(g, v, w)
    rest_v = {e - {v} for e in g.edges if v in e and w not in e}
    rest_w = {e - {w} for e in g.edges if w in e and v not in e}
    return len(rest_v & rest_w)


def distance(g: Hypergraph, v, w) -> int:
    """Number of hyperedge steps between v and w; -1 when disconnected."""
    _check(g, v, w)
    seen, frontier, steps = {v}, {v}, 0
    while frontier:
        if w in frontier:
            return steps
        nxt = set()
        for u in frontier:
            nxt |= g.neighbors(u)
        frontier = nxt - seen
        seen |= frontier
        steps += 1
    return -1


def is_connected(g: Hypergraph) -> bool:
    return g.n == 1 or all(distance(g, 1, w) >= 0 for w in range(2, g.n + 1))


def predicted_concurrence(g: Hypergraph, v, w) -> float:
    if g.uniformity is None:
        raise ValueError("concurrence formula needs a uniform hypergraph")
    m = g.n_edges
    s = section(g, v, w)
    lam = m - degree(g, v) - degree(g, w) + s
    return max(0.0, 2 / m * (joint_neighborhood(g, v, w) - sqrt(s * lam)))


def is_regular(g: Hypergraph):
    degs = {degree(g, v) for v in range(1, g.n + 1)}
    return degs.pop() if len(degs) == 1 else None


def is_distance1_regular(g: Hypergraph) -> bool:
    """All adjacent pairs share the same number of common neighbours."""
    if not g.is_graph():
        return False
    return len({joint_neighborhood(g, *sorted(e)) for e in g.edges}) == 1


def predicted_regular_concurrence(g: Hypergraph, v, w) -> float:
    """Concurrence of a connected, d-regular, distance-1 regular graph with c common neighbours per edge."""
    d = is_regular(g)
    if d is None or not is_distance1_regular(g) or not is_connected(g):
        raise ValueError("needs a connected, regular, distance-1 regular graph")
    m = g.n_edges
    c = joint_neighborhood(g, *sorted(g.edges[0]))
    dist = distance(g, v, w)
    if dist == 1:
        return max(0.0, 2 / m * (c - sqrt(m - 2 * d + 1)))
    if dist == 2:
        return 2 / m * joint_neighborhood(g, v, w)
    return 0.0


def predicted_generalized_concurrence(g: Hypergraph, v) -> float:
    m = g.n_edges
    dv = degree(g, v)
    return sqrt(4 * dv * (m - dv)) / m


def predicted_ratio(g: Hypergraph, v) -> float:
    denom = predicted_generalized_concurrence(g, v) ** 2
    if denom == 0:
        raise ValueError("vertex is not entangled with the rest")
    return sum(predicted_concurrence(g, v, w) ** 2 for w in range(1, g.n + 1) if w != v) / denom


# ---- product structure ------------------------------------------------------

def _masks(g):
    return [sum(1 << (v - 1) for v in e) for e in g.edges]


def _product_masks(masks, m1) -> bool:
    p1 = {e & m1 for e in masks}
    p2 = {e & ~m1 for e in masks}
    return len(p1) * len(p2) == len(masks)


def is_product_hypergraph(g: Hypergraph, partition) -> bool:
    v1, v2 = (set(int(x) for x in part) for part in partition)
    if v1 & v2 or v1 | v2 != set(range(1, g.n + 1)) or not v1 or not v2:
        raise ValueError("partition must split 1..N into two nonempty disjoint parts")
    return _product_masks(_masks(g), sum(1 << (v - 1) for v in v1))


def factorize(g: Hypergraph):
    """A bipartition (V1, V2) along which the excitation state factorizes, or None.

    Vertices on different sides of a product are statistically independent
    (n_vw |E| = d_v d_w), so connected components of the dependence graph are
    never split; only unions of components are tried.
    """
    m = g.n_edges
    deg = [0] + [degree(g, v) for v in range(1, g.n + 1)]
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v, w in combinations(range(1, g.n + 1), 2):
        if section(g, v, w) * m != deg[v] * deg[w]:
            parent[find(v)] = find(w)
    comps: dict[int, int] = {}
    for v in range(1, g.n + 1):
        comps[find(v)] = comps.get(find(v), 0) | (1 << (v - 1))
    blocks = sorted(comps.values())
    if len(blocks) < 2:
        return None
    masks = _masks(g)
    first, others = blocks[0], blocks[1:]
    for choice in product((0, 1), repeat=len(others)):
        m1 = first | sum(b for b, c in zip(others, choice) if c)
        if m1 == (1 << g.n) - 1:
            continue
        if _product_masks(masks, m1):
            side = [v for v in range(1, g.n + 1) if m1 >> (v - 1) & 1]
            return (tuple(side), tuple(v for v in range(1, g.n + 1) if v not in side))
    return None


# ---- named families ---------------------------------------------------------

def complete(n: int, k: int = 2) -> Hypergraph:
    return Hypergraph(n, tuple(frozenset(c) for c in combinations(range(1, n + 1), k)))


def cycle(n: int) -> Hypergraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Hypergraph(n, tuple(frozenset({i, i % n + 1}) for i in range(1, n + 1)))


def path(n: int) -> Hypergraph:
    return Hypergraph(n, tuple(frozenset({i, i + 1}) for i in range(1, n)))


def complete_bipartite(n1: int, n2: int) -> Hypergraph:
    return Hypergraph(n1 + n2, tuple(frozenset({i, n1 + j}) for i in range(1, n1 + 1) for j in range(1, n2 + 1)))


def _cyclic_perms(v):
    x, y, z = v
    return [(x, y, z), (z, x, y), (y, z, x)]


def _signs(v):
    out = []
    for s in product((1, -1), repeat=3):
        w = tuple(si * vi for si, vi in zip(s, v))
        if w not in out:
            out.append(w)
    return out


def platonic_coordinates(solid: str) -> np.ndarray:
    if solid == "tetra":
        pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif solid == "octa":
        pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    elif solid == "cube":
        pts = list(product((1, -1), repeat=3))
    elif solid == "icosa":
        pts = [p for base in _signs((0, 1, PHI)) for p in _cyclic_perms(base)]
    elif solid == "dodeca":
        pts = list(product((1, -1), repeat=3))
        pts += [p for base in _signs((0, 1 / PHI, PHI)) for p in _cyclic_perms(base)]
    else:
        raise ValueError(f"unknown solid {solid!r}")
    return np.array(pts, dtype=float)


SOLIDS = ("tetra", "octa", "cube", "icosa", "dodeca")


def platonic(solid: str, kind: str = "edges") -> Hypergraph:
    x = platonic_coordinates(solid)
    n = len(x)
    if kind == "edges":
        dist = np.linalg.norm(x[:, None] - x[None], axis=2)
        dmin = dist[dist > 1e-9].min()
        edges = [frozenset({i + 1, j + 1}) for i, j in combinations(range(n), 2) if abs(dist[i, j] - dmin) < 1e-9]
    elif kind == "faces":
        edges = set()
        for tri in combinations(range(n), 3):
            normal = np.cross(x[tri[1]] - x[tri[0]], x[tri[2]] - x[tri[0]])
            if np.linalg.norm(normal) < 1e-9:
                continue
            h = (x - x[tri[0]]) @ normal
            if (h < 1e-9).all() or (h > -1e-9).all():
                edges.add(frozenset(int(i) + 1 for i in np.flatnonzero(np.abs(h) < 1e-9)))
        edges = sorted(edges, key=sorted)
    else:
        raise ValueError("kind must be 'edges' or 'faces'")
    return Hypergraph(n, tuple(edges))


def hypercube(m: int, dim: int = 1) -> Hypergraph:
    if not 0 < dim < m:
        raise ValueError("need 0 < dim < m")
    edges = []
    for free in combinations(range(m), dim):
        fixed = [i for i in range(m) if i not in free]
        for vals in product((0, 1), repeat=m - dim):
            face = []
            for bits in product((0, 1), repeat=dim):
                x = [0] * m
                for i, b in zip(fixed, vals):
                    x[i] = b
                for i, b in zip(free, bits):
                    x[i] = b
                face.append(1 + int("".join(map(str, x)), 2))
            edges.append(frozenset(face))
    return Hypergraph(2**m, tuple(edges))


def orthoplex(m: int, dim: int = 1) -> Hypergraph:
    if not 0 < dim < m:
        raise ValueError("need 0 < dim < m")
    edges = []
    for axes in combinations(range(m), dim + 1):
        for signs in product((0, 1), repeat=dim + 1):
            edges.append(frozenset(2 * a + 1 + s for a, s in zip(axes, signs)))
    return Hypergraph(2 * m, tuple(edges))


def hexagonal(l1: int = 3, l2: int = 3) -> Hypergraph:
    if l1 < 3 or l2 < 3:
        raise ValueError("the torus patch needs at least 3 x 3 cells")
    a = lambda i, j: 2 * ((i % l1) * l2 + (j % l2)) + 1
    b = lambda i, j: 2 * ((i % l1) * l2 + (j % l2)) + 2
    edges = []
    for i in range(l1):
        for j in range(l2):
            edges += [frozenset({a(i, j), b(i, j)}), frozenset({a(i, j), b(i - 1, j)}), frozenset({a(i, j), b(i, j - 1)})]
    return Hypergraph(2 * l1 * l2, tuple(edges))


FAMILIES = {
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "complete-bipartite": complete_bipartite,
    "platonic": platonic,
    "hypercube": hypercube,
    "orthoplex": orthoplex,
    "simplex": complete,
    "hexagonal": hexagonal,
}


def family(name: str, *params) -> Hypergraph:
    if name in SOLIDS:
        return platonic(name, *params)
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}")
    return FAMILIES[name](*params)


# ---- files ------------------------------------------------------------------

def hypergraph_to_text(g: Hypergraph) -> str:
    lines = [str(g.n)] + [" ".join(str(v) for v in sorted(e)) for e in g.edges]
    return "\n".join(lines) + "\n"


def hypergraph_from_text(text: str) -> Hypergraph:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty hypergraph file")
    n = int(lines[0])
    return Hypergraph(n, tuple(frozenset(int(x) for x in ln.split()) for ln in lines[1:]))


# ---- closed forms quoted for named families ---------------------------------

def dicke_concurrence(n: int, k: int) -> float:
    return max(0.0, 2 / comb(n, k) * (comb(n - 2, k - 1) - sqrt(comb(n - 2, k) * comb(n - 2, k - 2))))


def cycle_ratio(n: int) -> float:
    return 1 / (n - 2)


def hexagonal_ratio(n: int) -> float:
    return (4 / 3) / (n - 2)


def hypercube_edge_concurrence(m: int) -> float:
    return 2 ** (3 - m) / m

