"""Rational homology of dual subcomplexes and of the manifolds they assemble into."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from . import gf2
from .colouring import Colouring, ColouringError, Subcomplex, induced_subcomplex, is_orientable


@dataclass(frozen=True)
class BettiTriple:
    """Reduced rational Betti numbers of a complex of dimension <= 2.

    The empty complex has all three values 0 and ``empty`` set; its only
    reduced homology sits in degree -1.
    """

    b0: int
    b1: int
    b2: int
    empty: bool = False

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.b0, self.b1, self.b2)

    @property
    def acyclic(self) -> bool:
        return not self.empty and self.as_tuple() == (0, 0, 0)


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def components(self) -> int:
        return sum(1 for x in self.parent if self.find(x) == x)


def bareiss_rank(matrix: list[list[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    a = [row[:] for row in matrix if any(row)]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            factor = a[i][col]
            row_i, row_r = a[i], a[rank]
            for j in range(col, ncols):
                row_i[j] = (p * row_i[j] - factor * row_r[j]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def boundary_2(edges, triangles) -> list[list[int]]:
    """Matrix of the boundary map, one row per triangle, one column per edge."""
    index = {e: i for i, e in enumerate(edges)}
    rows = []
    for a, b, c in triangles:
        row = [0] * len(edges)
        row[index[(b, c)]] += 1
        row[index[(a, c)]] -= 1
        row[index[(a, b)]] += 1
        rows.append(row)
    return rows


def betti_complex(K: Subcomplex) -> BettiTriple:
    if not K.vertices:
        return BettiTriple(0, 0, 0, empty=True)
    uf = UnionFind(K.vertices)
    for a, b in K.edges:
        uf.union(a, b)
    comps = uf.components()
    r2 = bareiss_rank(boundary_2(K.edges, K.triangles)) if K.triangles else 0
    V, E, T = len(K.vertices), len(K.edges), len(K.triangles)
    return BettiTriple(comps - 1, E - (V - comps) - r2, T - r2)


def _sweep_order(space: list[int]) -> list[int]:
    return sorted(space, key=lambda w: (gf2.weight(w), w))


def betti_manifold(lam: Colouring) -> tuple[int, int, int, int]:
    """Rational Betti numbers of the manifold of a proper colouring."""
    P = lam.polytope
    betti = [0, 0, 0, 0]
    for omega in _sweep_order(gf2.span(lam.matrix.rows)):
        b = betti_complex(induced_subcomplex(P, omega))
        if b.empty:
            betti[0] += 1
            continue
        betti[1] += b.b0
        betti[2] += b.b1
        betti[3] += b.b2
    return tuple(betti)


def connected_mask(adj: tuple[int, ...], mask: int) -> bool:
    """Whether the facets in ``mask`` induce a connected, nonempty graph.

    ``adj[f]`` is the neighbour bitmask of facet f (1-based, bit f-1).
    """
    if not mask:
        return False
    frontier = mask & -mask
    seen = frontier
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        grow = adj[low.bit_length()] & mask & ~seen
        seen |= grow
        frontier |= grow
    return seen == mask


def is_qhs(lam: Colouring) -> bool:
    if not is_orientable(lam):
        return False
    P = lam.polytope
    full = gf2.ones(P.m)
    adj = P.adjacency_masks
    for omega in _sweep_order(gf2.span(lam.matrix.rows)):
        if omega in (0, full):
            continue
        if not connected_mask(adj, omega):
            return False
    return True


SMALL_COVER_LABELS = {0b001: 1, 0b010: 2, 0b100: 3, 0b111: 4}


def two_colour_is_tree(lam: Colouring, i: int, j: int) -> bool:
    """Whether the facets with colour labels i, j (of 1..4) induce a tree."""
    labels = {c: SMALL_COVER_LABELS[c] for c in set(lam.columns)}
    chosen = [f for f in lam.polytope.facets if labels[lam(f)] in (i, j)]
    inside = set(chosen)
    edges = [(a, b) for a, b in lam.polytope.edges if a in inside and b in inside]
    if not chosen or len(edges) != len(chosen) - 1:
        return False
    uf = UnionFind(chosen)
    return all(uf.union(a, b) for a, b in edges)


def is_qhs_small_cover(lam: Colouring) -> bool:
    if lam.k != 3:
        raise ColouringError("the tree criterion needs a rank 3 colouring")
    if not lam.is_odd():
        raise ColouringError("the tree criterion needs odd colours")
    return all(two_colour_is_tree(lam, i, j) for i, j in ((1, 2), (1, 3), (2, 3)))


def t_sets(n: int) -> list[set[int]]:
    """T_0..T_n for the n-cube with opposite facets {2i-1, 2i}."""
    t1 = [0b11 << (2 * i) for i in range(n)]
    out = []
    for j in range(n + 1):
        sums = set()
        for sub in itertools.combinations(t1, j):
            v = 0
            for x in sub:
                v ^= x
            sums.add(v)
        assert len(sums) == comb(n, j)
        out.append(sums)
    return out


def _cube_dimension(lam: Colouring) -> int:
    """n for a 3-cube labelled with opposite facets {2i-1, 2i}; raises otherwise."""
    P = lam.polytope
    if P.m != 6:
        raise ColouringError("T-set formulas need the cube with paired facet labels")
    for f in P.facets:
        partner = f + 1 if f % 2 else f - 1
        if P.neighbours[f] != frozenset(P.facets) - {f, partner}:
            raise ColouringError("opposite cube facets must be labelled 2i-1, 2i")
    return 3


def betti_cube(lam: Colouring, j: int) -> int:
    n = _cube_dimension(lam)
    space = set(gf2.span(lam.matrix.rows))
    return len(space & t_sets(n)[j])


def is_qhs_cube(lam: Colouring) -> bool:
    n = _cube_dimension(lam)
    if not is_orientable(lam):
        return False
    space = set(gf2.span(lam.matrix.rows))
    ts = t_sets(n)
    return all(not (space & ts[j]) for j in range(1, n))
