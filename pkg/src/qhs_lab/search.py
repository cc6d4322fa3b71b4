"""Isomorph-free enumeration of orientable colourings and construction of
colourings that carry a prescribed symmetry."""

from __future__ import annotations

import functools
import itertools
import logging
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from . import gf2
from .admissible import SymGroupReport, admissible_group, induced_linear_map
from .colouring import Colouring, canonical_form, canonical_matrix, is_proper
from .gf2 import BitMatrix
from .homology import betti_manifold, connected_mask, is_qhs
from .polytope import Polytope
from .symmetry import Automorphism

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnumerationTask:
    polytope: Polytope
    k: int
    qhs: bool = False
    prune: bool = True
    base_vertex: tuple[int, int, int] | None = None

    def __post_init__(self):
        if not 3 <= self.k <= gf2.MAX_GL_RANK:
            raise ValueError(f"rank must lie in 3..{gf2.MAX_GL_RANK}")
        if self.base_vertex is not None and tuple(sorted(self.base_vertex)) not in self.polytope.vertex_set():
            raise ValueError(f"{self.base_vertex} is not a vertex of {self.polytope.name}")


@dataclass
class ClassRecord:
    canonical: bytes
    colouring: Colouring

    @functools.cached_property
    def report(self) -> SymGroupReport:
        return admissible_group(self.colouring)

    @functools.cached_property
    def betti(self) -> tuple[int, int, int, int]:
        return betti_manifold(self.colouring)

    @property
    def matrix(self) -> BitMatrix:
        return self.colouring.matrix


@dataclass
class ClassList:
    classes: list[ClassRecord]
    stats: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def canonical_forms(self) -> list[bytes]:
        return [c.canonical for c in self.classes]


def _class_list(P: Polytope, forms, stats=None) -> ClassList:
    records = [
        ClassRecord(f, Colouring.from_matrix(P, canonical_matrix(f))) for f in sorted(forms)
    ]
    return ClassList(records, dict(stats or {}))


# --- backtracking ------------------------------------------------------------


def search_order(P: Polytope, base_vertex=None) -> list[int]:
    """Facets in breadth-first order, starting with the three facets of a vertex."""
    base = tuple(sorted(base_vertex)) if base_vertex else P.vertices[0]
    order = list(base)
    seen = set(order)
    queue = deque(order)
    while queue:
        f = queue.popleft()
        for g in sorted(P.neighbours[f]):
            if g not in seen:
                seen.add(g)
                order.append(g)
                queue.append(g)
    return order


def _flood(adj, start: int, mask: int) -> int:
    seen = frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        grow = adj[low.bit_length()] & mask & ~seen
        seen |= grow
        frontier |= grow
    return seen


class _Backtracker:
    """Colours facets in search order with odd colours, introducing basis
    vectors e_1, e_2, ... in order of first use."""

    def __init__(self, task: EnumerationTask):
        self.task = task
        P = task.polytope
        self.P = P
        self.k = task.k
        self.order = search_order(P, task.base_vertex)
        self.adj = P.adjacency_masks
        self.odd_by_rank = [
            [c for c in range(1, 1 << r) if gf2.is_odd(c)] for r in range(self.k + 1)
        ]
        # earlier neighbours of each position, as facet ids
        pos = {f: i for i, f in enumerate(self.order)}
        self.before = [
            [g for g in P.neighbours[f] if pos[g] < i] for i, f in enumerate(self.order)
        ]
        self.leaves = 0

    def choices(self, idx: int, colours: list[int], r: int) -> list[tuple[int, int]]:
        """(colour, new rank) options at position idx."""
        n = len(self.order)
        banned = {colours[g] for g in self.before[idx]}
        out = []
        if n - idx - 1 >= self.k - r:
            out += [(c, r) for c in self.odd_by_rank[r] if c not in banned]
        if r < self.k:
            e = 1 << r
            if e not in banned:
                out.append((e, r + 1))
        return out

    def _makes_cycle(self, f: int, c: int, by_colour: dict[int, int]) -> bool:
        """Would colouring f with c close a cycle in some two-colour subgraph?"""
        adj_f = self.adj[f]
        mask_c = by_colour.get(c, 0)
        for d, mask_d in by_colour.items():
            if d == c:
                continue
            touching = adj_f & mask_d
            if touching & (touching - 1) == 0:
                continue
            allowed = mask_c | mask_d
            rest = touching
            while rest:
                comp = _flood(self.adj, rest & -rest, allowed)
                hit = comp & touching
                if hit & (hit - 1):
                    return True
                rest &= ~comp
        return False

    def run(self, prefix: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
        """Yield complete colourings (indexed by facet-1) extending a prefix."""
        colours = [0] * (self.P.m + 1)
        by_colour: dict[int, int] = {}
        r = 0
        for idx, c in enumerate(prefix):
            f = self.order[idx]
            if (c, r + 1 if c == 1 << r else r) not in self.choices(idx, colours, r):
                return
            if self.task.qhs and self.task.prune and self._makes_cycle(f, c, by_colour):
                return
            if c == 1 << r:
                r += 1
            colours[f] = c
            by_colour[c] = by_colour.get(c, 0) | (1 << (f - 1))
        yield from self._extend(len(prefix), colours, by_colour, r)

    def _extend(self, idx, colours, by_colour, r):
        if idx == len(self.order):
            if r == self.k:
                self.leaves += 1
                yield tuple(colours[1:])
            return
        f = self.order[idx]
        bit = 1 << (f - 1)
        prune = self.task.qhs and self.task.prune
        for c, r2 in self.choices(idx, colours, r):
            if prune and self._makes_cycle(f, c, by_colour):
                continue
            colours[f] = c
            by_colour[c] = by_colour.get(c, 0) | bit
            yield from self._extend(idx + 1, colours, by_colour, r2)
            by_colour[c] ^= bit
            if not by_colour[c]:
                del by_colour[c]
            colours[f] = 0

    def prefixes(self, depth: int) -> list[tuple[int, ...]]:
        """All admissible assignments of the first ``depth`` positions."""
        out = []

        def rec(idx, colours, r, acc):
            if idx == depth:
                out.append(tuple(acc))
                return
            f = self.order[idx]
            for c, r2 in self.choices(idx, colours, r):
                colours[f] = c
                acc.append(c)
                rec(idx + 1, colours, r2, acc)
                acc.pop()
                colours[f] = 0

        rec(0, [0] * (self.P.m + 1), 0, [])
        return out


def _leaf_passes(P: Polytope, cols: tuple[int, ...], qhs: bool, full: int) -> bool:
    if not qhs:
        return True
    # odd columns: the rows always sum to the all-ones vector, so only
    # connectivity of the proper subcomplexes remains
    rows = BitMatrix.from_columns(cols, max(c.bit_length() for c in cols)).rows
    adj = P.adjacency_masks
    for omega in sorted(gf2.span(rows), key=gf2.weight):
        if omega in (0, full):
            continue
        if not connected_mask(adj, omega):
            return False
    return True


def _run_chunk(task: EnumerationTask, prefixes: list[tuple[int, ...]]):
    bt = _Backtracker(task)
    P = task.polytope
    full = gf2.ones(P.m)
    forms = set()
    survivors = 0
    for prefix in prefixes:
        for cols in bt.run(prefix):
            if not _leaf_passes(P, cols, task.qhs, full):
                continue
            survivors += 1
            forms.add(canonical_form(Colouring(P, task.k, cols), "gl_or"))
    return forms, bt.leaves, survivors


def enumerate_colourings(task: EnumerationTask, threads: int = 1, split_depth: int = 6) -> ClassList:
    """One canonical representative per equivalence class of proper,
    odd-column rank-k colourings (restricted to QHS ones if ``task.qhs``)."""
    bt = _Backtracker(task)
    depth = min(split_depth, len(bt.order))
    prefixes = bt.prefixes(depth)
    forms: set[bytes] = set()
    leaves = survivors = 0
    if threads > 1 and len(prefixes) > 1:
        chunks = [prefixes[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for f, n_leaves, n_surv in pool.map(_run_chunk, [task] * len(chunks), chunks):
                forms |= f
                leaves += n_leaves
                survivors += n_surv
    else:
        forms, leaves, survivors = _run_chunk(task, prefixes)
    log.info("%s k=%d: %d leaves, %d survivors, %d classes",
             task.polytope.name, task.k, leaves, survivors, len(forms))
    return _class_list(task.polytope, forms, {"leaves": leaves, "survivors": survivors})


def classify_by_symmetry(classes: ClassList) -> Counter:
    return Counter(rec.report.identified_name for rec in classes)


# --- construction from a prescribed symmetry ------------------------------------


def _orbits(phi: Automorphism) -> list[tuple[int, ...]]:
    return phi.cycles(include_fixed=True)


def _adjacent_steps(P: Polytope, orb: tuple[int, ...]) -> set[int]:
    """Steps j with orb[i] adjacent to orb[i + j] for some i."""
    L = len(orb)
    return {
        j for i in range(L) for j in range(1, L)
        if orb[(i + j) % L] in P.neighbours[orb[i]]
    }


def _normalised(colour_of: Mapping[int, int], seeds: Mapping[int, int], k: int) -> bool:
    """Basis normalisation on propagated colours.

    When the seed colours span <e_1..e_r>, the first propagated colour (in
    facet order) outside the running span must be e_{r+1}, and so on.  Any
    propagation can be brought to this form by a map in GL_k^or fixing the
    seed colours, so nothing is lost up to equivalence.
    """
    spanned = set(gf2.span(list(seeds.values())))
    r = gf2.rank_of_rows(seeds.values())
    if spanned != set(range(1 << r)):
        return True
    for f in sorted(colour_of):
        c = colour_of[f]
        if c in spanned:
            continue
        if spanned != set(range(1 << r)):
            return True
        if c != 1 << r:
            return False
        spanned |= {x ^ c for x in spanned}
        r += 1
    return True


def construct_with_symmetry(
    P: Polytope,
    phi: Automorphism,
    k: int,
    seed: Mapping[int, int],
    qhs: bool = True,
    normalise: bool = True,
) -> ClassList:
    """Colourings with lam(phi^i(F)) = A^i lam(F) for a matrix A of order
    dividing o(phi), agreeing with ``seed`` (facet -> colour).

    Free orbits take their representative colour c among odd colours with
    A^L c = c (L the orbit length) that do not already repeat a colour on two
    adjacent facets of the orbit.
    """
    order = phi.order()
    constraints = []
    for f, c in seed.items():
        g = phi(f)
        if g == f:
            constraints.append((c, c))
        elif g in seed:
            constraints.append((c, seed[g]))
    matrices = gf2.matrices_with_constraints(k, order, constraints)
    orbits = _orbits(phi)
    forms: set[bytes] = set()
    raw = kept_matrices = proper = 0
    odd = gf2.orientable_vectors(k)
    for A in matrices:
        colour_of: dict[int, int] = {}
        consistent = True
        free = []
        for orb in orbits:
            seeded = [i for i, f in enumerate(orb) if f in seed]
            if not seeded:
                free.append(orb)
                continue
            start = seeded[0]
            c = seed[orb[start]]
            for step in range(len(orb)):
                f = orb[(start + step) % len(orb)]
                if f in seed and seed[f] != c:
                    consistent = False
                colour_of[f] = c
                c = A.apply(c)
            if c != seed[orb[start]]:
                consistent = False
        if not consistent:
            continue
        if normalise and not _normalised(colour_of, seed, k):
            continue
        kept_matrices += 1
        powers = [gf2.matrix_power(A, j) for j in range(order + 1)]
        options = []
        for orb in free:
            steps = _adjacent_steps(P, orb)
            options.append([
                c for c in odd
                if powers[len(orb)].apply(c) == c
                and all(powers[j].apply(c) != c for j in steps)
            ])
        for choice in itertools.product(*options):
            raw += 1
            full = dict(colour_of)
            for orb, c in zip(free, choice):
                for f in orb:
                    full[f] = c
                    c = A.apply(c)
            cols = tuple(full[f] for f in P.facets)
            if gf2.rank_of_rows(cols) < k:
                continue
            lam = Colouring(P, k, cols)
            if not is_proper(lam):
                continue
            proper += 1
            if qhs and not is_qhs(lam):
                continue
            if induced_linear_map(lam, phi) != A:
                raise AssertionError("constructed colouring does not admit the symmetry")
            forms.add(canonical_form(lam, "gl_or"))
    stats = {"matrices": kept_matrices, "raw_candidates": raw, "proper": proper}
    return _class_list(P, forms, stats)
