"""Combinatorial automorphisms of a simple 3-polytope and their geometric type."""

from __future__ import annotations

import functools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .polytope import Polytope, RotationSystem, orient

KINDS = (
    "identity",
    "edge_rotation",
    "face_rotation",
    "vertex_rotation",
    "face_edge_rotation",
    "face_vertex_rotation",
    "reflection",
    "antipodal",
    "edge_rotoreflection",
    "vertex_rotoreflection",
    "face_rotoreflection",
)
ROTATIONS = {
    "edge_rotation",
    "face_rotation",
    "vertex_rotation",
    "face_edge_rotation",
    "face_vertex_rotation",
}
ROTOREFLECTIONS = {"edge_rotoreflection", "vertex_rotoreflection", "face_rotoreflection"}


class ClassificationError(ValueError):
    """An automorphism whose invariant cells fit no row of the symmetry table."""


@dataclass(frozen=True)
class Automorphism:
    """A facet permutation; ``perm[i]`` is the image of facet i+1."""

    perm: tuple[int, ...]
    orientation: int

    def __call__(self, f: int) -> int:
        return self.perm[f - 1]

    @property
    def m(self) -> int:
        return len(self.perm)

    def is_identity(self) -> bool:
        return all(self.perm[i] == i + 1 for i in range(self.m))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self ∘ other``: apply other first."""
        return Automorphism(
            tuple(self.perm[other.perm[i] - 1] for i in range(self.m)),
            self.orientation * other.orientation,
        )

    __mul__ = compose

    def inverse(self) -> "Automorphism":
        inv = [0] * self.m
        for i, j in enumerate(self.perm):
            inv[j - 1] = i + 1
        return Automorphism(tuple(inv), self.orientation)

    def power(self, e: int) -> "Automorphism":
        out = identity(self.m)
        for _ in range(e % self.order()):
            out = self.compose(out)
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for f in range(1, self.m + 1):
            if f in seen:
                continue
            cyc = [f]
            seen.add(f)
            while (g := self(cyc[-1])) != f:
                cyc.append(g)
                seen.add(g)
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def image_vertex(self, v: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self(x) for x in v))


def identity(m: int) -> Automorphism:
    return Automorphism(tuple(range(1, m + 1)), 1)


def parse_permutation(text: str, m: int) -> tuple[int, ...]:
    """Cycle notation such as ``(2 3 4)(5 6)`` (commas allowed) to an image tuple."""
    perm = list(range(1, m + 1))
    body = text.replace(",", " ").strip()
    if body in ("", "()"):
        return tuple(perm)
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"bad cycle notation {text!r}")
    for chunk in body[1:-1].split(")("):
        items = [int(x) for x in chunk.split()]
        if len(set(items)) != len(items) or not all(1 <= x <= m for x in items):
            raise ValueError(f"bad cycle {chunk!r}")
        for a, b in zip(items, items[1:] + items[:1]):
            perm[a - 1] = b
    if sorted(perm) != list(range(1, m + 1)):
        raise ValueError("cycles overlap")
    return tuple(perm)


def _extend(P: Polytope, rs_p: RotationSystem, Q: Polytope, rs_q: RotationSystem,
            base: tuple[int, int], target: tuple[int, int], sign: int) -> tuple[int, ...] | None:
    """Unique map sending dart ``base`` to ``target`` and rotations to rotations
    (sign +1) or to reversed rotations (sign -1), or None if it does not exist."""
    if P.m != Q.m:
        return None
    image = {base[0]: target[0], base[1]: target[1]}
    used = {target[0], target[1]}
    queue = deque([base])
    done = set()
    while queue:
        f, g = queue.popleft()
        if f in done:
            continue
        done.add(f)
        succ_p = rs_p.successor[f]
        succ_q = rs_q.successor[image[f]]
        if len(succ_p) != len(succ_q):
            return None
        if sign < 0:
            succ_q = {v: u for u, v in succ_q.items()}
        x, y = g, image[g]
        for _ in range(len(succ_p)):
            if x in image:
                if image[x] != y:
                    return None
            else:
                if y in used:
                    return None
                image[x] = y
                used.add(y)
            if x not in done:
                queue.append((x, f))
            x, y = succ_p[x], succ_q.get(y)
            if y is None:
                return None
    if len(image) != P.m:
        return None
    perm = tuple(image[f] for f in range(1, P.m + 1))
    targets = Q.vertex_set()
    if any(tuple(sorted(perm[x - 1] for x in v)) not in targets for v in P.vertices):
        return None
    return perm


def _darts(P: Polytope, rs: RotationSystem):
    for f in P.facets:
        for g in rs.cycle(f):
            yield f, g


@functools.lru_cache(maxsize=None)
def automorphisms(P: Polytope) -> tuple[Automorphism, ...]:
    """The full automorphism group of P, identity first, then by facet image tuple."""
    rs = orient(P)
    base = (1, rs.cycle(1)[0])
    found = {}
    for target in _darts(P, rs):
        for sign in (1, -1):
            perm = _extend(P, rs, P, rs, base, target, sign)
            if perm is not None:
                found[perm] = Automorphism(perm, sign)
    ident = tuple(range(1, P.m + 1))
    return (found[ident],) + tuple(found[p] for p in sorted(found) if p != ident)


def isomorphism(P: Polytope, Q: Polytope) -> tuple[int, ...] | None:
    """A facet bijection P -> Q preserving vertex triples, if one exists."""
    if P.m != Q.m or len(P.vertices) != len(Q.vertices):
        return None
    rs_p, rs_q = orient(P), orient(Q)
    base = (1, rs_p.cycle(1)[0])
    for target in _darts(Q, rs_q):
        for sign in (1, -1):
            perm = _extend(P, rs_p, Q, rs_q, base, target, sign)
            if perm is not None:
                return perm
    return None


def orientation_character(P: Polytope, phi: Automorphism) -> int:
    """+1 if phi carries the positively oriented dual triangles to positive ones."""
    rs = orient(P)
    tri = rs.triangles[0]
    return rs.sign(tuple(phi(x) for x in tri))


@dataclass(frozen=True)
class InvariantCells:
    facets: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    vertices: tuple[tuple[int, int, int], ...]

    def count(self) -> int:
        return len(self.facets) + len(self.edges) + len(self.vertices)

    def cells(self) -> list[tuple[str, tuple[int, ...]]]:
        return (
            [("face", (f,)) for f in self.facets]
            + [("edge", e) for e in self.edges]
            + [("vertex", v) for v in self.vertices]
        )


def invariant_cells(P: Polytope, phi: Automorphism) -> InvariantCells:
    return InvariantCells(
        tuple(f for f in P.facets if phi(f) == f),
        tuple(e for e in P.edges if phi.image_vertex(e) == e),
        tuple(v for v in P.vertices if phi.image_vertex(v) == v),
    )


@dataclass(frozen=True)
class SymmetryClassification:
    kind: str
    order: int
    orientation: int
    poles: tuple[tuple[str, tuple[int, ...]], ...]

    def describe_poles(self) -> str:
        return ",".join(f"{t}{{{' '.join(map(str, c))}}}" for t, c in self.poles) or "-"


_POLE_KIND = {
    ("face", "face"): "face_rotation",
    ("edge", "edge"): "edge_rotation",
    ("vertex", "vertex"): "vertex_rotation",
    ("edge", "face"): "face_edge_rotation",
    ("face", "vertex"): "face_vertex_rotation",
}


def classify(P: Polytope, phi: Automorphism) -> SymmetryClassification:
    order = phi.order()
    sign = orientation_character(P, phi)
    cells = invariant_cells(P, phi)
    if order == 1:
        return SymmetryClassification("identity", 1, 1, ())
    if sign > 0:
        poles = tuple(cells.cells())
        if len(poles) != 2:
            raise ClassificationError(
                f"rotation {phi.cycle_notation()} has {len(poles)} invariant cells"
            )
        kind = _POLE_KIND.get(tuple(sorted(t for t, _ in poles)))
        if kind is None:
            raise ClassificationError(f"rotation with poles {poles} fits no table row")
        if kind == "edge_rotation" and order != 2 or kind == "vertex_rotation" and order != 3:
            raise ClassificationError(f"{kind} of order {order}")
        return SymmetryClassification(kind, order, 1, poles)
    if order == 2:
        if cells.count():
            return SymmetryClassification("reflection", 2, -1, tuple(cells.cells()))
        return SymmetryClassification("antipodal", 2, -1, ())
    if cells.count():
        raise ClassificationError(
            f"orientation-reversing {phi.cycle_notation()} of order {order} has invariant cells"
        )
    square = classify(P, phi.compose(phi))
    if square.kind == "edge_rotation":
        kind = "edge_rotoreflection"
    elif square.kind == "vertex_rotation":
        kind = "vertex_rotoreflection"
    elif square.kind in ("face_rotation", "face_edge_rotation", "face_vertex_rotation"):
        kind = "face_rotoreflection"
    else:
        raise ClassificationError(f"rotoreflection whose square is {square.kind}")
    return SymmetryClassification(kind, order, -1, square.poles)


def fix_facets(P: Polytope, phi: Automorphism) -> frozenset[int]:
    """Facets meeting the fixed-point set of phi on the boundary sphere."""
    cells = invariant_cells(P, phi)
    out = set(cells.facets)
    for e in cells.edges:
        out.update(e)
    for v in cells.vertices:
        out.update(v)
    return frozenset(out)


def named_rotation(P: Polytope, cell: tuple[int, ...]) -> Automorphism:
    """Generator of the rotations about ``cell`` (a facet, edge or vertex).

    Among orientation-preserving automorphisms leaving the cell invariant,
    returns one of maximal order with the lexicographically smallest image tuple.
    """
    key = tuple(sorted(cell))
    best = None
    for phi in automorphisms(P):
        if phi.orientation < 0 or phi.is_identity():
            continue
        if phi.image_vertex(key) != key:
            continue
        cand = (-phi.order(), phi.perm)
        if best is None or cand < best[0]:
            best = (cand, phi)
    if best is None:
        raise ValueError(f"no rotation leaves cell {cell} invariant")
    return best[1]
