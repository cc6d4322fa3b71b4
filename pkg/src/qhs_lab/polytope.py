"""Simple 3-polytopes encoded by their vertices as facet triples.

Facets are numbered 1..m.  Edges, facet boundary cycles, the dual simplicial
complex and a global orientation are all derived from the vertex triples.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from pathlib import Path


class InvalidPolytope(ValueError):
    """Raised when vertex-triple data does not describe a simple 3-polytope."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid polytope: " + "; ".join(self.violations))


@dataclass(frozen=True)
class Polytope:
    name: str
    m: int
    vertices: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "vertices", tuple(tuple(sorted(v)) for v in self.vertices)
        )

    @property
    def facets(self) -> range:
        return range(1, self.m + 1)

    @functools.cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        counts = Counter(
            pair for v in self.vertices for pair in itertools.combinations(v, 2)
        )
        return tuple(sorted(p for p, c in counts.items() if c == 2))

    @functools.cached_property
    def neighbours(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {f: set() for f in self.facets}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {f: frozenset(s) for f, s in adj.items()}

    @functools.cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """``masks[f]`` has bit g-1 set for every neighbour g of facet f (index 0 unused)."""
        masks = [0] * (self.m + 1)
        for a, b in self.edges:
            masks[a] |= 1 << (b - 1)
            masks[b] |= 1 << (a - 1)
        return tuple(masks)

    @functools.cached_property
    def facet_cycles(self) -> dict[int, tuple[int, ...]]:
        """Neighbours of each facet in boundary order (direction unspecified)."""
        cycles = {}
        for f in self.facets:
            cycle = _facet_cycle(self, f)
            if cycle is None:
                raise InvalidPolytope([f"facet_cycle: facet {f} boundary is not a single cycle"])
            cycles[f] = cycle
        return cycles

    def vertex_set(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(self.vertices)

    def to_json(self) -> str:
        return json.dumps(
            {"name": self.name, "m": self.m, "vertices": [list(v) for v in self.vertices]}
        )

    def __repr__(self) -> str:
        return f"Polytope({self.name!r}, m={self.m}, V={len(self.vertices)})"


def _facet_cycle(P: Polytope, f: int) -> tuple[int, ...] | None:
    links: dict[int, list[int]] = {}
    for v in P.vertices:
        if f in v:
            g, h = (x for x in v if x != f)
            links.setdefault(g, []).append(h)
            links.setdefault(h, []).append(g)
    if len(links) < 3 or any(len(n) != 2 for n in links.values()):
        return None
    start = min(links)
    cycle = [start]
    prev, cur = None, start
    while True:
        a, b = links[cur]
        nxt = b if a == prev else a
        if prev is None:
            nxt = min(a, b)
        if nxt == start:
            break
        cycle.append(nxt)
        prev, cur = cur, nxt
        if len(cycle) > len(links):
            return None
    if len(cycle) != len(links):
        return None
    return tuple(cycle)


def validate(P: Polytope) -> list[str]:
    """Names of violated invariants; an empty list means P is valid."""
    problems = []
    ids = {x for v in P.vertices for x in v}
    if P.m < 4:
        problems.append("facet_count: need at least 4 facets")
    if any(len(set(v)) != 3 for v in P.vertices):
        problems.append("vertex_triples: a vertex repeats a facet")
    if not ids <= set(P.facets):
        problems.append("facet_ids: ids outside 1..m")
    if len(set(P.vertices)) != len(P.vertices):
        problems.append("vertex_triples: duplicate vertex")
    incidence = Counter(x for v in P.vertices for x in v)
    if any(incidence[f] < 3 for f in P.facets):
        problems.append("facet_incidence: a facet lies on fewer than 3 vertices")
    pairs = Counter(p for v in P.vertices for p in itertools.combinations(v, 2))
    if any(c >= 3 for c in pairs.values()):
        problems.append("simplicity: a facet pair lies on 3 or more vertices")
    if any(c == 1 for c in pairs.values()):
        problems.append("edges: a facet pair lies on exactly one vertex")
    V, E = len(P.vertices), sum(1 for c in pairs.values() if c == 2)
    if V - E + P.m != 2:
        problems.append(f"euler: V - E + F = {V - E + P.m}")
    if not problems:
        bad = [f for f in P.facets if _facet_cycle(P, f) is None]
        if bad:
            problems.append(f"facet_cycle: facets {bad} do not bound a single cycle")
    if not problems and not _connected(P):
        problems.append("connected: facet adjacency graph is disconnected")
    return problems


def _connected(P: Polytope) -> bool:
    seen = {1}
    queue = deque([1])
    while queue:
        f = queue.popleft()
        for g in P.neighbours[f]:
            if g not in seen:
                seen.add(g)
                queue.append(g)
    return len(seen) == P.m


def checked(P: Polytope) -> Polytope:
    problems = validate(P)
    if problems:
        raise InvalidPolytope(problems)
    return P


def build_simplex3() -> Polytope:
    return checked(Polytope("simplex3", 4, tuple(itertools.combinations(range(1, 5), 3))))


def build_cube() -> Polytope:
    """The 3-cube with opposite facets labelled {1,2}, {3,4}, {5,6}."""
    verts = tuple(itertools.product((1, 2), (3, 4), (5, 6)))
    return checked(Polytope("cube", 6, verts))


def build_dodecahedron() -> Polytope:
    """The dodecahedron, facets labelled by the vertices of a dual icosahedron."""
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for a, b in itertools.product((1, -1), repeat=2):
        pts += [(0, a, b * phi), (a, b * phi, 0), (a * phi, 0, b)]
    # nearest neighbours on the icosahedron sit at distance 2
    def close(p, q):
        return abs(math.dist(p, q) - 2) < 1e-9

    tris = [
        (i + 1, j + 1, k + 1)
        for i, j, k in itertools.combinations(range(12), 3)
        if close(pts[i], pts[j]) and close(pts[j], pts[k]) and close(pts[i], pts[k])
    ]
    return checked(Polytope("dodecahedron", 12, tuple(tris)))


def build_lobell(n: int) -> Polytope:
    """Löbell polyhedron R(n).

    Facet 1 is the top n-gon, 2..n+1 the upper pentagon ring, n+2..2n+1 the
    lower ring and 2n+2 the bottom n-gon.  Lower facet n+1+i touches upper
    facets 1+i and 2+i (indices cyclic).
    """
    if n < 5:
        raise ValueError("Löbell polyhedra need n >= 5")
    top, bottom = 1, 2 * n + 2

    def up(i):
        return 2 + i % n

    def low(i):
        return n + 2 + i % n

    verts = []
    for i in range(n):
        verts.append((top, up(i), up(i + 1)))
        verts.append((up(i), up(i + 1), low(i)))
        verts.append((up(i + 1), low(i), low(i + 1)))
        verts.append((bottom, low(i), low(i + 1)))
    return checked(Polytope(f"lobell:{n}", 2 * n + 2, tuple(verts)))


def load_polytope(path: str | Path) -> Polytope:
    data = json.loads(Path(path).read_text())
    if set(data) != {"name", "m", "vertices"}:
        raise InvalidPolytope([f"schema: expected keys name, m, vertices; got {sorted(data)}"])
    if not isinstance(data["m"], int) or not isinstance(data["name"], str):
        raise InvalidPolytope(["schema: name must be a string and m an integer"])
    verts = data["vertices"]
    if not all(isinstance(v, list) and len(v) == 3 and all(isinstance(x, int) for x in v) for v in verts):
        raise InvalidPolytope(["schema: vertices must be integer triples"])
    return checked(Polytope(data["name"], data["m"], tuple(tuple(v) for v in verts)))


def polytope_from_spec(spec: str) -> Polytope:
    """Parse ``cube|dodecahedron|simplex3|lobell:<N>|file:<path>``."""
    if spec == "cube":
        return build_cube()
    if spec == "dodecahedron":
        return build_dodecahedron()
    if spec == "simplex3":
        return build_simplex3()
    if spec.startswith("lobell:"):
        return build_lobell(int(spec.split(":", 1)[1]))
    if spec.startswith("file:"):
        return load_polytope(spec.split(":", 1)[1])
    raise ValueError(f"unknown polytope spec {spec!r}")


def facet_graph(P: Polytope) -> dict[int, list[int]]:
    return {f: sorted(P.neighbours[f]) for f in P.facets}


@dataclass(frozen=True)
class DualComplex:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)


def dual_complex(P: Polytope) -> DualComplex:
    return DualComplex(tuple(P.facets), P.edges, P.vertices)


@dataclass(frozen=True)
class RotationSystem:
    """Coherently oriented dual triangles and the induced cyclic order at each facet.

    ``successor[f][g]`` is the neighbour following g when walking around f.
    """

    triangles: tuple[tuple[int, int, int], ...]
    successor: dict[int, dict[int, int]] = field(hash=False, compare=False)

    def cycle(self, f: int) -> tuple[int, ...]:
        succ = self.successor[f]
        start = min(succ)
        out = [start]
        while (nxt := succ[out[-1]]) != start:
            out.append(nxt)
        return tuple(out)

    def sign(self, tri: tuple[int, int, int]) -> int:
        """+1 if ``tri`` is listed in the positive cyclic order, -1 otherwise."""
        a, b, c = tri
        return 1 if self.successor[a].get(b) == c else -1


class OrientationError(ValueError):
    pass


def _rotations(tri):
    a, b, c = tri
    return (a, b, c), (b, c, a), (c, a, b)


@functools.lru_cache(maxsize=None)
def orient(P: Polytope) -> RotationSystem:
    """Propagate an orientation from the first vertex triple across shared edges."""
    by_edge: dict[frozenset, list[tuple[int, int, int]]] = {}
    for t in P.vertices:
        for pair in itertools.combinations(t, 2):
            by_edge.setdefault(frozenset(pair), []).append(t)
    oriented: dict[tuple[int, int, int], tuple[int, int, int]] = {P.vertices[0]: P.vertices[0]}
    queue = deque([P.vertices[0]])
    while queue:
        t = queue.popleft()
        o = oriented[t]
        for x, y, _ in _rotations(o):
            # the neighbour across edge x->y must traverse it as y->x
            for u in by_edge[frozenset((x, y))]:
                if u == t:
                    continue
                z = next(w for w in u if w not in (x, y))
                want = (y, x, z)
                if u in oriented:
                    if oriented[u] not in _rotations(want):
                        raise OrientationError(f"inconsistent orientation at edge {x}-{y}")
                else:
                    oriented[u] = want
                    queue.append(u)
    if len(oriented) != len(P.vertices):
        raise OrientationError("vertex triples are not connected through edges")
    successor: dict[int, dict[int, int]] = {f: {} for f in P.facets}
    for o in oriented.values():
        for a, b, c in _rotations(o):
            if b in successor[a]:
                raise OrientationError(f"facet {a} is not a disc")
            successor[a][b] = c
    tris = tuple(oriented[t] for t in P.vertices)
    return RotationSystem(tris, successor)


def boundary_edge_direction(rs: RotationSystem, f: int, g: int):
    """Endpoints (as vertex triples) of edge f|g in the order facet f traverses it."""
    succ = rs.successor[f]
    pred = {v: u for u, v in succ.items()}
    start = frozenset((f, pred[g], g))
    end = frozenset((f, g, succ[g]))
    return start, end
