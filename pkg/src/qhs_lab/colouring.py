"""Z_2^k colourings of polytope facets, their properness, orientability,
extensions and canonical forms under equivalence."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import gf2
from .gf2 import BitMatrix
from .polytope import Polytope, polytope_from_spec
from .symmetry import Automorphism, automorphisms


class ColouringError(ValueError):
    pass


@dataclass(frozen=True)
class Colouring:
    """Facet colours as k-bit ints; ``columns[j]`` colours facet j+1."""

    polytope: Polytope
    k: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if len(self.columns) != self.polytope.m:
            raise ColouringError(
                f"{len(self.columns)} colours for a polytope with {self.polytope.m} facets"
            )
        if any(c < 0 or c >> self.k for c in self.columns):
            raise ColouringError(f"colour does not fit in {self.k} bits")
        if gf2.rank_of_rows(self.columns) != self.k:
            raise ColouringError(f"colouring is not surjective onto Z_2^{self.k}")

    @classmethod
    def from_matrix(cls, P: Polytope, M: BitMatrix) -> "Colouring":
        if M.ncols != P.m:
            raise ColouringError(f"matrix has {M.ncols} columns, polytope has {P.m} facets")
        return cls(P, M.k, M.columns())

    @property
    def matrix(self) -> BitMatrix:
        return BitMatrix.from_columns(self.columns, self.k)

    def __call__(self, f: int) -> int:
        return self.columns[f - 1]

    def is_odd(self) -> bool:
        return all(gf2.is_odd(c) for c in self.columns)

    def transform(self, A: BitMatrix | None = None, s: Automorphism | None = None) -> "Colouring":
        """The colouring F -> A(lambda(s(F)))."""
        cols = self.columns
        if s is not None:
            cols = tuple(cols[s(f) - 1] for f in self.polytope.facets)
        if A is not None:
            cols = tuple(A.apply(c) for c in cols)
        return Colouring(self.polytope, self.k, cols)


def proper_by_independence(lam: Colouring) -> bool:
    """Colours on every simplex of the dual complex are linearly independent."""
    P = lam.polytope
    if any(c == 0 for c in lam.columns):
        return False
    for a, b in P.edges:
        if lam(a) == lam(b):
            return False
    for v in P.vertices:
        if gf2.rank_of_rows([lam(x) for x in v]) < 3:
            return False
    return True


def proper_by_odd_sums(lam: Colouring) -> bool:
    """Properness for odd colours: sums over even-size simplices are nonzero.

    In a 2-dimensional dual complex those are exactly the edges.
    """
    if not lam.is_odd():
        raise ColouringError("odd-sum test needs odd-weight colours")
    return all(lam(a) != lam(b) for a, b in lam.polytope.edges)


def is_proper(lam: Colouring) -> bool:
    if lam.is_odd():
        return proper_by_odd_sums(lam)
    return proper_by_independence(lam)


def is_orientable(lam: Colouring) -> bool:
    return gf2.in_span(gf2.ones(lam.polytope.m), lam.matrix)


@dataclass(frozen=True)
class Subcomplex:
    """Full subcomplex of the dual complex on the facets in ``support``."""

    omega: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices


def induced_subcomplex(P: Polytope, omega: int) -> Subcomplex:
    inside = lambda f: (omega >> (f - 1)) & 1
    return Subcomplex(
        omega,
        tuple(f for f in P.facets if inside(f)),
        tuple(e for e in P.edges if inside(e[0]) and inside(e[1])),
        tuple(t for t in P.vertices if all(inside(x) for x in t)),
    )


def subcomplex(lam: Colouring, omega: int) -> Subcomplex:
    # membership of omega in Row(Lambda) is the caller's business
    return induced_subcomplex(lam.polytope, omega)


def extensions(lam: Colouring) -> list[Colouring]:
    """All rank k+1 colourings projecting onto lam by dropping the last coordinate."""
    P, k = lam.polytope, lam.k
    if k + 1 > gf2.MAX_BITS:
        raise ColouringError("rank too large to extend")
    pivots = gf2.reduce_basis(lam.matrix.rows)
    out = []
    for b in range(1 << P.m):
        if gf2.reduce(b, pivots) == 0:
            continue
        cols = tuple(c | (((b >> j) & 1) << k) for j, c in enumerate(lam.columns))
        out.append(Colouring(P, k + 1, cols))
    return out


# --- canonical forms -------------------------------------------------------


def _lex_key_table(m: int):
    """Map a row bitmask to an int ordering rows like their 0/1 strings."""
    def key(v: int) -> int:
        out = 0
        for j in range(m):
            out = (out << 1) | ((v >> j) & 1)
        return out

    return key


def _permute_bits(v: int, src: Sequence[int]) -> int:
    """Bit j of the result is bit src[j] of v."""
    out = 0
    for j, s in enumerate(src):
        if (v >> s) & 1:
            out |= 1 << j
    return out


def _min_basis(space_keys: list[int], k: int, total: int | None) -> tuple[int, ...]:
    """Lexicographically least ordered basis (as lex keys) of a k-dim space.

    With ``total`` set, only bases whose sum is ``total`` are allowed.  Each
    prefix is completable iff ``total`` is outside its span (for prefixes of
    length < k), so a greedy choice is optimal.
    """
    ordered = sorted(x for x in space_keys if x)
    chosen: list[int] = []
    spanned = {0}
    for step in range(k):
        if total is not None and step == k - 1:
            last = total
            for c in chosen:
                last ^= c
            chosen.append(last)
            break
        for x in ordered:
            if x in spanned:
                continue
            new_span = spanned | {y ^ x for y in spanned}
            if total is not None and total in new_span:
                continue
            chosen.append(x)
            spanned = new_span
            break
    return tuple(chosen)


def canonical_form(lam: Colouring, group: str = "full_gl") -> bytes:
    """Least row-major 0/1 string of A * Lambda * s over the symmetry group and
    GL_k (``full_gl``) or GL_k^or (``gl_or``)."""
    if group not in ("full_gl", "gl_or"):
        raise ValueError(f"unknown group {group!r}")
    P, k, m = lam.polytope, lam.k, lam.polytope.m
    key = _lex_key_table(m)
    rows = lam.matrix.rows
    space = gf2.span(rows)
    row_sum = 0
    for r in rows:
        row_sum ^= r
    best = None
    for s in automorphisms(P):
        src = [s(f) - 1 for f in P.facets]
        keys = [key(_permute_bits(v, src)) for v in space]
        total = key(_permute_bits(row_sum, src)) if group == "gl_or" else None
        cand = _min_basis(keys, k, total)
        if best is None or cand < best:
            best = cand
    return _keys_to_bytes(best, m)


def _keys_to_bytes(keys: Sequence[int], m: int) -> bytes:
    return "\n".join(format(x, f"0{m}b") for x in keys).encode()


def canonical_matrix(form: bytes) -> BitMatrix:
    return BitMatrix.from_text(form.decode())


def canonical_form_bruteforce(lam: Colouring, group: str = "full_gl") -> bytes:
    """Reference implementation enumerating every (s, A) pair."""
    P, k = lam.polytope, lam.k
    mats = gf2.enumerate_gl(k, orientable_only=(group == "gl_or"))
    best = None
    for s in automorphisms(P):
        moved = lam.transform(s=s)
        for A in mats:
            text = _apply_matrix(A, moved).to_text()
            if best is None or text < best:
                best = text
    return best.encode()


def _apply_matrix(A: BitMatrix, lam: Colouring) -> BitMatrix:
    return BitMatrix.from_columns([A.apply(c) for c in lam.columns], lam.k)


def equivalent(lam: Colouring, mu: Colouring, group: str = "full_gl") -> bool:
    if lam.polytope != mu.polytope or lam.k != mu.k:
        return False
    return canonical_form(lam, group) == canonical_form(mu, group)


def find_equivalence(lam: Colouring, mu: Colouring):
    """Brute-force (A, s) with lam = A * mu * s, or None."""
    if lam.k != mu.k or lam.polytope != mu.polytope:
        return None
    for s in automorphisms(lam.polytope):
        moved = mu.transform(s=s)
        for A in gf2.iter_gl(lam.k):
            if tuple(A.apply(c) for c in moved.columns) == lam.columns:
                return A, s
    return None


# --- file format -------------------------------------------------------------


def parse_colouring(text: str, polytope: Polytope | None = None) -> Colouring:
    """Header line ``polytope: <spec>`` followed by the matrix rows."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ColouringError("empty colouring file")
    header = lines[0]
    if header.lower().startswith("polytope"):
        spec = header.split(":", 1)[1].strip() if ":" in header else header.split(None, 1)[1]
        body = lines[1:]
        if polytope is None:
            polytope = polytope_from_spec(spec)
    else:
        body = lines
    if polytope is None:
        raise ColouringError("colouring file names no polytope")
    return Colouring.from_matrix(polytope, BitMatrix.from_text("\n".join(body)))


def load_colouring(path: str | Path, polytope: Polytope | None = None) -> Colouring:
    return parse_colouring(Path(path).read_text(), polytope)


def format_colouring(lam: Colouring, spec: str | None = None) -> str:
    return f"polytope: {spec or lam.polytope.name}\n{lam.matrix.to_text()}\n"


def all_colour_subsets(lam: Colouring):
    """Distinct colours used by lam, and all their independent subsets."""
    colours = sorted(set(lam.columns))
    for r in range(1, lam.k + 1):
        for sub in itertools.combinations(colours, r):
            if gf2.rank_of_rows(sub) == r:
                yield sub
