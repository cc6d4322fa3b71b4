"""Linear algebra over GF(2) with vectors packed into Python ints.

Bit ``j`` of a row holds column ``j`` (0-based); bit ``i`` of a colour holds
the coefficient of the basis vector ``e_{i+1}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_BITS = 32
MAX_GL_RANK = 5


def weight(v: int) -> int:
    return bin(v).count("1")


def is_odd(v: int) -> bool:
    return weight(v) & 1 == 1


def unit(i: int) -> int:
    """The basis vector e_i (1-based)."""
    return 1 << (i - 1)


def ones(n: int) -> int:
    return (1 << n) - 1


def parity(v: int) -> int:
    return weight(v) & 1


@dataclass(frozen=True)
class BitMatrix:
    """A k x m matrix over GF(2) stored as a tuple of row bitmasks."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 1:
            raise ValueError("matrix needs at least one column")
        mask = ones(self.ncols)
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise ValueError(f"row {r:#x} has bits beyond column {self.ncols}")

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return self.ncols

    @classmethod
    def from_columns(cls, columns: Sequence[int], k: int) -> "BitMatrix":
        rows = []
        for i in range(k):
            r = 0
            for j, c in enumerate(columns):
                if (c >> i) & 1:
                    r |= 1 << j
            rows.append(r)
        for c in columns:
            if c >> k:
                raise ValueError(f"column {c:#x} does not fit in {k} rows")
        return cls(tuple(rows), len(columns))

    @classmethod
    def identity(cls, k: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(k)), k)

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        width = len(lines[0])
        rows = []
        for ln in lines:
            if len(ln) != width or set(ln) - {"0", "1"}:
                raise ValueError(f"bad matrix line {ln!r}")
            rows.append(sum(1 << j for j, ch in enumerate(ln) if ch == "1"))
        return cls(tuple(rows), width)

    def to_text(self) -> str:
        return "\n".join(
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.ncols)) for r in self.rows
        )

    def column(self, j: int) -> int:
        c = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                c |= 1 << i
        return c

    def columns(self) -> tuple[int, ...]:
        return tuple(self.column(j) for j in range(self.ncols))

    def apply(self, v: int) -> int:
        """Matrix-vector product for a square (or k x m) matrix."""
        out = 0
        for i, r in enumerate(self.rows):
            if parity(r & v):
                out |= 1 << i
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.k:
            raise ValueError("shape mismatch")
        return BitMatrix.from_columns([self.apply(c) for c in other.columns()], self.k)

    def __str__(self) -> str:
        return self.to_text()


def rank(M: BitMatrix) -> int:
    return rank_of_rows(M.rows)


def rank_of_rows(rows: Iterable[int]) -> int:
    """Row rank by elimination on the lowest set bit of each pivot."""
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            p = pivots.get(low)
            if p is None:
                pivots[low] = r
                break
            r ^= p
    return len(pivots)


def reduce_basis(rows: Iterable[int]) -> dict[int, int]:
    """Echelon basis keyed by pivot (lowest set bit)."""
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            p = pivots.get(low)
            if p is None:
                pivots[low] = r
                break
            r ^= p
    return pivots


def reduce(v: int, pivots: dict[int, int]) -> int:
    while v:
        low = v & -v
        p = pivots.get(low)
        if p is None:
            return v
        v ^= p
    return 0


def span(vectors: Sequence[int]) -> list[int]:
    """All GF(2) combinations of ``vectors``, indexed by coefficient mask."""
    out = [0]
    for v in vectors:
        out += [x ^ v for x in out]
    return out


def row_space(M: BitMatrix) -> frozenset[int]:
    return frozenset(span(M.rows))


def in_span(v: int, M: BitMatrix) -> bool:
    if v < 0 or v >> M.ncols:
        raise ValueError(f"vector does not have length {M.ncols}")
    return reduce(v, reduce_basis(M.rows)) == 0


def orientable_vectors(k: int) -> list[int]:
    """Odd-weight vectors of length k, in increasing order."""
    if not 1 <= k <= MAX_BITS:
        raise ValueError(f"k must lie in 1..{MAX_BITS}")
    if k > 20:
        return [v for v in range(1, 1 << k) if is_odd(v)]
    return [v for v in range(1 << k) if is_odd(v)]


def iter_gl(k: int, orientable_only: bool = False) -> Iterator[BitMatrix]:
    """Yield invertible k x k matrices, chosen column by column."""
    if k > MAX_GL_RANK:
        raise ValueError(f"GL enumeration guarded to k <= {MAX_GL_RANK}")
    candidates = orientable_vectors(k) if orientable_only else list(range(1, 1 << k))

    def extend(cols: list[int], spanned: set[int]):
        if len(cols) == k:
            yield BitMatrix.from_columns(cols, k)
            return
        for c in candidates:
            if c in spanned:
                continue
            cols.append(c)
            yield from extend(cols, spanned | {x ^ c for x in spanned})
            cols.pop()

    yield from extend([], {0})


def enumerate_gl(k: int, orientable_only: bool = False) -> list[BitMatrix]:
    return list(iter_gl(k, orientable_only))


def is_invertible(A: BitMatrix) -> bool:
    return A.k == A.ncols and rank(A) == A.k


def is_orientation_preserving(A: BitMatrix) -> bool:
    return all(is_odd(c) for c in A.columns())


def matrix_order(A: BitMatrix) -> int:
    if not is_invertible(A):
        raise ValueError("matrix is not invertible")
    ident = BitMatrix.identity(A.k)
    P, d = A, 1
    while P != ident:
        P = P @ A
        d += 1
    return d


def matrix_power(A: BitMatrix, e: int) -> BitMatrix:
    out = BitMatrix.identity(A.k)
    base = A
    while e:
        if e & 1:
            out = out @ base
        base = base @ base
        e >>= 1
    return out


def inverse(A: BitMatrix) -> BitMatrix:
    """Inverse by Gauss-Jordan on the augmented rows."""
    k = A.k
    aug = [A.rows[i] | (1 << (k + i)) for i in range(k)]
    for col in range(k):
        piv = next((i for i in range(col, k) if (aug[i] >> col) & 1), None)
        if piv is None:
            raise ValueError("matrix is not invertible")
        aug[col], aug[piv] = aug[piv], aug[col]
        for i in range(k):
            if i != col and (aug[i] >> col) & 1:
                aug[i] ^= aug[col]
    return BitMatrix(tuple(r >> k for r in aug), k)


def coordinates(v: int, basis: Sequence[int]) -> int:
    """Coefficient mask c with XOR of basis[i] over bits of c equal to v.

    Raises ValueError if the basis is dependent or v lies outside its span.
    """
    # each basis vector carries its coefficient tag above bit ``shift``
    shift = max([v.bit_length()] + [b.bit_length() for b in basis])
    low_mask = ones(shift)
    pivots: dict[int, int] = {}
    for i, b in enumerate(basis):
        r = b | (1 << (shift + i))
        while r & low_mask:
            low = r & -r
            p = pivots.get(low)
            if p is None:
                pivots[low] = r
                break
            r ^= p
        else:
            raise ValueError("basis vectors are dependent")
    r = v
    while r & low_mask:
        p = pivots.get(r & -r)
        if p is None:
            raise ValueError("vector not in span of basis")
        r ^= p
    return r >> shift


def matrices_with_constraints(
    k: int, order: int, constraints: Sequence[tuple[int, int]]
) -> list[BitMatrix]:
    """All A in GL_k^or with A^order = id and A(v) = w for every (v, w).

    Raises ValueError when the constraints are not the restriction of a
    linear map (e.g. the same source sent to two different targets).
    """
    if k > MAX_GL_RANK:
        raise ValueError(f"GL enumeration guarded to k <= {MAX_GL_RANK}")
    # reduce the constraints to images of an independent family
    sources: list[int] = []
    targets: list[int] = []
    for v, w in constraints:
        if v >> k or w >> k:
            raise ValueError("constraint vector does not fit in k bits")
        if sources:
            try:
                c = coordinates(v, sources)
            except ValueError:
                c = None
            if c is not None:
                image = 0
                for i, t in enumerate(targets):
                    if (c >> i) & 1:
                        image ^= t
                if image != w:
                    raise ValueError(f"inconsistent constraints at {v:#x}")
                continue
        elif v == 0:
            if w != 0:
                raise ValueError("zero vector must map to zero")
            continue
        sources.append(v)
        targets.append(w)
    if rank_of_rows(targets) != len(targets):
        raise ValueError("constraints force a singular map")

    basis = list(sources)
    for i in range(k):
        if len(basis) == k:
            break
        e = 1 << i
        if rank_of_rows(basis + [e]) > len(basis):
            basis.append(e)
    free = k - len(sources)
    # image of e_i = combination of basis images with coordinates of e_i
    coords = [coordinates(1 << i, basis) for i in range(k)]
    ident = BitMatrix.identity(k)
    out = []
    for extra in itertools.product(range(1 << k), repeat=free):
        images = targets + list(extra)
        cols = []
        for c in coords:
            img = 0
            for j, t in enumerate(images):
                if (c >> j) & 1:
                    img ^= t
            cols.append(img)
        if not all(is_odd(c) for c in cols):
            continue
        if rank_of_rows(cols) < k:
            continue
        A = BitMatrix.from_columns(cols, k)
        if matrix_power(A, order) == ident:
            out.append(A)
    out.sort(key=lambda A: A.columns())
    return out
