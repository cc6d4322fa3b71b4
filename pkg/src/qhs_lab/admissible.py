"""Admissible symmetries of a colouring, the linear maps realising them, and
checks of the structural restrictions they obey on rational homology spheres."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import gf2
from .colouring import Colouring, is_orientable, is_proper
from .gf2 import BitMatrix
from .homology import is_qhs
from .symmetry import (
    ROTATIONS,
    Automorphism,
    SymmetryClassification,
    automorphisms,
    classify,
    fix_facets,
)


def induced_linear_map(lam: Colouring, phi: Automorphism) -> BitMatrix | None:
    """The A in GL_k with A(lam(F)) = lam(phi(F)) for all F, or None."""
    P, k = lam.polytope, lam.k
    image_of: dict[int, int] = {}
    for f in P.facets:
        c, d = lam(f), lam(phi(f))
        if image_of.setdefault(c, d) != d:
            return None
    basis, targets = [], []
    for f in P.facets:
        c = lam(f)
        if gf2.rank_of_rows(basis + [c]) > len(basis):
            basis.append(c)
            targets.append(image_of[c])
        if len(basis) == k:
            break
    cols = []
    for i in range(k):
        coeff = gf2.coordinates(1 << i, basis)
        img = 0
        for j, t in enumerate(targets):
            if (coeff >> j) & 1:
                img ^= t
        cols.append(img)
    A = BitMatrix.from_columns(cols, k)
    if not gf2.is_invertible(A):
        return None
    if any(A.apply(c) != d for c, d in image_of.items()):
        return None
    return A


def is_good(lam: Colouring, phi: Automorphism) -> bool:
    colours = [lam(f) for f in fix_facets(lam.polytope, phi)]
    return gf2.rank_of_rows(colours) < lam.k


# --- naming small groups -----------------------------------------------------

# nonabelian groups told apart by (order, sorted element orders)
_NONABELIAN = {
    (6, (1, 2, 2, 2, 3, 3)): "S3",
    (8, (1,) + (2,) * 5 + (4,) * 2): "D8",
    (8, (1, 2) + (4,) * 6): "Q8",
    (10, (1,) + (2,) * 5 + (5,) * 4): "D10",
    (12, (1,) + (2,) * 3 + (3,) * 8): "A4",
    (12, (1,) + (2,) * 7 + (3,) * 2 + (6,) * 2): "D12",
    (12, (1, 2) + (3,) * 2 + (4,) * 6 + (6,) * 2): "Dic12",
    (14, (1,) + (2,) * 7 + (7,) * 6): "D14",
    (24, (1,) + (2,) * 9 + (3,) * 8 + (4,) * 6): "S4",
    (24, (1, 2) + (3,) * 8 + (4,) * 6 + (6,) * 8): "SL(2,3)",
}


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _exponent(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _abelian_name(counts: Counter, group_order: int) -> str:
    """Invariant factors of an abelian group read off its element orders.

    For the p-part, log_p #{g : g^(p^j) = 1} grows by the number of cyclic
    factors of order at least p^j.
    """
    per_prime: list[list[int]] = []
    for p in _prime_factors(group_order):
        logs = [0]
        while True:
            j = len(logs)
            n = sum(c for o, c in counts.items() if (p ** j) % o == 0)
            logs.append(_exponent(n, p))
            if logs[-1] == logs[-2]:
                break
        at_least = [b - a for a, b in zip(logs, logs[1:])]
        parts = []
        for j, c in enumerate(at_least):
            nxt = at_least[j + 1] if j + 1 < len(at_least) else 0
            parts += [p ** (j + 1)] * (c - nxt)
        per_prime.append(sorted(parts, reverse=True))
    width = max(len(x) for x in per_prime)
    factors = [1] * width
    for parts in per_prime:
        for i, q in enumerate(parts):
            factors[i] *= q
    return "x".join(f"Z{q}" for q in factors)


def identify_group(orders: list[int] | Counter, abelian: bool, group_order: int) -> str:
    """Name a group of order <= 48 from its element orders and commutativity."""
    counts = Counter(orders)
    if sum(counts.values()) != group_order:
        raise ValueError("element orders do not add up to the group order")
    if group_order == 1:
        return "trivial"
    if group_order > 48:
        return f"unrecognized(order={group_order})"
    if abelian:
        return _abelian_name(counts, group_order)
    key = (group_order, tuple(sorted(counts.elements())))
    name = _NONABELIAN.get(key)
    if name is None:
        spectrum = ",".join(f"{o}^{c}" for o, c in sorted(counts.items()))
        return f"unrecognized(order={group_order};orders={spectrum})"
    return name


# --- the admissible group ----------------------------------------------------


@dataclass(frozen=True)
class AdmissibleElement:
    phi: Automorphism
    psi: BitMatrix
    classification: SymmetryClassification
    good: bool


@dataclass(frozen=True)
class SymGroupReport:
    elements: tuple[AdmissibleElement, ...]
    k: int
    identified_name: str = ""

    @property
    def group_order(self) -> int:
        return len(self.elements)

    @property
    def coloured_isometry_order(self) -> int:
        return self.group_order * 2 ** self.k

    def kinds(self) -> Counter:
        return Counter(e.classification.kind for e in self.elements)

    def element_orders(self) -> list[int]:
        return [e.phi.order() for e in self.elements]


def _is_abelian(perms: list[Automorphism]) -> bool:
    return all(a.compose(b) == b.compose(a) for a in perms for b in perms)


def admissible_group(lam: Colouring) -> SymGroupReport:
    P = lam.polytope
    elements = []
    for phi in automorphisms(P):
        A = induced_linear_map(lam, phi)
        if A is None:
            continue
        elements.append(AdmissibleElement(phi, A, classify(P, phi), is_good(lam, phi)))
    perms = [e.phi for e in elements]
    name = identify_group([p.order() for p in perms], _is_abelian(perms), len(perms))
    return SymGroupReport(tuple(elements), lam.k, name)


# --- structural audit --------------------------------------------------------


@dataclass
class AuditReport:
    group: SymGroupReport
    defects: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.defects


class PreconditionError(ValueError):
    pass


def obstruction_audit(lam: Colouring, report: SymGroupReport | None = None) -> AuditReport:
    """Check every restriction on admissible symmetries of a rational homology sphere."""
    if not (is_proper(lam) and is_orientable(lam) and is_qhs(lam)):
        raise PreconditionError("audit needs a proper orientable colouring of a QHS")
    report = report or admissible_group(lam)
    k = lam.k
    out = AuditReport(report)
    defect = out.defects.append
    for e in report.elements:
        kind, order = e.classification.kind, e.classification.order
        where = f"{e.phi.cycle_notation()} [{kind}, order {order}]"
        if kind == "identity":
            continue
        if kind == "reflection":
            defect(f"reflection admitted: {where}")
        if kind == "antipodal":
            defect(f"antipodal map admitted: {where}")
        if e.good and order == 2:
            defect(f"good order-2 element: {where}")
        if e.good and not (kind == "edge_rotoreflection" or kind in ROTATIONS and order % 2):
            defect(f"good element that is neither an edge rotoreflection nor odd rotation: {where}")
        if kind == "face_rotation" and order % 2 == 0:
            defect(f"even-order face rotation: {where}")
        if kind in ("vertex_rotoreflection", "face_rotoreflection"):
            defect(f"forbidden rotoreflection: {where}")
        allowed = (
            kind == "edge_rotation" and not e.good and k <= 4
            or kind == "face_edge_rotation" and not e.good and k == 3
            or kind == "edge_rotoreflection" and e.good and k <= 4
            or kind == "face_rotation" and e.good and order % 2 == 1
            or kind in ("vertex_rotation", "face_vertex_rotation")
        )
        if not allowed:
            defect(f"kind not permitted at rank {k}: {where} good={e.good}")
        if gf2.matrix_order(e.psi) != order:
            defect(f"linear map order {gf2.matrix_order(e.psi)} differs: {where}")
        if not gf2.is_orientation_preserving(e.psi) and lam.is_odd():
            defect(f"linear map leaves GL^or: {where}")
    psis = [e.psi for e in report.elements]
    if len(set(psis)) != len(psis):
        defect("representation on colours is not injective")
    if k >= 5 and report.group_order % 2 == 0:
        defect(f"even group order {report.group_order} at rank {k}")
    return out


def check_homomorphism(report: SymGroupReport) -> bool:
    by_perm = {e.phi.perm: e.psi for e in report.elements}
    for a in report.elements:
        for b in report.elements:
            ab = a.phi.compose(b.phi)
            if by_perm.get(ab.perm) != a.psi @ b.psi:
                return False
    return True
