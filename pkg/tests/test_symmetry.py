from collections import Counter

import pytest
from hypothesis import given, strategies as st

from qhs_lab.polytope import build_cube, build_dodecahedron, build_lobell, build_simplex3
from qhs_lab.symmetry import (
    ROTOREFLECTIONS,
    Automorphism,
    automorphisms,
    classify,
    fix_facets,
    identity,
    invariant_cells,
    named_rotation,
    orientation_character,
    parse_permutation,
)

from oracles import brute_automorphisms

POLYTOPES = {
    "simplex3": build_simplex3,
    "cube": build_cube,
    "dodecahedron": build_dodecahedron,
    **{f"lobell{n}": (lambda n=n: build_lobell(n)) for n in range(5, 9)},
}
ORDERS = {"simplex3": 24, "cube": 48, "dodecahedron": 120,
          "lobell5": 120, "lobell6": 24, "lobell7": 28, "lobell8": 32}


@pytest.mark.parametrize("name", POLYTOPES)
def test_group_order_and_axioms(name):
    P = POLYTOPES[name]()
    group = automorphisms(P)
    assert len(group) == ORDERS[name]
    assert group[0].is_identity()
    assert (4 * len(P.edges)) % len(group) == 0
    perms = {g.perm: g for g in group}
    for a in group:
        assert a.inverse().perm in perms
        for b in group:
            ab = a * b
            assert ab.perm in perms
            assert perms[ab.perm].orientation == ab.orientation


@pytest.mark.parametrize("build", [build_simplex3, build_cube])
def test_automorphisms_match_brute_force(build):
    P = build()
    assert sorted(g.perm for g in automorphisms(P)) == sorted(brute_automorphisms(P))


@pytest.mark.parametrize("name", POLYTOPES)
def test_orientation_character(name):
    P = POLYTOPES[name]()
    group = automorphisms(P)
    for g in group:
        assert orientation_character(P, g) == g.orientation
    assert sum(1 for g in group if g.orientation > 0) * 2 == len(group)


def test_cube_mirror_reverses_orientation():
    P = build_cube()
    mirror = next(g for g in automorphisms(P) if g.perm == (2, 1, 3, 4, 5, 6))
    assert orientation_character(P, mirror) == -1
    assert orientation_character(P, identity(6)) == 1


def test_cube_kind_census():
    P = build_cube()
    census = Counter((c.kind, c.order) for c in (classify(P, g) for g in automorphisms(P)))
    assert census == Counter({
        ("identity", 1): 1,
        ("reflection", 2): 9,
        ("face_rotation", 2): 3,
        ("face_rotation", 4): 6,
        ("antipodal", 2): 1,
        ("edge_rotation", 2): 6,
        ("face_rotoreflection", 4): 6,
        ("vertex_rotation", 3): 8,
        ("vertex_rotoreflection", 6): 8,
    })


def test_cube_quarter_turn_and_antipodal():
    P = build_cube()
    turn = Automorphism(parse_permutation("(3 5 4 6)", 6), 1)
    c = classify(P, turn)
    assert (c.kind, c.order) == ("face_rotation", 4)
    assert {cell for _, cell in c.poles} == {(1,), (2,)}
    anti = next(g for g in automorphisms(P) if g.perm == (2, 1, 4, 3, 6, 5))
    c = classify(P, anti)
    assert (c.kind, c.poles) == ("antipodal", ())


def test_simplex_rotoreflection():
    P = build_simplex3()
    phi = Automorphism(parse_permutation("(1 3 2 4)", 4), -1)
    assert phi.perm in {g.perm for g in automorphisms(P)}
    c = classify(P, phi)
    assert (c.kind, c.order) == ("edge_rotoreflection", 4)
    assert fix_facets(P, phi) == frozenset()


def test_lobell7_census():
    P = build_lobell(7)
    census = Counter((c.kind, c.order) for c in (classify(P, g) for g in automorphisms(P)))
    assert census == Counter({
        ("identity", 1): 1,
        ("reflection", 2): 7,
        ("face_rotation", 7): 6,
        ("face_rotoreflection", 14): 6,
        ("edge_rotation", 2): 7,
        ("antipodal", 2): 1,
    })


def test_heptagon_rotation_fix_facets():
    P = build_lobell(7)
    phi = named_rotation(P, (1,))
    assert phi(2) == 3 and phi.order() == 7
    assert fix_facets(P, phi) == {1, 16}


@pytest.mark.parametrize("name", POLYTOPES)
def test_classification_invariants(name):
    P = POLYTOPES[name]()
    for g in automorphisms(P):
        c = classify(P, g)
        assert c.order == g.order()
        if c.kind == "identity":
            continue
        if g.orientation > 0:
            assert len(c.poles) == 2
        empty = c.kind == "antipodal" or c.kind in ROTOREFLECTIONS
        assert (fix_facets(P, g) == frozenset()) == empty
        if c.kind == "edge_rotation":
            assert len(fix_facets(P, g)) == 4


@pytest.mark.parametrize("name", ["cube", "dodecahedron", "lobell7"])
def test_reflection_fixed_cells_form_a_cycle(name):
    # the invariant facets and edges of a mirror are the cells cut by a great circle
    P = POLYTOPES[name]()
    for g in automorphisms(P):
        if classify(P, g).kind != "reflection":
            continue
        cells = invariant_cells(P, g)
        nodes = [("f", f) for f in cells.facets] + [("e", e) for e in cells.edges] + [
            ("v", v) for v in cells.vertices]
        # in the incidence graph on the invariant cells, every cell meets exactly two others
        degree = Counter()
        for i, x in enumerate(nodes):
            for y in nodes[i + 1:]:
                if _incident(x, y):
                    degree[x] += 1
                    degree[y] += 1
        assert all(degree[x] == 2 for x in nodes)


def _incident(x, y):
    def cell(n):
        return {n[1]} if n[0] == "f" else set(n[1])
    if x[0] == y[0]:
        return False
    a, b = cell(x), cell(y)
    return a < b or b < a


@given(st.data())
def test_character_is_multiplicative(data):
    P = build_cube()
    group = automorphisms(P)
    a = data.draw(st.sampled_from(group))
    b = data.draw(st.sampled_from(group))
    assert orientation_character(P, a * b) == orientation_character(P, a) * orientation_character(P, b)


def test_parse_permutation_errors():
    assert parse_permutation("()", 3) == (1, 2, 3)
    assert parse_permutation("(1, 2)(3)", 3) == (2, 1, 3)
    for bad in ["1 2", "(1 1)", "(1 4)", "(1 2)(2 3)"]:
        with pytest.raises(ValueError):
            parse_permutation(bad, 3)


def test_named_rotations_on_dodecahedron():
    P = build_dodecahedron()
    assert classify(P, named_rotation(P, (1,))).kind == "face_rotation"
    assert classify(P, named_rotation(P, (1,))).order == 5
    assert classify(P, named_rotation(P, P.edges[0])).kind == "edge_rotation"
    assert classify(P, named_rotation(P, P.vertices[0])).kind == "vertex_rotation"
