import random

import pytest
from hypothesis import given, settings, strategies as st

from qhs_lab import gf2
from qhs_lab.colouring import (
    Colouring,
    ColouringError,
    all_colour_subsets,
    canonical_form,
    canonical_form_bruteforce,
    canonical_matrix,
    equivalent,
    extensions,
    find_equivalence,
    format_colouring,
    is_orientable,
    is_proper,
    parse_colouring,
    proper_by_independence,
    proper_by_odd_sums,
    subcomplex,
)
from qhs_lab.gf2 import BitMatrix
from qhs_lab.polytope import build_cube, build_dodecahedron, build_simplex3
from qhs_lab.symmetry import automorphisms

from oracles import brute_rank


def random_odd_colouring(P, k, rng):
    odd = gf2.orientable_vectors(k)
    while True:
        cols = tuple(rng.choice(odd) for _ in P.facets)
        if gf2.rank_of_rows(cols) == k:
            return Colouring(P, k, cols)


def random_proper_greedy(P, k, rng):
    """A proper odd colouring built facet by facet (rejection is too slow for k = 3)."""
    odd = gf2.orientable_vectors(k)
    while True:
        cols = {}
        for f in P.facets:
            banned = {cols[g] for g in P.neighbours[f] if g in cols}
            choices = [c for c in odd if c not in banned]
            if not choices:
                break
            cols[f] = rng.choice(choices)
        else:
            columns = tuple(cols[f] for f in P.facets)
            if gf2.rank_of_rows(columns) == k:
                return Colouring(P, k, columns)


def test_surjectivity_enforced():
    P = build_cube()
    with pytest.raises(ColouringError):
        Colouring(P, 3, (1, 1, 2, 2, 3, 3))
    with pytest.raises(ColouringError):
        Colouring(P, 3, (1, 2, 4, 8, 1, 2))
    with pytest.raises(ColouringError):
        Colouring(P, 3, (1, 2, 4))


def test_adjacent_equal_colours_improper():
    P = build_cube()
    lam = Colouring(P, 3, (1, 2, 1, 4, 2, 7))
    assert not is_proper(lam)


def test_garrison_scott_proper(garrison_scott):
    assert is_proper(garrison_scott)
    assert is_orientable(garrison_scott)


@pytest.mark.parametrize("seed", range(10))
def test_fast_and_general_properness_agree(seed):
    rng = random.Random(seed)
    P = build_dodecahedron()
    for _ in range(50):
        lam = random_odd_colouring(P, rng.choice([3, 4]), rng)
        assert proper_by_odd_sums(lam) == proper_by_independence(lam)


def test_odd_sum_path_needs_odd_colours():
    lam = Colouring(build_cube(), 3, (1, 2, 3, 4, 5, 6))
    with pytest.raises(ColouringError):
        proper_by_odd_sums(lam)


def test_orientability():
    P = build_cube()
    canonical = Colouring(P, 6, tuple(1 << i for i in range(6)))
    assert is_orientable(canonical)
    paired = Colouring(P, 3, (1, 1, 2, 2, 4, 4))
    eps = gf2.ones(6)
    assert is_orientable(paired) == (eps in brute_rank(paired.matrix.rows, 6)[1])
    even = Colouring(P, 3, (3, 3, 5, 5, 6, 1))
    assert is_orientable(even) == (eps in brute_rank(even.matrix.rows, 6)[1])


@given(st.lists(st.sampled_from([1, 2, 4, 7]), min_size=12, max_size=12))
def test_odd_colourings_orientable(cols):
    P = build_dodecahedron()
    if gf2.rank_of_rows(cols) < 3:
        return
    assert is_orientable(Colouring(P, 3, tuple(cols)))


def test_subcomplex_extremes(garrison_scott):
    P = garrison_scott.polytope
    full = subcomplex(garrison_scott, gf2.ones(P.m))
    assert (len(full.vertices), len(full.edges), len(full.triangles)) == (12, 30, 20)
    assert subcomplex(garrison_scott, 0).is_empty


def test_subcomplex_two_colour_subgraph(garrison_scott):
    lam = garrison_scott
    r1, r2, _ = lam.matrix.rows
    K = subcomplex(lam, r1 ^ r2)
    # colours with exactly one of the first two coordinates set: e1, e2
    inside = {f for f in lam.polytope.facets if lam(f) in (1, 2)}
    assert set(K.vertices) == inside
    assert set(K.edges) == {e for e in lam.polytope.edges if set(e) <= inside}
    assert K.triangles == ()


def test_extensions(garrison_scott):
    P = build_cube()
    lam = Colouring(P, 3, (1, 1, 2, 2, 4, 4))
    ext = extensions(lam)
    assert len(ext) == 2 ** 6 - 2 ** 3
    assert all(mu.k == 4 for mu in ext)
    gs_ext = extensions(garrison_scott)
    assert len(gs_ext) == 2 ** 12 - 2 ** 3
    eps = gf2.ones(12)
    for mu in gs_ext[::50]:
        assert is_proper(mu)
        assert is_orientable(mu)
        assert gf2.in_span(eps, mu.matrix)


@pytest.mark.parametrize("seed", range(8))
def test_properness_and_orientability_invariant(seed):
    rng = random.Random(seed)
    P = build_dodecahedron()
    lam = random_odd_colouring(P, 4, rng)
    group = automorphisms(P)
    gl = gf2.enumerate_gl(4)
    for _ in range(10):
        mu = lam.transform(rng.choice(gl), rng.choice(group))
        assert is_proper(mu) == is_proper(lam)
        assert is_orientable(mu) == is_orientable(lam)


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("k,group", [(3, "full_gl"), (3, "gl_or"), (4, "gl_or")])
def test_canonical_form_matches_brute_force_on_cube(seed, k, group):
    rng = random.Random(seed)
    lam = random_odd_colouring(build_cube(), k, rng)
    assert canonical_form(lam, group) == canonical_form_bruteforce(lam, group)


def test_canonical_form_matches_brute_force_on_dodecahedron(garrison_scott):
    for group in ("full_gl", "gl_or"):
        assert canonical_form(garrison_scott, group) == canonical_form_bruteforce(garrison_scott, group)


def test_canonical_form_brute_force_nonodd():
    P = build_simplex3()
    lam = Colouring(P, 3, (1, 2, 4, 3))
    assert canonical_form(lam) == canonical_form_bruteforce(lam)


@settings(max_examples=25)
@given(st.integers(0, 2**32))
def test_canonical_form_orbit_invariant(seed):
    rng = random.Random(seed)
    P = build_dodecahedron()
    lam = random_proper_greedy(P, 4, rng)
    s = rng.choice(automorphisms(P))
    A = rng.choice(gf2.enumerate_gl(4, orientable_only=True))
    mu = lam.transform(A, s)
    assert canonical_form(mu, "gl_or") == canonical_form(lam, "gl_or")
    B = rng.choice(gf2.enumerate_gl(4))
    assert canonical_form(lam.transform(B, s)) == canonical_form(lam)


@settings(max_examples=20)
@given(st.integers(0, 2**32))
def test_canonical_form_idempotent(seed):
    rng = random.Random(seed)
    P = build_dodecahedron()
    lam = random_proper_greedy(P, 4, rng)
    for group in ("full_gl", "gl_or"):
        form = canonical_form(lam, group)
        rep = Colouring.from_matrix(P, canonical_matrix(form))
        assert canonical_form(rep, group) == form
        assert equivalent(rep, lam, group)


def test_full_gl_and_gl_or_partitions_agree(dodecahedron_qhs4):
    classes = dodecahedron_qhs4.classes
    full = {canonical_form(rec.colouring, "full_gl") for rec in classes}
    assert len(full) == len(classes)
    # arbitrary GL images, odd or not, stay in the class
    rng = random.Random(0)
    gl = gf2.enumerate_gl(4)
    for rec in classes[:10]:
        mu = rec.colouring.transform(rng.choice(gl))
        assert canonical_form(mu, "full_gl") == canonical_form(rec.colouring, "full_gl")


def test_find_equivalence(garrison_scott):
    P = garrison_scott.polytope
    rng = random.Random(3)
    s = rng.choice(automorphisms(P))
    A = rng.choice(gf2.enumerate_gl(3))
    mu = garrison_scott.transform(A, s)
    B, t = find_equivalence(garrison_scott, mu)
    assert mu.transform(B, t).columns == garrison_scott.columns
    cube = build_cube()
    three = Colouring(cube, 3, (1, 1, 2, 2, 4, 4))
    four = Colouring(cube, 3, (1, 1, 2, 2, 4, 7))
    assert find_equivalence(three, four) is None
    assert not equivalent(three, four)


def test_colouring_file_round_trip(z7):
    text = format_colouring(z7, "lobell:7")
    again = parse_colouring("# comment\n" + text)
    assert again == z7
    with pytest.raises(ColouringError):
        parse_colouring("1010\n0101")
    with pytest.raises(ColouringError):
        parse_colouring("")


def test_colour_subsets(garrison_scott):
    subsets = list(all_colour_subsets(garrison_scott))
    assert len(subsets) == 4 + 6 + 4
    with pytest.raises(ColouringError):
        Colouring.from_matrix(build_cube(), BitMatrix((1, 2), 5))
