import random
from fractions import Fraction
from itertools import combinations_with_replacement, product
from types import SimpleNamespace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_gkz.gkz import (GkzError, GkzSystem, box_operators_up_to, build_cayley_gkz,
                            cayley_polytope, column_permutation, euler_operators,
                            facet_normals_RA, hat_rays, holonomic_rank, lift_to_cayley,
                            non_resonance_check, verify_union_cones)
from cayley_gkz.linalg import dot, matvec, rank, solve_rational, transpose
from cayley_gkz.polytope import simplex_volume

from conftest import CORPUS, instance

HALF = Fraction(1, 2)
ALL = sorted(CORPUS) + ["p1-elliptic", "p3-8planes"]

# the 7x16 matrix printed for the eight-planes example
P3_MATRIX = [
    [1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
    [0, 1, 0, 0, 0, -1, -1, -1, 0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 1, 0, 0, -1, -1, -1, 0, 0, 0, 1],
    [0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, -1, -1, -1],
]
P3_BETA = [-HALF] * 4 + [0] * 3


def gkz(name):
    return build_cayley_gkz(instance(name).npd)


def test_p1_matrix_and_beta():
    g = gkz("p1-elliptic")
    perm = column_permutation(g, [[1, 1, 1], [0, 1, -1]])
    assert [[row[c] for c in perm] for row in g.A] == [[1, 1, 1], [0, 1, -1]]
    assert g.beta == (-HALF, 0)
    assert g.labels == ((1, 0), (1, 1), (1, 2))


def test_p3_matrix_matches_the_printed_one():
    g = gkz("p3-8planes")
    assert (len(g.A), g.ncols) == (7, 16)
    perm = column_permutation(g, P3_MATRIX)
    assert perm == [0, 3, 2, 1, 4, 5, 7, 6, 8, 9, 11, 10, 12, 13, 15, 14]
    assert [[row[c] for c in perm] for row in g.A] == P3_MATRIX
    assert list(g.beta) == P3_BETA
    # blocks never mix
    assert all(g.labels[c][0] == g.labels[p][0] for c, p in enumerate(perm))


def test_column_permutation_rejects_other_matrices():
    g = gkz("p1-elliptic")
    with pytest.raises(GkzError, match="different column set"):
        column_permutation(g, [[1, 1, 1], [0, 1, 2]])


@pytest.mark.parametrize("name", ALL)
def test_system_invariants(name):
    g = gkz(name)
    for i in range(g.r):
        assert [g.A[i][c] for c in range(g.ncols)] == [int(l[0] == i + 1) for l in g.labels]
    for c, (i, j) in enumerate(g.labels):
        if j == 0:
            assert not any(g.column(c)[g.r:])
    # homogeneity: the all-ones vector is a rational combination of the rows
    coeffs = solve_rational(transpose(g.A), [1] * g.ncols)
    assert [sum(x * row[c] for x, row in zip(coeffs, g.A)) for c in range(g.ncols)] == \
        [1] * g.ncols


def test_invariant_violations_rejected():
    g = gkz("p1-elliptic")
    with pytest.raises(GkzError, match="block"):
        GkzSystem(1, 1, ((1, 0, 1), (0, -1, 1)), g.beta, g.labels)
    with pytest.raises(GkzError, match="e_1 x 0"):
        GkzSystem(1, 1, ((1, 1, 1), (1, -1, 1)), g.beta, g.labels)
    with pytest.raises(GkzError, match="generate the lattice"):
        GkzSystem(1, 1, ((1, 1, 1), (0, -2, 2)), g.beta, g.labels)
    with pytest.raises(GkzError, match="beta"):
        GkzSystem(1, 1, g.A, (HALF,), g.labels)


def test_euler_operators():
    ops = euler_operators(gkz("p1-elliptic"))
    assert [str(e) for e in ops] == ["+1*x0*d0 +1*x1*d1 +1*x2*d2 +1/2", "-1*x1*d1 +1*x2*d2"]
    p3 = euler_operators(gkz("p3-8planes"))
    assert len(p3) == 7
    assert [e.constant for e in p3] == P3_BETA
    assert all(str(e).endswith("+1/2") for e in p3[:4])


def test_box_operators_on_p1():
    g = gkz("p1-elliptic")
    assert box_operators_up_to(g, 1) == []
    (box,) = box_operators_up_to(g, 2)
    # d_{+1} d_{-1} - d_0^2 up to the sign convention
    assert {box.nu_plus, box.nu_minus} == {(2, 0, 0), (0, 1, 1)}
    assert box.nu_plus == max(box.nu_plus, box.nu_minus)


def brute_force_boxes(g, degmax):
    """Every kernel vector with |nu_+| <= degmax, by scanning pairs of monomials."""
    monos = [tuple(sum(1 for c in combo if c == k) for k in range(g.ncols))
             for d in range(1, degmax + 1)
             for combo in combinations_with_replacement(range(g.ncols), d)]
    found = set()
    for u in monos:
        for v in monos:
            if u < v and matvec(g.A, u) == matvec(g.A, v) \
                    and not any(a and b for a, b in zip(u, v)):
                found.add(tuple(a - b for a, b in zip(u, v)))
    return found


@pytest.mark.parametrize("name, degmax", [("p1-elliptic", 4), ("p1xp1-two-parts", 3),
                                          ("p3-8planes", 2)])
def test_box_operator_soundness_and_completeness(name, degmax):
    g = gkz(name)
    boxes = box_operators_up_to(g, degmax)
    for b in boxes:
        assert matvec(g.A, b.nu_plus) == matvec(g.A, b.nu_minus)
        assert not any(x and y for x, y in zip(b.nu_plus, b.nu_minus))
        assert b.nu_plus > b.nu_minus and b.order <= degmax
    diffs = [tuple(a - c for a, c in zip(b.nu_plus, b.nu_minus)) for b in boxes]
    assert len(diffs) == len(set(diffs))
    expected = brute_force_boxes(g, degmax)
    assert {d if d > tuple(-x for x in d) else tuple(-x for x in d) for d in diffs} == \
        {e if e > tuple(-x for x in e) else tuple(-x for x in e) for e in expected}


def test_p1_kernel_scan_agrees():
    g = gkz("p1-elliptic")
    box_diffs = {tuple(a - c for a, c in zip(b.nu_plus, b.nu_minus))
                 for b in box_operators_up_to(g, 4)}
    scan = {v for v in product(range(-4, 5), repeat=3)
            if any(v) and not any(matvec(g.A, v)) and v > tuple(-x for x in v)
            and sum(x for x in v if x > 0) <= 4}
    assert box_diffs == scan == {(2, -1, -1), (4, -2, -2)}


def test_facet_normals_examples():
    assert sorted(facet_normals_RA(gkz("p1-elliptic"))) == [(1, -1), (1, 1)]
    for h in facet_normals_RA(gkz("p3-8planes")):
        head = h[:4]
        assert sorted(head) == [0, 0, 0, 1]


@pytest.mark.parametrize("name", ALL)
def test_facet_normals_are_supporting(name):
    g = gkz(name)
    for h in facet_normals_RA(g):
        values = [dot(h, col) for col in g.columns]
        assert min(values) == 0
        tight = [col for col, v in zip(g.columns, values) if v == 0]
        assert rank(tight) == g.r + g.n - 1


def test_facet_classification_violation_detected():
    # a column outside the block structure gives the facet normal (2, 1);
    # GkzSystem refuses such input, so hand the check a bare stand-in
    stub = SimpleNamespace(r=1, columns=[(1, 0), (1, 1), (1, -1), (-1, 2)])
    with pytest.raises(GkzError, match="facet classification violated"):
        facet_normals_RA(stub)


@pytest.mark.parametrize("name", ALL)
def test_non_resonance_certificate(name):
    cert = non_resonance_check(gkz(name))
    assert cert.non_resonant
    assert all(p == -HALF for _, p in cert.pairings)


def test_p1_certificate_json():
    assert non_resonance_check(gkz("p1-elliptic")).to_json() == {
        "non_resonant": True, "facets": [[1, -1], [1, 1]], "pairings": ["-1/2", "-1/2"]}


@pytest.mark.parametrize("name", ["p1-elliptic", "p3-8planes"])
def test_zero_beta_is_resonant(name):
    g = gkz(name)
    cert = non_resonance_check(g.with_beta([0] * (g.r + g.n)))
    assert not cert.non_resonant
    assert all(p == 0 for _, p in cert.pairings)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=6), min_size=2,
                max_size=2))
def test_resonance_matches_integrality_of_pairings(beta):
    g = gkz("p1-elliptic")
    cert = non_resonance_check(g, beta)
    b0, b1 = beta
    integral = (b0 + b1).denominator == 1 or (b0 - b1).denominator == 1
    assert cert.non_resonant == (not integral)


@pytest.mark.parametrize("name, expected", [("p1-elliptic", 2), ("p3-8planes", 20),
                                            ("p2", 3), ("p1-two-parts", 2),
                                            ("p1xp1-two-parts", 4), ("surface-two-parts", 6)])
def test_rank_two_ways(name, expected):
    npd = instance(name).npd
    assert holonomic_rank(gkz(name), npd) == len(npd.fan.max_cones) == expected


def test_rank_mismatch_raises():
    npd = instance("p1-elliptic").npd
    g = gkz("p1xp1-two-parts")
    with pytest.raises(GkzError, match="union-cones violated"):
        holonomic_rank(g, npd)


@pytest.mark.parametrize("name", ALL)
def test_union_cones(name):
    npd = instance(name).npd
    g = gkz(name)
    report = verify_union_cones(g, npd)
    assert report.ok and report.failures == []
    assert report.simplex_volumes == [1] * len(npd.fan.max_cones)
    assert report.volume == len(npd.fan.max_cones)


def test_union_cones_fails_after_moving_a_ray():
    npd = instance("p1-elliptic").npd
    g = gkz("p1-elliptic")
    moved = GkzSystem(1, 1, ((1, 1, 1), (0, 1, -2)), g.beta, g.labels)
    report = verify_union_cones(moved, npd)
    assert not report.ok
    assert "simplex volumes sum to 2, Conv(A, 0) has 3" in report.failures
    assert any("[1, -2] lies in no sigma_hat" in f for f in report.failures)


def test_union_cones_fails_on_p3_mutation():
    npd = instance("p3-8planes").npd
    g = gkz("p3-8planes")
    cols = [list(c) for c in g.columns]
    c = g.index((1, 1))
    cols[c] = [a * (2 if k >= g.r else 1) for k, a in enumerate(cols[c])]
    moved = GkzSystem(g.r, g.n, tuple(map(tuple, transpose(cols))), g.beta, g.labels)
    report = verify_union_cones(moved, npd)
    assert not report.ok and report.failures


def test_hat_simplices_are_unimodular():
    npd = instance("p3-8planes").npd
    zero = (0,) * 7
    for cone in npd.fan.max_cones:
        hats = hat_rays(npd, cone)
        assert len(hats) == 7
        assert simplex_volume([zero] + hats) == 1


def test_lift_to_cayley_examples():
    npd = instance("p1-elliptic").npd
    plus = npd.fan.max_cones.index((npd.fan.ray_index((1,)),))
    assert lift_to_cayley(npd, plus, [2]) == [2, 2]
    assert lift_to_cayley(npd, plus, [0]) == [0, 0]
    with pytest.raises(GkzError, match="not in cone"):
        lift_to_cayley(npd, plus, [-1])


@pytest.mark.parametrize("name", ["p3-8planes", "surface-two-parts"])
def test_lift_of_a_ray_is_its_column(name):
    npd = instance(name).npd
    for k, cone in enumerate(npd.fan.max_cones):
        for ray in cone:
            i = npd.part_of(ray)
            expected = [int(t == i) for t in range(npd.r)] + list(npd.fan.rays[ray])
            assert lift_to_cayley(npd, k, npd.fan.rays[ray]) == expected


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_lift_is_linear_on_each_cone(seed):
    rng = random.Random(seed)
    npd = instance("p3-8planes").npd
    k = rng.randrange(len(npd.fan.max_cones))
    cone = npd.fan.max_cones[k]
    coeffs = [rng.randint(0, 4) for _ in cone]
    u = [sum(a * npd.fan.rays[ray][t] for a, ray in zip(coeffs, cone)) for t in range(3)]
    lifted = lift_to_cayley(npd, k, u)
    hats = hat_rays(npd, cone)[:len(cone)]
    assert lifted == [sum(a * h[t] for a, h in zip(coeffs, hats)) for t in range(7)]


def test_cayley_polytope_contains_origin_and_columns():
    g = gkz("p3-8planes")
    poly = cayley_polytope(g)
    assert poly.contains((0,) * 7)
    assert all(poly.contains(c) for c in g.columns)
