from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_gkz.linalg import (ConeV, LinalgError, cone_contains, cone_facets,
                               cone_generators_from_facets, determinant, generates_full_lattice,
                               hermite_normal_form, integer_kernel_basis, matmul, matvec, rank,
                               rational_kernel, solve_rational)

from conftest import instance
from cayley_gkz.gkz import build_cayley_gkz

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(rows, cols):
    return st.lists(st.lists(small_ints, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


def test_hnf_identity():
    h, u = hermite_normal_form([[1, 0], [0, 1]])
    assert h == [[1, 0], [0, 1]] and u == [[1, 0], [0, 1]]


def test_hnf_small():
    m = [[2, 4], [0, 3]]
    h, u = hermite_normal_form(m)
    assert matmul(u, m) == h
    assert h[0][0] == 2 and h[1][0] == 0
    assert abs(determinant(u)) == 1


def test_hnf_of_p3_cayley_matrix_has_full_rank():
    g = build_cayley_gkz(instance("p3-8planes").npd)
    h, u = hermite_normal_form(g.A)
    assert sum(1 for row in h if any(row)) == 7
    assert matmul(u, g.A) == h


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: matrices(r, c))))
def test_hnf_certificate(m):
    h, u = hermite_normal_form(m)
    assert matmul(u, m) == h
    assert abs(determinant(u)) == 1
    # echelon: pivots move strictly right
    last = -1
    for row in h:
        nz = [k for k, x in enumerate(row) if x]
        if not nz:
            continue
        assert nz[0] > last and row[nz[0]] > 0
        last = nz[0]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
def test_determinant_matches_sympy(m):
    assert determinant(m) == sympy.Matrix(m).det()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n, n), matrices(n, n))))
def test_determinant_multiplicative(pair):
    a, b = pair
    assert determinant(matmul(a, b)) == determinant(a) * determinant(b)


def test_integer_kernel_examples():
    assert [tuple(abs(x) for x in v) for v in integer_kernel_basis([[1, 1]])] == [(1, 1)]
    (v,) = integer_kernel_basis([[1, 1, 1], [0, 1, -1]])
    assert v in ([-2, 1, 1], [2, -1, -1])
    g = build_cayley_gkz(instance("p3-8planes").npd)
    assert len(integer_kernel_basis(g.A)) == 9


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: matrices(r, c))))
def test_integer_kernel_is_a_lattice_basis(m):
    basis = integer_kernel_basis(m)
    cols = len(m[0])
    assert len(basis) == cols - rank(m)
    for v in basis:
        assert not any(matvec(m, v))
    # saturated: every integral kernel vector in a small box is an integer combination
    if basis:
        for w in product(range(-2, 3), repeat=cols):
            if any(w) and not any(matvec(m, w)):
                coeffs = solve_rational([list(c) for c in zip(*basis)], list(w))
                assert all(c.denominator == 1 for c in coeffs)


def test_generates_full_lattice_examples():
    assert generates_full_lattice([[1, 0], [0, 1]])
    assert not generates_full_lattice([[2]])
    g = build_cayley_gkz(instance("p3-8planes").npd)
    assert generates_full_lattice(g.A)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.integers(r, 5).flatmap(
    lambda c: matrices(r, c))))
def test_generates_full_lattice_agrees_with_smith_form(m):
    from sympy.matrices.normalforms import smith_normal_form
    snf = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    diag = [abs(snf[i, i]) for i in range(len(m))]
    assert generates_full_lattice(m) == all(d == 1 for d in diag)


def test_rational_kernel_and_solve():
    m = [[1, 2, 3], [0, 1, 1]]
    (v,) = rational_kernel(m)
    assert matvec(m, v) == [0, 0]
    assert solve_rational([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]
    with pytest.raises(LinalgError, match="inconsistent"):
        solve_rational([[1, 0], [1, 0]], [0, 1])


def test_cone_facets_examples():
    orth = cone_facets(ConeV([[1, 0], [0, 1]]))
    assert sorted(orth.normals) == [(0, 1), (1, 0)]
    assert cone_contains(orth, (1, 1)) and not cone_contains(orth, (-1, 0))
    ra = cone_facets([[1, 0], [1, 1], [1, -1]])
    assert sorted(ra.normals) == [(1, -1), (1, 1)]
    assert cone_contains(ra, (1, 1))
    with pytest.raises(LinalgError, match="empty cone"):
        cone_facets([[0, 0]])
    with pytest.raises(LinalgError, match="dimension mismatch"):
        cone_contains(orth, (1, 1, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4).flatmap(lambda d: st.lists(
    st.lists(small_ints, min_size=d, max_size=d), min_size=d, max_size=d + 4)))
def test_cone_duality_round_trip(gens):
    if rank(gens) < len(gens[0]):
        return
    h = cone_facets(gens)
    for g in gens:
        assert cone_contains(h, g)
    if not h.normals or rank(h.normals) < h.dim:
        return  # not pointed
    v = cone_generators_from_facets(h)
    again = cone_facets(v)
    assert again.normals == h.normals
    # every extreme ray is a positive multiple of some generator direction
    for r in v.generators:
        assert any(rank([r, g]) == 1 and sum(a * b for a, b in zip(r, g)) > 0 for g in gens)
