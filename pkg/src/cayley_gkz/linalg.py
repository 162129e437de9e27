"""Exact integer and rational linear algebra.

Everything here works on plain Python ``int`` / ``fractions.Fraction``
values stored in lists (rows of a matrix are lists).  No floating point is
used anywhere: lattice membership and resonance are yes/no questions.

Cones are handled in two forms:

* :class:`ConeV` -- generators, ``cone(g_1, ..., g_k)``;
* :class:`ConeH` -- inner normals ``h`` with ``<h, v> >= 0`` plus a list of
  equations ``<e, v> == 0`` (non-empty only for cones that are not
  full-dimensional).

Facet enumeration is a double description computation on the dual cone,
which is the dual form of Fourier--Motzkin elimination with the
combinatorial (Chernikov) redundancy test.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence, Tuple

Vector = List[int]
Matrix = List[List[int]]


class LinalgError(ValueError):
    pass


def as_int_matrix(rows) -> Matrix:
    m = [[int(x) for x in row] for row in rows]
    if not m or not m[0]:
        raise LinalgError("matrix dimensions must be positive")
    ncols = len(m[0])
    if any(len(row) != ncols for row in m):
        raise LinalgError("ragged matrix")
    return m


def transpose(m: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def vgcd(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries."""
    g = vgcd(v)
    if g == 0:
        return [0] * len(v)
    return [int(x) // g for x in v]


def integral_scaling(v: Sequence) -> Vector:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


# -- Hermite normal form -------------------------------------------------------

def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hermite_normal_form(m) -> Tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.  ``H`` is in
    row echelon form, its pivots are positive and the entries above each
    pivot are reduced into ``[0, pivot)``.  Zero rows are at the bottom.
    """
    h = [list(row) for row in as_int_matrix(m)]
    nrows, ncols = len(h), len(h[0])
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == nrows:
            break
        for i in range(pivot_row + 1, nrows):
            if h[i][col] == 0:
                continue
            a, b = h[pivot_row][col], h[i][col]
            g, s, t = _xgcd(a, b)
            # [[s, t], [-b/g, a/g]] has determinant 1
            p, q = -b // g, a // g
            h[pivot_row], h[i] = (
                [s * x + t * y for x, y in zip(h[pivot_row], h[i])],
                [p * x + q * y for x, y in zip(h[pivot_row], h[i])],
            )
            u[pivot_row], u[i] = (
                [s * x + t * y for x, y in zip(u[pivot_row], u[i])],
                [p * x + q * y for x, y in zip(u[pivot_row], u[i])],
            )
        piv = h[pivot_row][col]
        if piv == 0:
            continue
        if piv < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
            piv = -piv
        for i in range(pivot_row):
            q = h[i][col] // piv
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[pivot_row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[pivot_row])]
        pivot_row += 1
    return h, u


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise LinalgError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# -- rational elimination -------------------------------------------------------

def rref(m: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def solve_rational(a: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Solve ``a x = b`` over Q; raises if inconsistent or underdetermined."""
    ncols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    rows, piv = rref(aug)
    if ncols in piv:
        raise LinalgError("inconsistent linear system")
    if len(piv) < ncols:
        raise LinalgError("linear system has no unique solution")
    x = [Fraction(0)] * ncols
    for row, c in zip(rows, piv):
        x[c] = row[-1]
    return x


def rational_kernel(m: Sequence[Sequence]) -> List[List[Fraction]]:
    """Basis of the right kernel over Q (one vector per free column)."""
    ncols = len(m[0])
    rows, piv = rref(m)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(rows, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def integer_kernel_basis(m) -> List[Vector]:
    """Z-basis of ``{v in Z^cols : M v = 0}``.

    Uses the HNF of the transpose: the rows of ``U`` that map to zero rows of
    ``H = U M^T`` span the integer kernel.
    """
    mt = transpose(as_int_matrix(m))
    h, u = hermite_normal_form(mt)
    return [u[i] for i, row in enumerate(h) if not any(row)]


def generates_full_lattice(m) -> bool:
    """True iff the columns of ``m`` generate ``Z^rows`` as an abelian group."""
    mm = as_int_matrix(m)
    nrows = len(mm)
    h, _ = hermite_normal_form(transpose(mm))
    nonzero = [row for row in h if any(row)]
    if len(nonzero) != nrows:
        return False
    return all(nonzero[i][i] == 1 for i in range(nrows))


def independent_columns(m: Sequence[Sequence]) -> List[int]:
    """Indices of the pivot columns (a maximal independent set, greedy)."""
    return rref(m)[1]


# -- cones ---------------------------------------------------------------------

@dataclass(frozen=True)
class ConeV:
    generators: Tuple[Tuple[int, ...], ...]

    def __init__(self, generators):
        object.__setattr__(self, "generators",
                           tuple(tuple(int(x) for x in g) for g in generators))

    @property
    def dim(self) -> int:
        return len(self.generators[0]) if self.generators else 0


@dataclass(frozen=True)
class ConeH:
    """``{v : <h, v> >= 0 for h in normals, <e, v> == 0 for e in equations}``."""
    normals: Tuple[Tuple[int, ...], ...]
    equations: Tuple[Tuple[int, ...], ...]
    dim: int

    def contains(self, v) -> bool:
        return cone_contains(self, v)


def _extreme_rays(constraints: Sequence[Sequence[int]], d: int) -> List[Vector]:
    """Extreme rays of ``{x in R^d : <c, x> >= 0}`` by double description.

    The constraint matrix must have rank ``d`` (so the cone is pointed).
    """
    cons = [list(map(int, c)) for c in constraints]
    basis_idx = independent_columns(transpose(cons))
    if len(basis_idx) != d:
        raise LinalgError("constraint matrix is rank deficient; cone not pointed")
    # initial simplicial cone: columns of B^{-1}, scaled to integers
    b = [cons[i] for i in basis_idx]
    rays = []
    for k in range(d):
        e = [Fraction(int(i == k)) for i in range(d)]
        rays.append(integral_scaling(solve_rational(b, e)))
    processed = list(basis_idx)
    zero_sets = [frozenset(j for j in processed if dot(cons[j], r) == 0) for r in rays]
    for idx in range(len(cons)):
        if idx in basis_idx:
            continue
        c = cons[idx]
        vals = [dot(c, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays, new_zero = [], []
        for i in pos + zer:
            new_rays.append(rays[i])
            new_zero.append(zero_sets[i] | ({idx} if vals[i] == 0 else set()))
        for i in pos:
            for j in neg:
                common = zero_sets[i] & zero_sets[j]
                # combinatorial adjacency: no third ray is tight on `common`
                if any(k != i and k != j and common <= zero_sets[k]
                       for k in range(len(rays))):
                    continue
                r = primitive([vals[i] * y - vals[j] * x
                               for x, y in zip(rays[i], rays[j])])
                if not any(r):
                    continue
                new_rays.append(r)
                new_zero.append(common | {idx})
        rays, zero_sets = new_rays, new_zero
        processed.append(idx)
    out, seen = [], set()
    for r in rays:
        t = tuple(r)
        if t not in seen:
            seen.add(t)
            out.append(r)
    return out


def _span_reduction(gens: Sequence[Sequence[int]], d: int):
    """Coordinates on which the generators are faithfully represented.

    Returns (pivot coordinate indices, integer equations of the span).
    """
    coords = independent_columns(gens)
    eqs = [integral_scaling(v) for v in rational_kernel(gens)] if len(coords) < d else []
    return coords, eqs


def cone_facets(cone) -> ConeH:
    """Irredundant inner facet normals of a cone given by generators."""
    gens = cone.generators if isinstance(cone, ConeV) else tuple(map(tuple, cone))
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        raise LinalgError("empty cone")
    d = len(gens[0])
    coords, eqs = _span_reduction(gens, d)
    k = len(coords)
    reduced = [[g[c] for c in coords] for g in gens]
    normals = []
    for h in _extreme_rays(reduced, k):
        full = [0] * d
        for c, x in zip(coords, h):
            full[c] = x
        normals.append(tuple(full))
    normals.sort()
    return ConeH(tuple(normals), tuple(tuple(e) for e in eqs), d)


def cone_contains(cone: ConeH, v) -> bool:
    if len(v) != cone.dim:
        raise LinalgError(f"dimension mismatch: {len(v)} != {cone.dim}")
    return (all(dot(h, v) >= 0 for h in cone.normals)
            and all(dot(e, v) == 0 for e in cone.equations))


def cone_generators_from_facets(cone: ConeH) -> ConeV:
    """Extreme rays of a pointed full-dimensional H-cone."""
    if cone.equations:
        raise LinalgError("only full-dimensional cones are supported")
    return ConeV(sorted(tuple(r) for r in _extreme_rays(cone.normals, cone.dim)))


def extreme_rays(constraints: Sequence[Sequence[int]]) -> List[Vector]:
    """Extreme rays of ``{x : <c, x> >= 0 for c in constraints}`` (pointed)."""
    d = len(constraints[0])
    return sorted(_extreme_rays(constraints, d))
