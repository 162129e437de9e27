"""The Cayley GKZ system of a nef-partition.

Columns of ``A`` are ``mu_{i,j} = (e_i, rho_{i,j})`` for ``i = 1..r`` and
``j = 0..m_i``, where ``rho_{i,0} = 0`` and ``rho_{i,1}, ..., rho_{i,m_i}``
are the rays of part ``i`` in fan order.  The exponent is
``beta = (-1/2, ..., -1/2, 0, ..., 0)``.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .fan import cone_coordinates
from .linalg import (cone_facets, dot, generates_full_lattice, matvec, rank, solve_rational,
                     transpose)
from .nef import NefPartitionData, smoothness_regime
from .polytope import LatticePolytope, normalized_volume, simplex_volume

HALF = Fraction(1, 2)


class GkzError(ValueError):
    pass


Label = Tuple[int, int]


@dataclass(frozen=True)
class GkzSystem:
    """Integer matrix ``A`` with ``(i, j)`` column labels and exponent ``beta``.

    Labels use ``i`` from 1 and ``j`` from 0, matching ``mu_{i,j}``.
    """
    r: int
    n: int
    A: Tuple[Tuple[int, ...], ...]
    beta: Tuple[Fraction, ...]
    labels: Tuple[Label, ...]

    def __post_init__(self):
        rows, cols = self.r + self.n, len(self.labels)
        if len(self.A) != rows or any(len(row) != cols for row in self.A):
            raise GkzError(f"A must be {rows}x{cols}")
        if len(self.beta) != rows:
            raise GkzError(f"beta must have length {rows}")
        for c, (i, j) in enumerate(self.labels):
            col = self.column(c)
            if list(col[:self.r]) != [int(k == i - 1) for k in range(self.r)]:
                raise GkzError(f"column {(i, j)} is not in block {i}")
            if j == 0 and any(col[self.r:]):
                raise GkzError(f"column {(i, 0)} must be e_{i} x 0")
        if not generates_full_lattice(self.A):
            raise GkzError("columns of A do not generate the lattice")
        ones = [1] * cols
        if rank(list(self.A) + [ones]) != rank(self.A):
            raise GkzError("A is not homogeneous (all-ones not in the row span)")

    @property
    def ncols(self) -> int:
        return len(self.labels)

    def column(self, c: int) -> Tuple[int, ...]:
        return tuple(row[c] for row in self.A)

    @property
    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(c) for c in range(self.ncols)]

    def index(self, label: Label) -> int:
        return self.labels.index(tuple(label))

    def with_beta(self, beta: Sequence) -> "GkzSystem":
        return GkzSystem(self.r, self.n, self.A, tuple(Fraction(b) for b in beta), self.labels)

    def to_json(self) -> dict:
        return {"A": [list(row) for row in self.A],
                "beta": [fraction_str(b) for b in self.beta],
                "column_labels": [list(l) for l in self.labels]}


def fraction_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def build_cayley_gkz(npd: NefPartitionData, beta: Optional[Sequence] = None) -> GkzSystem:
    """The GKZ data ``(A, beta)`` of a nef-partition."""
    regime = smoothness_regime(npd)
    if regime == "neither":
        raise GkzError("fan is not smooth and its rays do not generate the lattice, "
                       "so the columns of A cannot generate Z^(r+n)")
    r, n = npd.r, npd.n
    cols, labels = [], []
    for (i, j), k in npd.column_layout():
        rho = [0] * n if k is None else list(npd.fan.rays[k])
        cols.append([int(t == i - 1) for t in range(r)] + rho)
        labels.append((i, j))
    A = tuple(tuple(row) for row in transpose(cols))
    if beta is None:
        beta = [-HALF] * r + [0] * n
    return GkzSystem(r, n, A, tuple(Fraction(b) for b in beta), tuple(labels))


def column_permutation(g: GkzSystem, target: Sequence[Sequence[int]]) -> List[int]:
    """``perm`` with ``A[:, perm[c]] == target[:, c]`` for every column ``c``.

    Only permutations inside a block ``i`` are possible since the first ``r``
    rows fix the block.
    """
    tcols = [tuple(col) for col in transpose(target)]
    mine = {col: c for c, col in enumerate(g.columns)}
    if len(tcols) != g.ncols or set(tcols) != set(mine):
        raise GkzError("target matrix has a different column set")
    return [mine[col] for col in tcols]


# -- operators -----------------------------------------------------------------

@dataclass(frozen=True)
class EulerOperator:
    """``sum_c a_c x_c d_c - beta_i``."""
    index: int
    coefficients: Tuple[int, ...]
    constant: Fraction

    def __str__(self):
        terms = [f"{a:+d}*x{c}*d{c}" for c, a in enumerate(self.coefficients) if a]
        c = -self.constant
        if c:
            terms.append(("+" if c > 0 else "-") + fraction_str(abs(c)))
        return " ".join(terms)


@dataclass(frozen=True)
class BoxOperator:
    """``d^nu_plus - d^nu_minus`` with ``A nu_plus = A nu_minus``."""
    nu_plus: Tuple[int, ...]
    nu_minus: Tuple[int, ...]

    @property
    def order(self) -> int:
        return sum(self.nu_plus)


def euler_operators(g: GkzSystem) -> List[EulerOperator]:
    return [EulerOperator(k, tuple(row), g.beta[k]) for k, row in enumerate(g.A)]


def box_operators_up_to(g: GkzSystem, degmax: int) -> List[BoxOperator]:
    """Every binomial operator with disjoint supports and ``|nu_plus| <= degmax``.

    Homogeneity forces ``|nu_plus| = |nu_minus|``.  The lexicographically
    larger exponent vector is ``nu_plus``.
    """
    out = []
    for d in range(1, degmax + 1):
        groups: Dict[Tuple, List[Tuple[int, ...]]] = defaultdict(list)
        for combo in combinations_with_replacement(range(g.ncols), d):
            nu = [0] * g.ncols
            for c in combo:
                nu[c] += 1
            groups[tuple(matvec(g.A, nu))].append(tuple(nu))
        for vecs in groups.values():
            for a in range(len(vecs)):
                for b in range(a + 1, len(vecs)):
                    u, v = vecs[a], vecs[b]
                    if any(x and y for x, y in zip(u, v)):
                        continue
                    out.append(BoxOperator(max(u, v), min(u, v)))
    out.sort(key=lambda b: (b.order, b.nu_plus, b.nu_minus))
    return out


# -- facets and resonance ------------------------------------------------------

def facet_normals_RA(g: GkzSystem) -> List[Tuple[int, ...]]:
    """Primitive inner facet normals of the cone over the columns.

    Each normal must be ``(e_j, m)``; anything else means the input is
    not the Cayley matrix of a nef-partition.
    """
    normals = cone_facets(g.columns).normals
    for h in normals:
        head = list(h[:g.r])
        if sorted(head) != [0] * (g.r - 1) + [1]:
            raise GkzError(f"facet classification violated by normal {list(h)}")
    return list(normals)


@dataclass(frozen=True)
class ResonanceCertificate:
    non_resonant: bool
    pairings: Tuple[Tuple[Tuple[int, ...], Fraction], ...]

    def to_json(self) -> dict:
        return {"non_resonant": self.non_resonant,
                "facets": [list(h) for h, _ in self.pairings],
                "pairings": [fraction_str(p) for _, p in self.pairings]}


def non_resonance_check(g: GkzSystem, beta: Optional[Sequence] = None) -> ResonanceCertificate:
    """Pair ``beta`` with every primitive facet normal of ``R_+ A``.

    ``beta`` is resonant iff some pairing is an integer.  Since the columns
    generate ``Z^(r+n)``, a primitive normal ``h`` maps the lattice onto
    ``Z``, so ``beta`` lies in ``C F + Z^(r+n)`` for the facet ``F`` exactly
    when ``<h, beta>`` is an integer.  Faces of higher codimension lie in
    some facet, so facets suffice.
    """
    b = g.beta if beta is None else tuple(Fraction(x) for x in beta)
    pairs = tuple((h, dot(h, b)) for h in facet_normals_RA(g))
    return ResonanceCertificate(all(p.denominator != 1 for _, p in pairs), pairs)


# -- rank and the cone decomposition -------------------------------------------

def cayley_polytope(g: GkzSystem) -> LatticePolytope:
    """``Conv(A, 0)``."""
    return LatticePolytope(g.columns + [(0,) * (g.r + g.n)])


def holonomic_rank(g: GkzSystem, npd: Optional[NefPartitionData] = None) -> int:
    """Normalized volume of ``Conv(A, 0)``, checked against the maximal cone count."""
    vol = normalized_volume(cayley_polytope(g))
    if npd is not None and vol != len(npd.fan.max_cones):
        raise GkzError(f"union-cones violated: volume {vol} but "
                       f"{len(npd.fan.max_cones)} maximal cones")
    return vol


def hat_rays(npd: NefPartitionData, cone: Sequence[int]) -> List[Tuple[int, ...]]:
    """``(e_i, rho)`` for the rays of a cone, followed by ``e_1 x 0, ..., e_r x 0``."""
    out = []
    for k in cone:
        i = npd.part_of(k)
        out.append(tuple(int(t == i) for t in range(npd.r)) + npd.fan.rays[k])
    for i in range(npd.r):
        out.append(tuple(int(t == i) for t in range(npd.r)) + (0,) * npd.n)
    return out


@dataclass
class UnionConesReport:
    ok: bool
    volume: int
    simplex_volumes: List[int]
    failures: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "volume": self.volume, "simplex_volume_sum": sum(self.simplex_volumes),
                "failures": self.failures}


def verify_union_cones(g: GkzSystem, npd: NefPartitionData) -> UnionConesReport:
    """Check that the simplices ``Poly(sigma_hat)`` tile ``Conv(A, 0)``.

    ``Poly(sigma_hat)`` is the simplex on the origin, the lifted rays of
    ``sigma`` and ``e_1 x 0, ..., e_r x 0``.  Checks containment of every
    simplex, additivity of volume, that every ``sigma_hat`` lies in
    ``R_+ A`` and that every column of ``A`` lies in some ``sigma_hat``.
    """
    big = cayley_polytope(g)
    vol = normalized_volume(big)
    ra = cone_facets(g.columns)
    zero = (0,) * (g.r + g.n)
    failures, vols = [], []
    hats = [hat_rays(npd, c) for c in npd.fan.max_cones]
    for c, verts in zip(npd.fan.max_cones, hats):
        for v in verts:
            if not big.contains(v):
                failures.append(f"vertex {list(v)} of Poly(sigma_hat) for cone {list(c)} "
                                f"is outside Conv(A, 0)")
            if not ra.contains(v):
                failures.append(f"generator {list(v)} of sigma_hat for cone {list(c)} "
                                f"is outside R_+ A")
        vols.append(simplex_volume([zero] + verts))
    if sum(vols) != vol:
        failures.append(f"simplex volumes sum to {sum(vols)}, Conv(A, 0) has {vol}")
    for col, label in zip(g.columns, g.labels):
        if not any(_in_simplicial_cone(h, col) for h in hats):
            failures.append(f"column {list(label)} = {list(col)} lies in no sigma_hat")
    return UnionConesReport(not failures, vol, vols, failures)


def _in_simplicial_cone(gens, v) -> bool:
    try:
        lam = solve_rational(transpose(gens), v)
    except ValueError:
        return False
    return all(x >= 0 for x in lam)


def lift_to_cayley(npd: NefPartitionData, cone_index: int, u: Sequence) -> List[Fraction]:
    """``(-phi_1(u), ..., -phi_r(u), u)`` for ``u`` in a maximal cone.

    Also checks that it equals ``sum_k u_k rho_hat_k`` where ``u_k`` are the
    coordinates of ``u`` on the rays of the cone.
    """
    cone = npd.fan.max_cones[cone_index]
    coords = cone_coordinates(npd.fan, cone, u)
    if coords is None:
        raise GkzError(f"{list(u)} is not in cone {list(cone)}")
    lifted = [Fraction(-dot(cd.m[cone_index], u)) for cd in npd.cartier] + [Fraction(x) for x in u]
    hats = hat_rays(npd, cone)[:len(cone)]
    combo = [sum((x * h[t] for x, h in zip(coords, hats)), Fraction(0))
             for t in range(npd.r + npd.n)]
    if combo != lifted:
        raise GkzError("lifting identity failed: support functions are not linear on the cone")
    return lifted
