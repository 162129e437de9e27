"""Cohomology rings of smooth complete toric varieties and Mori cones.

The ring is ``Q[x_rho] / (SR + linear forms)``.  Elements are stored as
coordinate vectors over a monomial basis chosen degree by degree: within a
degree the surviving monomials are the lexicographically smallest
square-free ones.  The class of a point is the basis element of top degree,
so every maximal cone monomial has integral 1.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

from .fan import Fan, fan_predicates
from .linalg import cone_facets, integral_scaling, rank, rref, solve_rational
from .nef import NefPartitionData

Monomial = Tuple[int, ...]
Sparse = Dict[int, Fraction]


class CohomologyError(ValueError):
    pass


class CohomRing:
    """Graded cohomology ring of the toric variety of a smooth complete fan."""

    def __init__(self, fan: Fan):
        preds = fan_predicates(fan)
        if not (preds.complete and preds.smooth):
            raise CohomologyError("cohomology ring needs a smooth complete fan")
        self.fan = fan
        self.n = fan.dim
        self.nvars = len(fan.rays)
        faces = set()
        for c in fan.max_cones:
            for k in range(len(c) + 1):
                faces.update(combinations(c, k))
        self._faces = faces
        self.basis: List[Monomial] = []
        self.degrees: List[int] = []
        self._nf: Dict[Monomial, Sparse] = {}
        prev: List[Monomial] = []
        for d in range(self.n + 2):
            prev = self._build_degree(d, prev)
        if len(self.basis) != len(fan.max_cones):
            raise CohomologyError(f"ring dimension {len(self.basis)} differs from "
                                  f"{len(fan.max_cones)} maximal cones")
        if self.degrees.count(self.n) != 1:
            raise CohomologyError("top degree is not one-dimensional")
        self._table: Dict[Tuple[int, int], Sparse] = {}

    def _is_face(self, mono: Monomial) -> bool:
        return tuple(sorted(set(mono))) in self._faces

    def _build_degree(self, d: int, lower: List[Monomial]) -> List[Monomial]:
        monos = [m for m in combinations_with_replacement(range(self.nvars), d)
                 if self._is_face(m)]
        if not monos:
            return []
        square_free = [m for m in monos if len(set(m)) == len(m)]
        repeated = [m for m in monos if len(set(m)) != len(m)]
        order = repeated + sorted(square_free, reverse=True)
        col = {m: k for k, m in enumerate(order)}
        rows = []
        for mu in lower:
            for axis in range(self.n):
                row = [0] * len(order)
                for v, ray in enumerate(self.fan.rays):
                    if ray[axis]:
                        prod = tuple(sorted(mu + (v,)))
                        if prod in col:
                            row[col[prod]] += ray[axis]
                if any(row):
                    rows.append(row)
        if rows:
            red, piv = rref(rows)
        else:
            red, piv = [], []
        free = [k for k in range(len(order)) if k not in piv]
        # basis in increasing lexicographic order
        free.sort(key=lambda k: order[k])
        pos = {}
        for k in free:
            pos[k] = len(self.basis)
            self.basis.append(order[k])
            self.degrees.append(d)
        for k in free:
            self._nf[order[k]] = {pos[k]: Fraction(1)}
        for row, p in zip(red, piv):
            self._nf[order[p]] = {pos[f]: -row[f] for f in free if row[f]}
        return monos

    # -- elements

    @property
    def dim(self) -> int:
        return len(self.basis)

    def normal_form(self, mono: Sequence[int]) -> Sparse:
        mono = tuple(sorted(mono))
        if len(mono) > self.n or not self._is_face(mono):
            return {}
        return dict(self._nf[mono])

    def element(self, sparse: Sparse) -> "CohomClass":
        coords = [Fraction(0)] * self.dim
        for k, v in sparse.items():
            coords[k] += v
        return CohomClass(self, tuple(coords))

    def one(self) -> "CohomClass":
        return self.element(self.normal_form(()))

    def zero(self) -> "CohomClass":
        return self.element({})

    def monomial(self, mono: Sequence[int]) -> "CohomClass":
        return self.element(self.normal_form(mono))

    def basis_product(self, i: int, j: int) -> Sparse:
        key = (i, j) if i <= j else (j, i)
        if key not in self._table:
            self._table[key] = self.normal_form(self.basis[i] + self.basis[j])
        return self._table[key]

    @cached_property
    def top_index(self) -> int:
        return self.degrees.index(self.n)

    def basis_name(self, k: int) -> str:
        mono = self.basis[k]
        if not mono:
            return "1"
        return "*".join(f"D{v}" for v in mono)

    @cached_property
    def multiplication_matrices(self) -> List[List[List[Fraction]]]:
        """``M[k]`` is the matrix of multiplication by basis element ``k``."""
        out = []
        for k in range(self.dim):
            m = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for j in range(self.dim):
                for t, v in self.basis_product(k, j).items():
                    m[t][j] = v
            out.append(m)
        return out


@dataclass(frozen=True, eq=False)
class CohomClass:
    ring: CohomRing
    coords: Tuple[Fraction, ...]

    def __eq__(self, other):
        return isinstance(other, CohomClass) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        return CohomClass(self.ring, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return CohomClass(self.ring, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CohomClass(self.ring, tuple(-a for a in self.coords))

    def scale(self, c) -> "CohomClass":
        c = Fraction(c)
        return CohomClass(self.ring, tuple(c * a for a in self.coords))

    def __mul__(self, other):
        if not isinstance(other, CohomClass):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not any(self.coords)

    def integral(self) -> Fraction:
        """Coefficient of the point class."""
        return self.coords[self.ring.top_index]

    def sparse(self) -> Sparse:
        return {k: v for k, v in enumerate(self.coords) if v}


def build_ring(fan: Fan) -> CohomRing:
    return CohomRing(fan)


def multiply(a: CohomClass, b: CohomClass) -> CohomClass:
    ring = a.ring
    out = [Fraction(0)] * ring.dim
    for i, x in enumerate(a.coords):
        if not x:
            continue
        for j, y in enumerate(b.coords):
            if not y:
                continue
            for k, v in ring.basis_product(i, j).items():
                out[k] += x * y * v
    return CohomClass(ring, tuple(out))


def nilpotency_order(a: CohomClass) -> int:
    """Least ``k`` with ``a^k = 0``; raises for classes with a unit part."""
    if a.coords[0]:
        raise CohomologyError("class has a nonzero degree-0 part and is not nilpotent")
    p, k = a.ring.one(), 0
    while not p.is_zero():
        p = p * a
        k += 1
    return k


def divisor_class(ring: CohomRing, ray_index: int) -> CohomClass:
    return ring.monomial((ray_index,))


def part_zero_class(ring: CohomRing, npd: NefPartitionData, i: int) -> CohomClass:
    """``D_{i,0} = -sum_j D_{i,j}`` for part ``i`` (0-based)."""
    out = ring.zero()
    for k in npd.parts[i]:
        out = out - divisor_class(ring, k)
    return out


def column_classes(ring: CohomRing, npd: NefPartitionData) -> List[CohomClass]:
    """``D_{i,j}`` in Cayley column order, with ``D_{i,0}`` in the ``j = 0`` slots."""
    out = []
    for (i, j), k in npd.column_layout():
        out.append(part_zero_class(ring, npd, i - 1) if k is None else divisor_class(ring, k))
    return out


# -- Mori cone -------------------------------------------------------------------

def wall_relation(fan: Fan, a: int, b: int, wall) -> List[int]:
    """Primitive relation on the rays of two adjacent cones, positive off the wall."""
    support = sorted(set(fan.max_cones[a]) | set(fan.max_cones[b]))
    vecs = [fan.rays[k] for k in support]
    # one-dimensional kernel of the n x (n+1) matrix
    off = [k for k in support if k not in wall]
    if len(off) != 2 or len(support) != fan.dim + 1:
        raise CohomologyError(f"wall {sorted(wall)} is not simplicial")
    cols = [list(v) for v in vecs]
    mat = [[cols[c][t] for c in range(len(cols))] for t in range(fan.dim)]
    pin = support.index(off[0])
    rows = mat + [[int(c == pin) for c in range(len(cols))]]
    ints = integral_scaling(solve_rational(rows, [0] * fan.dim + [1]))
    if ints[support.index(off[1])] <= 0:
        raise CohomologyError("off-wall coefficients have opposite signs")
    out = [0] * len(fan.rays)
    for k, x in zip(support, ints):
        out[k] = x
    return out


def lift_curve(npd: NefPartitionData, b: Sequence[int]) -> Tuple[int, ...]:
    """Curve class on the rays to Cayley coordinates, ``l_{i,0} = -sum_j l_{i,j}``."""
    out = []
    for (i, j), k in npd.column_layout():
        if k is None:
            out.append(-sum(b[t] for t in npd.parts[i - 1]))
        else:
            out.append(b[k])
    return tuple(out)


def mori_generators(fan: Fan, npd: NefPartitionData) -> List[Tuple[int, ...]]:
    """Lifted wall relations, one per distinct curve class, sorted."""
    out = set()
    for wall, (a, b) in fan.walls.items():
        out.add(lift_curve(npd, wall_relation(fan, a, b, wall)))
    return sorted(out)


@dataclass(frozen=True)
class MoriCone:
    """Cone generated by the lifted wall curves inside ``ker A``."""
    generators: Tuple[Tuple[int, ...], ...]
    normals: Tuple[Tuple[int, ...], ...]
    equations: Tuple[Tuple[int, ...], ...]

    def contains(self, l) -> bool:
        return (all(sum(h * x for h, x in zip(n, l)) >= 0 for n in self.normals)
                and all(sum(e * x for e, x in zip(eq, l)) == 0 for eq in self.equations))

    @property
    def is_pointed(self) -> bool:
        return rank(self.normals) == rank(self.generators) if self.normals else False


def mori_cone(fan: Fan, npd: NefPartitionData) -> MoriCone:
    gens = mori_generators(fan, npd)
    h = cone_facets(gens)
    cone = MoriCone(tuple(gens), h.normals, h.equations)
    if not cone.is_pointed:
        raise CohomologyError("wall curves generate a cone containing a line (fan not projective)")
    # nef divisors pair nonnegatively with every curve
    for l in gens:
        zeros = [l[c] for c, ((i, j), k) in enumerate(npd.column_layout()) if k is None]
        if any(z > 0 for z in zeros):
            raise CohomologyError(f"curve {list(l)} pairs negatively with some E_i")
    return cone
