"""Lattice polytopes with exact vertex and facet descriptions."""

from fractions import Fraction
from functools import cached_property
from itertools import product
from math import ceil, factorial, floor, gcd
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .linalg import (ConeH, LinalgError, cone_facets, determinant, dot,
                     integral_scaling, rank)


class PolytopeError(ValueError):
    pass


def _clean(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _homogenize(point) -> Tuple[int, ...]:
    return tuple(integral_scaling([1] + list(point)))


class LatticePolytope:
    """Convex hull of finitely many points of ``Q^n`` (usually ``Z^n``).

    Redundant input points are dropped; ``vertices`` holds the extreme
    points in lexicographic order.  Facets are computed lazily as pairs
    ``(m, c)`` meaning ``<m, u> >= -c`` with ``m`` primitive.
    """

    def __init__(self, points: Sequence[Sequence]):
        pts = sorted({tuple(_clean(x) for x in p) for p in points})
        if not pts:
            raise PolytopeError("polytope needs at least one point")
        self.dim = len(pts[0])
        if any(len(p) != self.dim for p in pts):
            raise PolytopeError("points of different dimensions")
        self._points = pts
        self.vertices: Tuple[Tuple, ...] = tuple(self._extreme_points())

    # -- construction helpers

    @cached_property
    def _cone(self) -> ConeH:
        return cone_facets([_homogenize(p) for p in self._points])

    def _extreme_points(self):
        if len(self._points) == 1:
            return list(self._points)
        cone = self._cone
        d = self.dim + 1
        out = []
        for p in self._points:
            hp = _homogenize(p)
            tight = [h for h in cone.normals if dot(h, hp) == 0]
            if rank(tight + list(cone.equations)) == d - 1:
                out.append(p)
        return out

    # -- basic properties

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, vertices={list(map(list, self.vertices))})"

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    @property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    @cached_property
    def affine_dim(self) -> int:
        v0 = self.vertices[0]
        diffs = [[Fraction(a) - Fraction(b) for a, b in zip(v, v0)] for v in self.vertices[1:]]
        return rank(diffs) if diffs else 0

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def contains(self, u) -> bool:
        hu = [1] + [Fraction(x) for x in u]
        cone = self._cone
        return (all(dot(h, hu) >= 0 for h in cone.normals)
                and all(dot(e, hu) == 0 for e in cone.equations))

    def interior_contains(self, u) -> bool:
        if not self.is_full_dimensional:
            return False
        return all(dot(m, u) + c > 0 for m, c in self.facets)

    # -- facets

    @cached_property
    def facets(self) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
        return tuple(facet_description(self))

    @cached_property
    def facet_vertex_sets(self) -> Tuple[FrozenSet[int], ...]:
        """For each facet, the indices of the vertices lying on it."""
        return tuple(frozenset(i for i, v in enumerate(self.vertices) if dot(m, v) == -c)
                     for m, c in self.facets)

    # -- derived polytopes

    def translate(self, t) -> "LatticePolytope":
        return LatticePolytope([[a + b for a, b in zip(v, t)] for v in self.vertices])

    def __add__(self, other):
        return minkowski_sum(self, other)

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [[_json_number(x) for x in v] for v in self.vertices]}


def _json_number(x):
    return x if isinstance(x, int) else f"{x.numerator}/{x.denominator}"


def facet_description(p: LatticePolytope) -> List[Tuple[Tuple[int, ...], int]]:
    """Irredundant ``(normal, offset)`` pairs, ``<normal, u> >= -offset``."""
    if not p.is_full_dimensional:
        raise PolytopeError(f"polytope is not full-dimensional (affine hull has "
                            f"dimension {p.affine_dim} in ambient dimension {p.dim})")
    out = []
    for h in p._cone.normals:
        c, m = h[0], list(h[1:])
        g = 0
        for x in m:
            g = gcd(g, x)
        # an offset is always divisible by the gcd of the normal when some
        # vertex is integral; rational duals keep the rational offset
        out.append((tuple(x // g for x in m), Fraction(c, g)))
    out = [(m, _clean(c)) for m, c in out]
    out.sort()
    return out


def dual_polytope(p: LatticePolytope) -> LatticePolytope:
    """``{u : <m, u> >= -1 for all m in P}``; needs 0 in the interior of P."""
    if not p.interior_contains([0] * p.dim):
        raise PolytopeError("the origin is not an interior point")
    return LatticePolytope([[Fraction(x, 1) / c for x in m] for m, c in p.facets])


def is_reflexive(p: LatticePolytope) -> bool:
    if not p.is_lattice or not p.interior_contains([0] * p.dim):
        return False
    return all(c == 1 for _, c in p.facets)


def lattice_points(p: LatticePolytope) -> List[Tuple[int, ...]]:
    """All integral points of ``P`` in lexicographic order."""
    lo = [ceil(min(Fraction(v[k]) for v in p.vertices)) for k in range(p.dim)]
    hi = [floor(max(Fraction(v[k]) for v in p.vertices)) for k in range(p.dim)]
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return [u for u in product(*ranges) if p.contains(u)]


def minkowski_sum(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    if p.dim != q.dim:
        raise PolytopeError("Minkowski sum of polytopes in different dimensions")
    return LatticePolytope([[a + b for a, b in zip(u, v)]
                            for u in p.vertices for v in q.vertices])


def pulling_triangulation(points: Sequence[Sequence]) -> List[Tuple[int, ...]]:
    """Triangulate ``conv(points)`` by coning from the smallest vertex.

    Each face is triangulated recursively by coning its smallest vertex over
    the facets that avoid it.  Only vertices of the hull are used.  Returns
    simplices as tuples of indices into ``points``.
    """
    hom = [_homogenize(p) for p in points]
    memo: Dict[FrozenSet[int], List[Tuple[int, ...]]] = {}

    def facets_of(face: FrozenSet[int]) -> List[FrozenSet[int]]:
        idx = sorted(face)
        cone = cone_facets([hom[i] for i in idx])
        return [frozenset(i for i in idx if dot(h, hom[i]) == 0) for h in cone.normals]

    def extreme(face: FrozenSet[int]) -> FrozenSet[int]:
        idx = sorted(face)
        if len(idx) == 1:
            return face
        cone = cone_facets([hom[i] for i in idx])
        d = len(hom[0])
        out = set()
        for i in idx:
            tight = [h for h in cone.normals if dot(h, hom[i]) == 0]
            if rank(tight + list(cone.equations)) == d - 1:
                out.add(i)
        # duplicate points: keep the smallest index only
        seen, keep = set(), set()
        for i in sorted(out):
            if hom[i] not in seen:
                seen.add(hom[i])
                keep.add(i)
        return frozenset(keep)

    def tri(face: FrozenSet[int]) -> List[Tuple[int, ...]]:
        if face in memo:
            return memo[face]
        verts = extreme(face)
        dim = rank([hom[i] for i in verts]) - 1
        if dim == 0:
            res = [(min(verts),)]
        else:
            v0 = min(verts)
            res = []
            for f in facets_of(verts):
                if v0 in f:
                    continue
                for s in tri(f):
                    res.append((v0,) + s)
        memo[face] = res
        return res

    return tri(frozenset(range(len(points))))


def simplex_volume(vertices: Sequence[Sequence]) -> int:
    """Normalized volume ``|det|`` of a full-dimensional lattice simplex."""
    return abs(determinant([[1] + list(map(int, v)) for v in vertices]))


def normalized_volume(p: LatticePolytope) -> int:
    """``n!`` times the Euclidean volume, exact."""
    if not p.is_full_dimensional:
        raise PolytopeError(f"polytope is not full-dimensional (affine hull has "
                            f"dimension {p.affine_dim} in ambient dimension {p.dim})")
    if not p.is_lattice:
        raise PolytopeError("normalized volume is only defined here for lattice polytopes")
    verts = list(p.vertices)
    return sum(simplex_volume([verts[i] for i in s]) for s in pulling_triangulation(verts))


def euclidean_volume(p: LatticePolytope) -> Fraction:
    return Fraction(normalized_volume(p), factorial(p.dim))
