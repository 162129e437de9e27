"""Fans, toric divisors, Cartier data and MPCP triangulations."""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .linalg import (LinalgError, cone_facets, determinant, dot, extreme_rays, primitive,
                     rank, rref, solve_rational)
from .polytope import LatticePolytope, PolytopeError, dual_polytope, is_reflexive, lattice_points
from .triangulation import placing_triangulation


class FanError(ValueError):
    pass


class Fan:
    """Rays (primitive integer vectors) and maximal cones as ray-index sets."""

    def __init__(self, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]]):
        self.rays: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in r) for r in rays)
        if not self.rays:
            raise FanError("a fan needs at least one ray")
        self.dim = len(self.rays[0])
        for r in self.rays:
            if len(r) != self.dim:
                raise FanError("rays of different dimensions")
            if tuple(primitive(r)) != r:
                raise FanError(f"ray {list(r)} is not primitive")
        cones = {tuple(sorted(set(int(i) for i in c))) for c in max_cones}
        for c in cones:
            if not c or min(c) < 0 or max(c) >= len(self.rays):
                raise FanError(f"cone {list(c)} references a ray out of range")
        self.max_cones: Tuple[Tuple[int, ...], ...] = tuple(sorted(cones))

    def __repr__(self):
        return f"Fan(dim={self.dim}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return False
        return self.cone_sets() == other.cone_sets()

    def __hash__(self):
        return hash(frozenset(self.cone_sets()))

    def cone_sets(self) -> set:
        """Maximal cones as sets of ray vectors, independent of ray labels."""
        return {frozenset(self.rays[i] for i in c) for c in self.max_cones}

    def cone_rays(self, cone: Sequence[int]) -> List[Tuple[int, ...]]:
        return [self.rays[i] for i in cone]

    def ray_index(self, v) -> int:
        return self.rays.index(tuple(v))

    def cone_dim(self, cone: Sequence[int]) -> int:
        return rank(self.cone_rays(cone))

    @cached_property
    def walls(self) -> Dict[FrozenSet[int], List[int]]:
        """Codimension-one faces of maximal cones, mapped to the cones containing them."""
        out = defaultdict(list)
        for k, c in enumerate(self.max_cones):
            for f in cone_facet_sets(self.cone_rays(c), c):
                out[f].append(k)
        return dict(out)

    def to_json(self) -> dict:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays],
                "max_cones": [list(c) for c in self.max_cones]}

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        fan = cls(data["rays"], data["max_cones"])
        if "dim" in data and data["dim"] != fan.dim:
            raise FanError(f"declared dim {data['dim']} does not match rays of length {fan.dim}")
        return fan


def cone_facet_sets(rays: Sequence[Sequence[int]], labels: Sequence[int]) -> List[FrozenSet[int]]:
    """Facets of the cone on ``rays`` as sets of ``labels``."""
    if len(rays) == rank(rays):
        return [frozenset(labels[:k] + labels[k + 1:]) for k in range(len(labels))]
    h = cone_facets(rays)
    return [frozenset(l for l, r in zip(labels, rays) if dot(n, r) == 0) for n in h.normals]


@dataclass(frozen=True)
class FanPredicates:
    complete: bool
    simplicial: bool
    smooth: bool

    def as_dict(self) -> dict:
        return {"complete": self.complete, "simplicial": self.simplicial, "smooth": self.smooth}


def _strongly_convex(rays) -> bool:
    # a cone is pointed iff no nontrivial nonnegative combination of its rays vanishes;
    # equivalently the dual cone is full-dimensional
    try:
        h = cone_facets(rays)
    except LinalgError:
        return False
    k = rank(rays)
    if k == 1:
        return len({tuple(primitive(r)) for r in rays}) == 1
    return len(h.normals) >= k


def fan_predicates(fan: Fan) -> FanPredicates:
    n = fan.dim
    simplicial = all(len(c) == fan.cone_dim(c) for c in fan.max_cones)
    smooth = simplicial and all(
        len(c) == n and abs(determinant(fan.cone_rays(c))) == 1 for c in fan.max_cones)
    complete = _is_complete(fan)
    return FanPredicates(complete, simplicial, smooth)


def _is_complete(fan: Fan) -> bool:
    n = fan.dim
    if any(fan.cone_dim(c) != n for c in fan.max_cones):
        return False
    if not all(_strongly_convex(fan.cone_rays(c)) for c in fan.max_cones):
        return False
    if n == 0:
        return True
    walls = fan.walls
    if any(len(ks) != 2 for ks in walls.values()):
        return False
    # two cones meeting along a wall must lie on opposite sides of it
    for f, (a, b) in walls.items():
        span = [fan.rays[i] for i in sorted(f)]
        normal = _wall_normal(span, n)
        sa = _side(fan, fan.max_cones[a], f, normal)
        sb = _side(fan, fan.max_cones[b], f, normal)
        if sa * sb >= 0:
            return False
    adj = defaultdict(set)
    for a, b in walls.values():
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for b in adj[stack.pop()]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(fan.max_cones)


def _wall_normal(span, n) -> List[Fraction]:
    if not span:
        return [Fraction(1)]
    rows, piv = rref(span)
    free = [c for c in range(n) if c not in piv][0]
    v = [Fraction(0)] * n
    v[free] = Fraction(1)
    for row, p in zip(rows, piv):
        v[p] = -row[free]
    return v


def _side(fan, cone, wall, normal) -> int:
    for i in cone:
        if i not in wall:
            s = dot(normal, fan.rays[i])
            if s != 0:
                return 1 if s > 0 else -1
    return 0


# -- fans from polytopes -------------------------------------------------------

def normal_fan(p: LatticePolytope) -> Fan:
    """Inner normal fan: one ray per facet, one maximal cone per vertex."""
    facets = p.facets
    rays = [m for m, _ in facets]
    cones = []
    for v in p.vertices:
        cones.append([k for k, (m, c) in enumerate(facets) if dot(m, v) == -c])
    return Fan(rays, cones)


def face_fan(p: LatticePolytope) -> Fan:
    """Cones over the proper faces; needs the origin in the interior."""
    if not p.interior_contains([0] * p.dim):
        raise PolytopeError("face fan needs the origin in the interior")
    rays = [tuple(primitive(integral_vertex(v))) for v in p.vertices]
    cones = [sorted(s) for s in p.facet_vertex_sets]
    return Fan(rays, cones)


def integral_vertex(v) -> List[int]:
    den = lcm(*(Fraction(x).denominator for x in v))
    return [int(Fraction(x) * den) for x in v]


def mpcp_fan(delta: LatticePolytope, max_cones: Optional[Sequence[Sequence[int]]] = None) -> Fan:
    """Maximal projective crepant partial resolution fan of ``P_delta``.

    Rays are the nonzero lattice points of the dual polytope in lexicographic
    order.  Each facet of the dual is triangulated by a fine placing
    triangulation with its lattice points inserted lexicographically.  An
    explicit list of maximal cones (indices into that ray order) replaces the
    canonical triangulation.
    """
    if not is_reflexive(delta):
        raise PolytopeError("MPCP fans are only built for reflexive polytopes")
    dual = dual_polytope(delta)
    rays = [u for u in lattice_points(dual) if any(u)]
    if max_cones is not None:
        return Fan(rays, max_cones)
    cones = []
    for m, _ in dual.facets:
        on = [i for i, u in enumerate(rays) if dot(m, u) == -1]
        for s in placing_triangulation([rays[i] for i in on]):
            cones.append([on[k] for k in s])
    return Fan(rays, cones)


# -- divisors ------------------------------------------------------------------

@dataclass(frozen=True)
class ToricDivisor:
    """``sum_rho a_rho D_rho`` on a fixed fan."""
    fan: Fan
    coefficients: Tuple[int, ...]

    def __init__(self, fan: Fan, coefficients: Sequence[int]):
        coeffs = tuple(int(a) for a in coefficients)
        if len(coeffs) != len(fan.rays):
            raise FanError(f"divisor has {len(coeffs)} coefficients for {len(fan.rays)} rays")
        object.__setattr__(self, "fan", fan)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def sum_of(cls, fan: Fan, ray_indices) -> "ToricDivisor":
        idx = set(ray_indices)
        return cls(fan, [int(i in idx) for i in range(len(fan.rays))])

    def __add__(self, other: "ToricDivisor") -> "ToricDivisor":
        if self.fan is not other.fan and self.fan != other.fan:
            raise FanError("divisors live on different fans")
        return ToricDivisor(self.fan, [a + b for a, b in zip(self.coefficients, other.coefficients)])


def divisor_polytope(fan: Fan, d: ToricDivisor) -> LatticePolytope:
    """``{m : <m, rho> >= -a_rho for all rays rho}``."""
    n = fan.dim
    cons = [[a] + list(r) for a, r in zip(d.coefficients, fan.rays)]
    cons.append([1] + [0] * n)
    if rank(cons) < n + 1:
        raise PolytopeError("divisor polyhedron is not a polytope (rays do not span)")
    verts = []
    for ray in extreme_rays(cons):
        if ray[0] == 0:
            raise PolytopeError("divisor polyhedron is unbounded (fan is not complete)")
        verts.append([Fraction(x, ray[0]) for x in ray[1:]])
    return LatticePolytope(verts)


@dataclass(frozen=True)
class CartierData:
    """``m_sigma`` for every maximal cone, with ``<m_sigma, rho> = -a_rho`` on its rays."""
    divisor: ToricDivisor
    m: Tuple[Tuple[int, ...], ...]

    def support_function(self, u) -> Fraction:
        """``phi_D(u) = <m_sigma, u>`` for any maximal cone containing ``u``."""
        k = containing_cone(self.divisor.fan, u)
        return dot(self.m[k], u)


def containing_cone(fan: Fan, u) -> int:
    """Index of the first maximal cone containing ``u`` (simplicial fans)."""
    for k, c in enumerate(fan.max_cones):
        if cone_coordinates(fan, c, u) is not None:
            return k
    raise FanError(f"{list(u)} lies in no maximal cone")


def cone_coordinates(fan: Fan, cone: Sequence[int], u) -> Optional[List[Fraction]]:
    """Nonnegative coefficients of ``u`` on the rays of a full simplicial cone, else None."""
    rays = fan.cone_rays(cone)
    if len(rays) != fan.dim:
        raise FanError("cone coordinates need a full-dimensional simplicial cone")
    lam = solve_rational([list(col) for col in zip(*rays)], u)
    return lam if all(x >= 0 for x in lam) else None


def cartier_data(fan: Fan, d: ToricDivisor) -> CartierData:
    out = []
    for c in fan.max_cones:
        rays = fan.cone_rays(c)
        if len(rays) != fan.dim or rank(rays) != fan.dim:
            raise FanError(f"cartier data needs full simplicial cones; got {list(c)}")
        sol = solve_rational(rays, [-d.coefficients[i] for i in c])
        if any(x.denominator != 1 for x in sol):
            raise FanError(f"not Cartier at cone {list(c)}")
        out.append(tuple(int(x) for x in sol))
    return CartierData(d, tuple(out))


def is_nef(fan: Fan, d: ToricDivisor) -> bool:
    cd = cartier_data(fan, d)
    return all(dot(m, r) >= -a for m in cd.m for a, r in zip(d.coefficients, fan.rays))
