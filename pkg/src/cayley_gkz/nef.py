"""Nef-partitions of reflexive polytopes and their duals."""

from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from .fan import (CartierData, Fan, FanError, ToricDivisor, cartier_data, divisor_polytope,
                  fan_predicates, mpcp_fan)
from .linalg import dot, generates_full_lattice, transpose
from .polytope import (LatticePolytope, dual_polytope, is_reflexive, lattice_points,
                       minkowski_sum)


class NefPartitionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class NefPartitionData:
    """A validated nef-partition ``J_1, ..., J_r`` of the rays of an MPCP fan.

    Attributes:
        fan: complete simplicial fan whose rays are the nonzero lattice points
            of ``Conv(nabla_1, ..., nabla_r)``.
        parts: ray indices of each part, in increasing order.
        divisors: ``E_i``, the sum of the ray divisors of part ``i``.
        cartier: Cartier data of each ``E_i``.
        delta_parts: divisor polytopes ``Delta_i`` of the ``E_i``.
        nabla_parts: ``Conv(J_i, 0)``.
    """
    fan: Fan
    parts: Tuple[Tuple[int, ...], ...]
    divisors: Tuple[ToricDivisor, ...]
    cartier: Tuple[CartierData, ...]
    delta_parts: Tuple[LatticePolytope, ...]
    nabla_parts: Tuple[LatticePolytope, ...]

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return self.fan.dim

    @property
    def part_sizes(self) -> Tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def part_rays(self, i: int) -> List[Tuple[int, ...]]:
        return [self.fan.rays[k] for k in self.parts[i]]

    def part_of(self, ray_index: int) -> int:
        for i, p in enumerate(self.parts):
            if ray_index in p:
                return i
        raise NefPartitionError(f"ray {ray_index} is in no part")

    @cached_property
    def delta(self) -> LatticePolytope:
        """``Delta = Delta_1 + ... + Delta_r``."""
        out = self.delta_parts[0]
        for q in self.delta_parts[1:]:
            out = minkowski_sum(out, q)
        return out

    @cached_property
    def delta_dual(self) -> LatticePolytope:
        """``Conv(nabla_1, ..., nabla_r)``."""
        return LatticePolytope([v for q in self.nabla_parts for v in q.vertices])

    @cached_property
    def nabla(self) -> LatticePolytope:
        """``nabla = nabla_1 + ... + nabla_r``."""
        out = self.nabla_parts[0]
        for q in self.nabla_parts[1:]:
            out = minkowski_sum(out, q)
        return out

    def column_layout(self) -> List[Tuple[Tuple[int, int], Optional[int]]]:
        """Labels ``(i, j)`` of the Cayley columns with the ray index of ``rho_{i,j}``.

        ``j = 0`` carries ``None`` (the zero vector); the rays of part ``i``
        follow in fan order.
        """
        out = []
        for i, p in enumerate(self.parts):
            out.append(((i + 1, 0), None))
            out.extend(((i + 1, j), k) for j, k in enumerate(p, start=1))
        return out

    def to_json(self) -> dict:
        return {"fan": self.fan.to_json(), "parts": [list(p) for p in self.parts]}


def validate_nef_partition(fan: Fan, parts: Sequence[Sequence[int]]) -> NefPartitionData:
    """Check that ``parts`` is a nef-partition of the rays of ``fan``.

    Verifies that the parts are disjoint and exhaustive, every ``E_i`` is
    Cartier and nef, the Minkowski sum of the divisor polytopes is reflexive,
    and the rays are exactly the nonzero lattice points of its dual.
    """
    parts = tuple(tuple(sorted(int(k) for k in p)) for p in parts)
    nrays = len(fan.rays)
    seen = {}
    for i, p in enumerate(parts):
        if not p:
            raise NefPartitionError(f"part {i + 1} is empty")
        for k in p:
            if not 0 <= k < nrays:
                raise NefPartitionError(f"ray index {k} out of range")
            if k in seen:
                raise NefPartitionError(f"ray {k} lies in parts {seen[k] + 1} and {i + 1}")
            seen[k] = i
    missing = [k for k in range(nrays) if k not in seen]
    if missing:
        raise NefPartitionError(f"partition not exhaustive: ray {missing[0]} "
                                f"{list(fan.rays[missing[0]])} is in no part")
    preds = fan_predicates(fan)
    if not (preds.complete and preds.simplicial):
        raise NefPartitionError("fan must be complete and simplicial")
    divisors, cartier, deltas = [], [], []
    for i, p in enumerate(parts):
        e = ToricDivisor.sum_of(fan, p)
        try:
            cd = cartier_data(fan, e)
        except FanError as exc:
            raise NefPartitionError(f"E_{i + 1} not Cartier ({exc})") from exc
        for k, m in enumerate(cd.m):
            for a, rho in zip(e.coefficients, fan.rays):
                if dot(m, rho) < -a:
                    raise NefPartitionError(
                        f"E_{i + 1} not nef: cone {list(fan.max_cones[k])} with m={list(m)} "
                        f"violates ray {list(rho)}")
        divisors.append(e)
        cartier.append(cd)
        deltas.append(divisor_polytope(fan, e))
    nablas = [LatticePolytope([[0] * fan.dim] + [fan.rays[k] for k in p]) for p in parts]
    npd = NefPartitionData(fan, parts, tuple(divisors), tuple(cartier), tuple(deltas),
                           tuple(nablas))
    delta = npd.delta
    if not is_reflexive(delta):
        raise NefPartitionError("Minkowski sum of the divisor polytopes is not reflexive")
    dual = dual_polytope(delta)
    if dual != npd.delta_dual:
        raise NefPartitionError("Conv(nabla_1, ..., nabla_r) differs from the dual polytope")
    points = {u for u in lattice_points(dual) if any(u)}
    if points != set(fan.rays):
        extra = sorted(points - set(fan.rays))
        raise NefPartitionError(f"fan rays are not the nonzero lattice points of the dual "
                                f"polytope (e.g. {list(extra[0]) if extra else 'extra ray'})")
    return npd


def from_nabla_parts(parts: Sequence[Sequence[Sequence[int]]],
                     max_cones: Optional[Sequence[Sequence[int]]] = None) -> NefPartitionData:
    """Nef-partition given by the nonzero lattice points of each ``nabla_i``.

    The fan is the canonical MPCP fan of the dual of ``Conv(nabla_1, ..., nabla_r)``
    (or the supplied maximal cones over its ray order).
    """
    pts = [tuple(map(int, u)) for p in parts for u in p]
    if not pts:
        raise NefPartitionError("no points given")
    n = len(pts[0])
    dual = LatticePolytope(pts + [(0,) * n])
    fan = mpcp_fan(dual_polytope(dual), max_cones)
    index = {r: k for k, r in enumerate(fan.rays)}
    idx_parts = []
    for i, p in enumerate(parts):
        try:
            idx_parts.append([index[tuple(map(int, u))] for u in p])
        except KeyError as exc:
            raise NefPartitionError(f"part {i + 1} contains a point that is not a ray") from exc
    return validate_nef_partition(fan, idx_parts)


def dual_nef_partition(npd: NefPartitionData,
                       max_cones: Optional[Sequence[Sequence[int]]] = None) -> NefPartitionData:
    """The dual nef-partition on the MPCP fan of ``nabla = nabla_1 + ... + nabla_r``.

    Part ``i`` of the result consists of the nonzero lattice points of
    ``Delta_i``; its divisor polytopes are the ``nabla_i``.
    """
    nabla = npd.nabla
    if not is_reflexive(nabla):
        raise NefPartitionError("nabla_1 + ... + nabla_r is not reflexive")
    fan = mpcp_fan(nabla, max_cones)
    index = {r: k for k, r in enumerate(fan.rays)}
    parts = []
    for i, q in enumerate(npd.delta_parts):
        pts = [u for u in lattice_points(q) if any(u)]
        missing = [u for u in pts if u not in index]
        if missing:
            raise NefPartitionError(f"lattice point {list(missing[0])} of Delta_{i + 1} "
                                    f"is not a ray of the dual fan")
        parts.append([index[u] for u in pts])
    return validate_nef_partition(fan, parts)


def check_lattice_cover(npd: NefPartitionData) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """Every lattice point of ``Conv(nabla_i)`` lies in some ``nabla_i``.

    Returns ``(True, None)`` or ``(False, uncovered_point)``.
    """
    covered = set()
    for q in npd.nabla_parts:
        covered.update(lattice_points(q))
    for u in lattice_points(npd.delta_dual):
        if u not in covered:
            return False, u
    return True, None


def minimal_face(p: LatticePolytope, u) -> List[Tuple]:
    """Vertices of the smallest face of ``p`` containing ``u``."""
    if not p.contains(u):
        raise NefPartitionError(f"{list(u)} is not in the polytope")
    tight = [(m, c) for m, c in p.facets if dot(m, u) == -c]
    return [v for v in p.vertices if all(dot(m, v) == -c for m, c in tight)]


def minimal_face_part(npd: NefPartitionData, nu: Sequence[int]) -> int:
    """Index of a part whose rays contain all vertices of the minimal face of ``nu``.

    ``nu`` is a nonzero lattice point of ``Conv(nabla_1, ..., nabla_r)``.
    Interior points have the whole polytope as minimal face and are rejected
    together with the origin.
    """
    nu = tuple(int(x) for x in nu)
    if not any(nu):
        raise NefPartitionError("the origin has no minimal proper face")
    face = minimal_face(npd.delta_dual, nu)
    rays = set(npd.fan.rays)
    for i in range(npd.r):
        owned = set(npd.part_rays(i))
        if all(tuple(v) in owned for v in face):
            return i
    if not all(tuple(v) in rays for v in face):
        raise NefPartitionError(f"{list(nu)} is not on the boundary")
    raise NefPartitionError(f"no part contains all vertices of the minimal face of {list(nu)}")


def smoothness_regime(npd: NefPartitionData, dual: Optional[NefPartitionData] = None) -> str:
    """Which hypothesis on the fans an instance satisfies.

    ``"smooth"`` when the fan (and the dual fan, if supplied) is smooth;
    ``"generating"`` when only the weaker condition holds that the rays
    generate the lattice ``Z^n``; ``"neither"`` otherwise.
    """
    smooth = fan_predicates(npd.fan).smooth
    if dual is not None:
        smooth = smooth and fan_predicates(dual.fan).smooth
    if smooth:
        return "smooth"
    if generates_full_lattice(transpose(npd.fan.rays)):
        return "generating"
    return "neither"
