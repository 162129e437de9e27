"""Placing triangulations of homogeneous point configurations.

A configuration is a list of integer vectors lying in an affine hyperplane
that misses the origin (for instance ``(1, v)`` for points ``v``, or the
lattice points of a facet ``<m, u> = -1`` of a reflexive polytope).  Cones
over such points are in bijection with simplices of the configuration, so
every orientation test is a plain determinant.
"""

from collections import Counter
from fractions import Fraction
from typing import List, Sequence, Tuple

from .linalg import determinant, independent_columns, rank, solve_rational

Simplex = Tuple[int, ...]


class _Placer:

    def __init__(self, vectors: Sequence[Sequence[int]], fine: bool):
        self.v = [tuple(map(int, x)) for x in vectors]
        self.fine = fine
        self.simplices: List[Simplex] = []
        self.used: List[int] = []
        self.coords: List[int] = []

    def _det(self, idx: Sequence[int]) -> int:
        return determinant([[self.v[i][c] for c in self.coords] for i in idx])

    def _bary(self, simplex: Simplex, p: int) -> List[Fraction]:
        a = [[self.v[i][c] for i in simplex] for c in self.coords]
        return solve_rational(a, [self.v[p][c] for c in self.coords])

    def place(self, p: int) -> None:
        if self.v[p] in (self.v[i] for i in self.used):
            return
        span = [self.v[i] for i in self.used] + [self.v[p]]
        if not self.used or rank(span) > len(self.coords):
            self._pyramid(p, span)
            return
        containing = []
        for s in self.simplices:
            lam = self._bary(s, p)
            if all(x >= 0 for x in lam):
                containing.append((s, lam))
        if containing:
            if self.fine:
                self._stellar(p, containing)
            return
        self._beyond(p)

    def _pyramid(self, p: int, span) -> None:
        self.simplices = [tuple(sorted(s + (p,))) for s in self.simplices] or [(p,)]
        self.used.append(p)
        self.coords = independent_columns(span)

    def _stellar(self, p: int, containing) -> None:
        drop = {s for s, _ in containing}
        new = [s for s in self.simplices if s not in drop]
        for s, lam in containing:
            for k, x in enumerate(lam):
                if x > 0:
                    new.append(tuple(sorted(s[:k] + (p,) + s[k + 1:])))
        self.simplices = new
        self.used.append(p)

    def _beyond(self, p: int) -> None:
        faces = Counter()
        owner = {}
        for s in self.simplices:
            for k in range(len(s)):
                f = tuple(sorted(s[:k] + s[k + 1:]))
                faces[f] += 1
                owner[f] = s[k]
        added = []
        for f, cnt in faces.items():
            if cnt != 1:
                continue
            q = owner[f]
            if self._det(f + (p,)) * self._det(f + (q,)) < 0:
                added.append(tuple(sorted(f + (p,))))
        if added:
            self.simplices.extend(added)
            self.used.append(p)


def placing_triangulation(vectors: Sequence[Sequence[int]], order: Sequence[int] = None,
                          fine: bool = True) -> List[Simplex]:
    """Placing triangulation in the given insertion order.

    With ``fine=True`` points that fall inside the current triangulation are
    inserted by stellar subdivision, so every point of the configuration
    becomes a vertex.  Simplices are sorted index tuples, returned sorted.
    """
    placer = _Placer(vectors, fine)
    for p in (range(len(vectors)) if order is None else order):
        placer.place(p)
    return sorted(tuple(sorted(s)) for s in placer.simplices)
