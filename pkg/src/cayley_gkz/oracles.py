"""Brute-force cross-checks that share no code path with the main pipeline.

* ``binomial_period`` expands ``prod_k s_k^(-1/2)`` with the binomial and
  multinomial theorems and keeps the constant term in ``t``; it knows
  nothing about kernels, Mori cones or cohomology.
* ``independent_volume`` triangulates by placing vertices in a random order.
* ``numeric_gamma_jet`` differentiates ``1/Gamma`` numerically with mpmath.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, List, Sequence, Tuple

import mpmath

from .constants import ConstElem
from .linalg import determinant
from .polytope import LatticePolytope
from .triangulation import placing_triangulation


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class LaurentSection:
    """``s_k = x_{k,0} + sum_j x_{k,j} t^(rho_{k,j})`` as a list of exponents.

    ``exponents[0]`` must be the zero vector; it carries ``x_{k,0}``.
    """
    part: int
    exponents: Tuple[Tuple[int, ...], ...]


def sections_from_nabla_parts(parts: Sequence[Sequence[Sequence[int]]]) -> List[LaurentSection]:
    out = []
    for k, pts in enumerate(parts):
        n = len(pts[0])
        out.append(LaurentSection(k + 1, ((0,) * n,) + tuple(tuple(map(int, u)) for u in pts)))
    return out


def _pochhammer_half(k: int) -> Fraction:
    out = Fraction(1)
    for s in range(k):
        out *= Fraction(1, 2) + s
    return out


def binomial_period(sections: Sequence[LaurentSection], degmax: int
                    ) -> Dict[Tuple[int, ...], Fraction]:
    """Constant term in ``t`` of ``prod_k s_k^(-1/2)``, up to total degree ``degmax``.

    Each factor is expanded around ``x_{k,0}``:
    ``s_k^(-1/2) = x_{k,0}^(-1/2) sum_m binom(-1/2, m) (S_k / x_{k,0})^m``.
    The result maps the exponent of ``x`` relative to ``prod_k x_{k,0}^(-1/2)``
    (columns ordered section by section, ``x_{k,0}`` first) to its rational
    coefficient; only nonzero coefficients are returned.
    """
    if degmax < 0:
        raise OracleError("degmax must be nonnegative")
    for s in sections:
        if not s.exponents or any(s.exponents[0]):
            raise OracleError(f"section {s.part} is missing the constant exponent")
    n = len(sections[0].exponents[0])
    # (x_{k,j>=1} exponent vector) for every section and every degree
    per_section = []
    for s in sections:
        terms = []
        m = len(s.exponents) - 1
        for mult in product(range(degmax + 1), repeat=m):
            k = sum(mult)
            if k > degmax:
                continue
            shift = tuple(sum(c * e[a] for c, e in zip(mult, s.exponents[1:])) for a in range(n))
            # binom(-1/2, k) * k! / prod mult! = (-1)^k (1/2)_k / prod mult!
            coeff = (-1) ** k * _pochhammer_half(k)
            for c in mult:
                coeff /= factorial(c)
            terms.append((k, shift, (-k,) + mult, coeff))
        per_section.append(terms)
    out: Dict[Tuple[int, ...], Fraction] = {}

    def walk(k, deg, shift, expo, coeff):
        if k == len(per_section):
            if not any(shift):
                out[expo] = out.get(expo, Fraction(0)) + coeff
            return
        for d, s, e, c in per_section[k]:
            if deg + d <= degmax:
                walk(k + 1, deg + d, tuple(a + b for a, b in zip(shift, s)), expo + e, coeff * c)

    walk(0, 0, (0,) * n, (), Fraction(1))
    return {e: c for e, c in out.items() if c}


def independent_volume(p, seed: int = 0) -> int:
    """Normalized volume from a placing triangulation in a seeded random order."""
    poly = p if isinstance(p, LatticePolytope) else LatticePolytope(p)
    if not poly.is_full_dimensional:
        raise OracleError("polytope is not full-dimensional")
    verts = [(1,) + tuple(int(x) for x in v) for v in poly.vertices]
    order = list(range(len(verts)))
    random.Random(seed).shuffle(order)
    simplices = placing_triangulation(verts, order=order, fine=False)
    return sum(abs(determinant([verts[i] for i in s])) for s in simplices)


def constant_values(dps: int = 50) -> Dict[str, object]:
    """mpmath values of the formal constants at ``dps`` digits."""
    with mpmath.workdps(dps):
        vals = {"gamma": +mpmath.euler, "log2": mpmath.log(2)}
        for k in range(2, 16):
            vals[f"zeta{k}"] = mpmath.zeta(k)
    return vals


def _jet_function(a: Fraction):
    if a.denominator == 1:
        return lambda t: mpmath.rgamma(a.numerator + t)
    base = mpmath.mpf(a.numerator) / a.denominator
    return lambda t: mpmath.gamma(mpmath.mpf(1) / 2) * mpmath.rgamma(base + t)


def numeric_gamma_jet(a, K: int, eps=Fraction(1, 10 ** 20), dps: int = 50) -> List:
    """Taylor coefficients of ``1/Gamma(a + t)`` (ratio form for half-integers) through ``t^K``.

    The derivatives are finite differences with step ``eps`` computed at
    ``dps`` digits, so ``eps`` must be small compared with the radius of
    convergence and large compared with ``10^-dps``.
    """
    a = Fraction(a)
    f = _jet_function(a)
    with mpmath.workdps(dps):
        h = mpmath.mpf(eps.numerator) / eps.denominator
        return [mpmath.diff(f, 0, k, h=h) / mpmath.factorial(k) for k in range(K + 1)]


def compare_gamma_jet(jet_coeffs: Sequence[ConstElem], a, eps=Fraction(1, 10 ** 20),
                      dps: int = 50, tol=mpmath.mpf("1e-30")):
    """Largest difference between an exact jet and the numeric one.

    Retries once at doubled precision (with a squared step) before failing.
    """
    K = len(jet_coeffs) - 1
    for attempt in range(2):
        with mpmath.workdps(dps):
            num = numeric_gamma_jet(a, K, eps, dps)
            vals = constant_values(dps)
            err = max(abs(x - c.evaluate(vals)) for c, x in zip(jet_coeffs, num))
            if err < tol:
                return err
        dps, eps = 2 * dps, eps * eps
    raise OracleError(f"numeric jet of 1/Gamma({a} + t) disagrees by {mpmath.nstr(err, 5)}")
