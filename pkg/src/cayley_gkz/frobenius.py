"""Frobenius series solutions of the Cayley GKZ system.

The cohomology-valued series is

    B(x) = sum_l O_l x^(l + alpha) exp(sum_{i,j} lambda_{i,j} D_{i,j})

with ``alpha_{i,0} = -1/2``, ``alpha_{i,j} = 0`` and

    O_l = prod_i (-1)^{l_{i,0}} Gamma(1/2 - l_{i,0} - D_{i,0}) / Gamma(1/2)
          / prod_{i,j>=1} Gamma(1 + l_{i,j} + D_{i,j}).

Gamma factors are expanded as jets in nilpotent cohomology classes with
coefficients in :class:`ConstElem`.  The symbols ``lambda_{i,j}`` stand for
``log x_{i,j}``.  Coordinates of ``B`` along the monomial basis of the ring
are the scalar solutions.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .cohomology import (CohomClass, CohomRing, MoriCone, column_classes, mori_cone)
from .constants import ONE, ConstElem, ConstMonomial, _mono_mul, psi_at_base
from .gkz import BoxOperator, GkzSystem, box_operators_up_to, euler_operators, fraction_str
from .linalg import rref
from .nef import NefPartitionData

HALF = Fraction(1, 2)
Key = Tuple[int, ...]


class FrobeniusError(ValueError):
    pass


# -- truncated series in one variable t -----------------------------------------

def _zero_like(x):
    return ConstElem() if isinstance(x, ConstElem) else Fraction(0)


def series_mul(a: Sequence, b: Sequence, K: int) -> list:
    out = [_zero_like(a[0]) for _ in range(K)]
    for i, x in enumerate(a[:K]):
        for j, y in enumerate(b[:K - i]):
            out[i + j] = out[i + j] + x * y
    return out


def series_inverse(a: Sequence, K: int) -> list:
    """Inverse of a series whose constant term is a nonzero rational."""
    a0 = a[0].rational_part() if isinstance(a[0], ConstElem) else Fraction(a[0])
    if isinstance(a[0], ConstElem) and not a[0].is_rational():
        raise FrobeniusError("series inverse needs a rational constant term")
    if a0 == 0:
        raise FrobeniusError("series with zero constant term is not invertible")
    out = [a[0] * 0 + Fraction(1) / a0]
    for k in range(1, K):
        acc = _zero_like(a[0])
        for j in range(1, min(k, len(a) - 1) + 1):
            acc = acc + a[j] * out[k - j]
        out.append(acc * (-1 / a0))
    return out


def series_exp(a: Sequence, K: int) -> list:
    """``exp`` of a series with zero constant term."""
    out = [ConstElem.rational(1)] + [ConstElem() for _ in range(K - 1)]
    power = list(out)
    for k in range(1, K):
        power = series_mul(power, a, K)
        out = [x + y * Fraction(1, factorial(k)) for x, y in zip(out, power)]
    return out


def gamma_shift_series(a, m: int, K: int) -> List[Fraction]:
    """``Gamma(a + m + t) / Gamma(a + t)`` as a rational series in ``t``.

    For ``m >= 0`` this is the polynomial ``prod_{s<m} (a + s + t)``, which may
    have a zero constant term.  For ``m < 0`` it is the inverse of
    ``prod_{s=1..|m|} (a - s + t)`` and every factor must be a unit.
    """
    a = Fraction(a)
    poly = [Fraction(1)] + [Fraction(0)] * (K - 1)
    if m >= 0:
        for s in range(m):
            poly = series_mul(poly, [a + s, Fraction(1)], K)
        return poly
    for s in range(1, -m + 1):
        c = a - s
        if c == 0:
            raise FrobeniusError(f"Gamma({a} + t) / Gamma({a + m} + t) has a pole at t = 0")
        inv = [Fraction((-1) ** k) / c ** (k + 1) for k in range(K)]
        poly = series_mul(poly, inv, K)
    return poly


def _log_gamma_tail(base: Fraction, K: int, sign: int) -> List[ConstElem]:
    """``sign * sum_{k>=1} psi^(k-1)(base) t^k / k!``."""
    out = [ConstElem()]
    for k in range(1, K):
        out.append(psi_at_base(base, k - 1) * Fraction(sign, factorial(k)))
    return out


@dataclass(frozen=True)
class GammaJet:
    """Truncated series ``sum_k c_k t^k`` with constant-ring coefficients."""
    coeffs: Tuple[ConstElem, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def evaluate(self, N: CohomClass) -> "CohomConst":
        """Substitute a nilpotent class for ``t``."""
        ring = N.ring
        out = CohomConst(ring)
        power = ring.one()
        for c in self.coeffs:
            if power.is_zero():
                break
            out = out + CohomConst.from_class(power) * c
            power = power * N
        return out

    def numeric(self, values) -> list:
        return [c.evaluate(values) for c in self.coeffs]


def reciprocal_gamma_jet(a, K: int) -> GammaJet:
    """Jet of ``1/Gamma(a + t)`` for integer ``a``; ``Gamma(1/2)/Gamma(a + t)`` for half-integers.

    The argument is shifted to the base point 1 (or 1/2) with the functional
    equation, then ``1/Gamma(base + t) = exp(-sum psi^(k-1)(base) t^k / k!)``
    up to the constant ``1/Gamma(base)``, which is 1 in both normalizations.
    At nonpositive integers the polynomial shift factor contains ``t`` and
    the jet starts in positive degree.
    """
    a = Fraction(a)
    if (2 * a).denominator != 1:
        raise FrobeniusError(f"unsupported argument {a}")
    base = Fraction(1) if a.denominator == 1 else HALF
    shift = [ConstElem.rational(x) for x in gamma_shift_series(a, int(base - a), K)]
    tail = series_exp(_log_gamma_tail(base, K, -1), K)
    return GammaJet(tuple(series_mul(shift, tail, K)))


def gamma_ratio_jet(q: int, K: int) -> GammaJet:
    """Jet of ``Gamma(1/2 - q - t) / Gamma(1/2)`` in ``t``."""
    inv = series_inverse(list(reciprocal_gamma_jet(HALF - q, K).coeffs), K)
    return GammaJet(tuple(c * ((-1) ** k) for k, c in enumerate(inv)))


# -- cohomology with constant coefficients ----------------------------------------

def _ring_mul(ring: CohomRing, a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * ring.dim
    nb = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in nb:
            for k, v in ring.basis_product(i, j).items():
                out[k] += x * y * v
    return out


class CohomConst:
    """Element of ``H(X, Q) (x) Const``, stored as one rational class per constant monomial."""

    __slots__ = ("ring", "parts")

    def __init__(self, ring: CohomRing, parts: Dict[ConstMonomial, List[Fraction]] = None):
        self.ring = ring
        self.parts = {m: list(v) for m, v in (parts or {}).items() if any(v)}

    @classmethod
    def from_class(cls, c: CohomClass, mono: ConstMonomial = ONE) -> "CohomConst":
        return cls(c.ring, {mono: list(c.coords)})

    def __add__(self, other: "CohomConst") -> "CohomConst":
        out = {m: list(v) for m, v in self.parts.items()}
        for m, v in other.parts.items():
            if m in out:
                out[m] = [x + y for x, y in zip(out[m], v)]
            else:
                out[m] = list(v)
        return CohomConst(self.ring, out)

    def __neg__(self):
        return CohomConst(self.ring, {m: [-x for x in v] for m, v in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "CohomConst":
        ring = self.ring
        if isinstance(other, CohomClass):
            return CohomConst(ring, {m: _ring_mul(ring, v, other.coords)
                                     for m, v in self.parts.items()})
        if isinstance(other, ConstElem):
            out: Dict[ConstMonomial, List[Fraction]] = {}
            for m, v in self.parts.items():
                for m2, c in other.terms.items():
                    key = _mono_mul(m, m2)
                    acc = out.setdefault(key, [Fraction(0)] * ring.dim)
                    for k, x in enumerate(v):
                        if x:
                            acc[k] += c * x
            return CohomConst(ring, out)
        if isinstance(other, CohomConst):
            out = {}
            for m1, v1 in self.parts.items():
                for m2, v2 in other.parts.items():
                    key = _mono_mul(m1, m2)
                    prod = _ring_mul(ring, v1, v2)
                    if key in out:
                        out[key] = [x + y for x, y in zip(out[key], prod)]
                    else:
                        out[key] = prod
            return CohomConst(ring, out)
        c = Fraction(other)
        return CohomConst(ring, {m: [c * x for x in v] for m, v in self.parts.items()})

    __rmul__ = __mul__

    def coord(self, k: int) -> ConstElem:
        return ConstElem({m: v[k] for m, v in self.parts.items()})

    def coords(self) -> List[ConstElem]:
        return [self.coord(k) for k in range(self.ring.dim)]

    def is_zero(self) -> bool:
        return not self.parts

    def gamma_degree(self) -> int:
        return max((dict(m).get("gamma", 0) for m in self.parts), default=0)

    def __eq__(self, other):
        return isinstance(other, CohomConst) and self.parts == other.parts

    def exp(self) -> "CohomConst":
        """``exp`` of an element without degree-0 part."""
        if any(v[0] for v in self.parts.values()):
            raise FrobeniusError("exp needs a nilpotent argument")
        out = CohomConst.from_class(self.ring.one())
        power = out
        for k in range(1, self.ring.n + 1):
            power = power * self
            out = out + power * Fraction(1, factorial(k))
        return out


# -- coefficients O_l -------------------------------------------------------------

def support_degree(l: Sequence[int]) -> int:
    """``|l_+|_1``, the sum of the positive entries (equal to ``|l_-|_1`` on ``ker A``)."""
    return sum(x for x in l if x > 0)


class FrobeniusContext:
    """Ring, Cayley data and the classes ``D_{i,j}`` in column order.

    ``zero_part_override`` replaces the classes ``D_{i,0}``; it exists only to
    demonstrate what happens when ``D_{i,0} = -sum_j D_{i,j}`` is dropped.
    """

    def __init__(self, ring: CohomRing, npd: NefPartitionData, g: GkzSystem,
                 zero_part_override: Optional[Sequence[CohomClass]] = None):
        self.ring, self.npd, self.g = ring, npd, g
        self.K = ring.n + 1
        self.D = column_classes(ring, npd)
        self.zero_cols = [c for c, (i, j) in enumerate(g.labels) if j == 0]
        if zero_part_override is not None:
            for c, cls in zip(self.zero_cols, zero_part_override):
                self.D[c] = cls
        self.alpha = tuple(-HALF if j == 0 else Fraction(0) for i, j in g.labels)

    @cached_property
    def G(self) -> CohomConst:
        """``prod_i Gamma(1/2 - D_{i,0})/Gamma(1/2) / prod_{i,j} Gamma(1 + D_{i,j})``."""
        log = CohomConst(self.ring)
        for c, (i, j) in enumerate(self.g.labels):
            N = self.D[c]
            power = self.ring.one()
            for k in range(1, self.K):
                power = power * N
                if power.is_zero():
                    break
                if j == 0:
                    coeff = psi_at_base(HALF, k - 1) * Fraction((-1) ** k, factorial(k))
                else:
                    coeff = psi_at_base(Fraction(1), k - 1) * Fraction(-1, factorial(k))
                log = log + CohomConst.from_class(power) * coeff
        return log.exp()

    def rational_factor(self, l: Sequence[int]) -> CohomClass:
        """``O_l / G`` including the sign; a class with rational coefficients."""
        ring = self.ring
        out = ring.one()
        sign = 1
        for c, (i, j) in enumerate(self.g.labels):
            if j == 0:
                sign *= (-1) ** l[c]
                # Gamma(1/2 - q - N) / Gamma(1/2 - N), t = -N
                ser = gamma_shift_series(HALF, -l[c], self.K)
                N = -self.D[c]
            else:
                # Gamma(1 + N) / Gamma(1 + l + N)
                ser = gamma_shift_series(1 + l[c], -l[c], self.K)
                N = self.D[c]
            out = out * _eval_rational(ser, N)
            if out.is_zero():
                return out
        return out.scale(sign)


def _eval_rational(ser: Sequence[Fraction], N: CohomClass) -> CohomClass:
    ring = N.ring
    out = ring.zero()
    power = ring.one()
    for c in ser:
        if power.is_zero():
            break
        if c:
            out = out + power.scale(c)
        power = power * N
    return out


def coefficient_O(ctx: FrobeniusContext, l: Sequence[int], method: str = "factored") -> CohomConst:
    """``O_l`` as a class with constant coefficients.

    ``method="factored"`` writes ``O_l`` as a rational Pochhammer class times
    the ``l``-independent jet ``G``; ``method="direct"`` multiplies the jets of
    every Gamma factor separately.
    """
    l = tuple(int(x) for x in l)
    if method == "factored":
        rat = ctx.rational_factor(l)
        if rat.is_zero():
            return CohomConst(ctx.ring)
        return ctx.G * rat
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    out = CohomConst.from_class(ctx.ring.one())
    for c, (i, j) in enumerate(ctx.g.labels):
        if j == 0:
            jet = gamma_ratio_jet(l[c], ctx.K)
            out = out * jet.evaluate(ctx.D[c]) * ((-1) ** l[c])
        else:
            jet = reciprocal_gamma_jet(1 + l[c], ctx.K)
            out = out * jet.evaluate(ctx.D[c])
        if out.is_zero():
            break
    return out


# -- support ------------------------------------------------------------------------

def kernel_ball(g: GkzSystem, degmax: int) -> List[Key]:
    """All ``l`` in ``ker A`` with ``|l_+|_1 <= degmax``, including 0, sorted by degree."""
    out = {tuple([0] * g.ncols)}
    for b in box_operators_up_to(g, degmax):
        v = tuple(p - m for p, m in zip(b.nu_plus, b.nu_minus))
        out.add(v)
        out.add(tuple(-x for x in v))
    return sorted(out, key=lambda l: (support_degree(l), l))


def enumerate_support(npd: NefPartitionData, g: GkzSystem, degmax: int,
                      cone: Optional[MoriCone] = None) -> List[Key]:
    """Points of ``ker A`` in the Mori cone with ``|l_+|_1 <= degmax``."""
    if degmax < 0:
        raise FrobeniusError("degmax must be nonnegative")
    cone = cone or mori_cone(npd.fan, npd)
    return [l for l in kernel_ball(g, degmax) if cone.contains(l)]


# -- the series ---------------------------------------------------------------------

@dataclass
class CohomSeries:
    """Truncated ``B(x)``: coefficients ``O_l`` on the support, and the log factor."""
    ctx: FrobeniusContext
    degmax: int
    terms: Dict[Key, CohomConst]
    ball: List[Key]
    outside_support: Dict[Key, CohomConst] = field(default_factory=dict)

    @property
    def alpha(self) -> Tuple[Fraction, ...]:
        return self.ctx.alpha

    @cached_property
    def log_factor(self) -> Dict[Key, CohomClass]:
        """``exp(sum_c lambda_c D_c)`` as ``{exponent of lambda: class}``."""
        ring, D = self.ctx.ring, self.ctx.D
        ncols = len(D)
        partial: Dict[Key, Tuple[int, CohomClass]] = {(): (0, ring.one())}
        for c in range(ncols):
            nxt = {}
            for e, (deg, cls) in partial.items():
                term = cls
                for k in range(0, ring.n - deg + 1):
                    if k:
                        term = (term * D[c]).scale(Fraction(1, k))
                    if term.is_zero():
                        break
                    nxt[e + (k,)] = (deg + k, term)
            partial = nxt
        return {e: cls for e, (deg, cls) in partial.items()}

    def degree_zero_series(self) -> Dict[Key, ConstElem]:
        """The coordinate along ``1`` of ``sum_l O_l x^l`` (no log terms)."""
        return {l: O.coord(0) for l, O in self.terms.items() if not O.coord(0).is_zero()}


def assemble_B(ring: CohomRing, npd: NefPartitionData, g: GkzSystem, degmax: int,
               ctx: Optional[FrobeniusContext] = None, method: str = "factored") -> CohomSeries:
    """Compute ``O_l`` for every ``l`` of the kernel ball of radius ``degmax``.

    Terms on the Mori cone form the series; the others are kept in
    ``outside_support`` only when nonzero, which would contradict the
    vanishing of ``O_l`` off the Mori cone.
    """
    ctx = ctx or FrobeniusContext(ring, npd, g)
    cone = mori_cone(npd.fan, npd)
    ball = kernel_ball(g, degmax)
    terms, outside = {}, {}
    for l in ball:
        O = coefficient_O(ctx, l, method)
        if cone.contains(l):
            terms[l] = O
        elif not O.is_zero():
            outside[l] = O
    return CohomSeries(ctx, degmax, terms, ball, outside)


# -- scalar solutions ---------------------------------------------------------------

@dataclass
class ScalarSeries:
    """``sum x^(l + alpha) lambda^e c_{l,e}``, stored as ``{l: {e: c}}``."""
    basis_element: str
    alpha: Tuple[Fraction, ...]
    terms: Dict[Key, Dict[Key, ConstElem]]

    def log_degree(self) -> int:
        return max((sum(e) for poly in self.terms.values() for e in poly), default=0)

    def term_count(self) -> int:
        return sum(len(p) for p in self.terms.values())

    def coefficient(self, l: Sequence[int], e: Sequence[int]) -> ConstElem:
        return self.terms.get(tuple(l), {}).get(tuple(e), ConstElem())

    def to_json(self) -> dict:
        out = []
        for l in sorted(self.terms, key=lambda l: (support_degree(l), l)):
            for e in sorted(self.terms[l], key=lambda e: (sum(e), e)):
                c = self.terms[l][e]
                entry = {"l": list(l), "log_exponents": list(e)}
                entry.update(c.to_json())
                out.append(entry)
        return {"basis_element": self.basis_element, "terms": out}


@dataclass
class SolutionBasis:
    alpha: Tuple[Fraction, ...]
    labels: Tuple[Tuple[int, int], ...]
    solutions: List[ScalarSeries]
    degmax: int

    def __len__(self):
        return len(self.solutions)

    def to_json(self) -> dict:
        return {"alpha": [fraction_str(a) for a in self.alpha],
                "column_labels": [list(l) for l in self.labels],
                "order": self.degmax,
                "solutions": [s.to_json() for s in self.solutions]}


def extract_solutions(B: CohomSeries) -> SolutionBasis:
    """Coordinates of ``B`` along the monomial basis of the ring."""
    ring = B.ctx.ring
    logf = B.log_factor
    sols = [dict() for _ in range(ring.dim)]
    for l, O in B.terms.items():
        if O.is_zero():
            continue
        for e, X in logf.items():
            prod = O * X
            for b in range(ring.dim):
                c = prod.coord(b)
                if not c.is_zero():
                    sols[b].setdefault(l, {})[e] = c
    series = [ScalarSeries(ring.basis_name(b), B.alpha, sols[b]) for b in range(ring.dim)]
    return SolutionBasis(B.alpha, B.ctx.g.labels, series, B.degmax)


# -- verification -------------------------------------------------------------------

@dataclass
class Residual:
    solution: str
    operator: str
    monomial: Key
    log_exponents: Key
    value: ConstElem

    def __str__(self):
        return (f"{self.operator} on {self.solution}: x^{list(self.monomial)}+alpha "
                f"lambda^{list(self.log_exponents)} -> {self.value}")


@dataclass
class AnnihilationReport:
    ok: bool
    euler_checked: int
    box_checked: int
    box_operators: int
    residuals: List[Residual] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "euler_terms_checked": self.euler_checked,
                "box_windows_checked": self.box_checked, "box_operators": self.box_operators,
                "residuals": [str(r) for r in self.residuals[:20]], "warnings": self.warnings}


def _apply_theta_poly(poly: Dict[Key, ConstElem], shifts: Sequence[Tuple[int, Fraction]]
                      ) -> Dict[Key, ConstElem]:
    """Apply ``prod (c + d/dlambda_col)`` over ``shifts = [(col, c), ...]``."""
    for col, c in shifts:
        out: Dict[Key, ConstElem] = {}
        for e, v in poly.items():
            if c:
                out[e] = out.get(e, ConstElem()) + v * c
            if e[col]:
                e2 = e[:col] + (e[col] - 1,) + e[col + 1:]
                out[e2] = out.get(e2, ConstElem()) + v * e[col]
        poly = {e: v for e, v in out.items() if not v.is_zero()}
    return poly


def _box_side(poly, exponent: Sequence[Fraction], nu: Sequence[int]):
    shifts = []
    for col, k in enumerate(nu):
        for t in range(k):
            shifts.append((col, exponent[col] - t))
    return _apply_theta_poly(poly, shifts)


def verify_annihilation(sols: SolutionBasis, g: GkzSystem, degmax: int,
                        ball: Optional[Sequence[Key]] = None,
                        box_ops: Optional[Sequence[BoxOperator]] = None) -> AnnihilationReport:
    """Apply the Euler and box operators to every scalar solution.

    Euler operators must vanish on every term.  A box operator
    ``d^nu+ - d^nu-`` sends the terms at ``kappa + nu+`` and ``kappa + nu-`` to
    the monomial ``x^(kappa + alpha)``; the residual there is checked when
    both ``kappa + nu+`` and ``kappa + nu-`` lie in the computed kernel ball,
    where absent terms are known to be zero.
    """
    ball = set(ball) if ball is not None else set(kernel_ball(g, degmax))
    box_ops = list(box_ops) if box_ops is not None else box_operators_up_to(g, degmax)
    report = AnnihilationReport(True, 0, 0, len(box_ops))
    if not box_ops:
        report.warnings.append("no box operators up to this order; box check is vacuous")
    euler = euler_operators(g)
    for sol in sols.solutions:
        for l, poly in sol.terms.items():
            expo = [Fraction(x) + a for x, a in zip(l, sols.alpha)]
            for op in euler:
                acc: Dict[Key, ConstElem] = {}
                mult = sum(a * x for a, x in zip(op.coefficients, expo)) - op.constant
                for e, v in poly.items():
                    if mult:
                        acc[e] = acc.get(e, ConstElem()) + v * mult
                    for col, k in enumerate(e):
                        if k and op.coefficients[col]:
                            e2 = e[:col] + (k - 1,) + e[col + 1:]
                            acc[e2] = acc.get(e2, ConstElem()) + v * (op.coefficients[col] * k)
                report.euler_checked += 1
                for e, v in acc.items():
                    if not v.is_zero():
                        report.residuals.append(Residual(sol.basis_element, f"euler[{op.index}]",
                                                         l, e, v))
        for op in box_ops:
            plus, minus = op.nu_plus, op.nu_minus
            kappas = set()
            for l in ball:
                kappas.add(tuple(x - y for x, y in zip(l, plus)))
                kappas.add(tuple(x - y for x, y in zip(l, minus)))
            for kappa in kappas:
                lp = tuple(x + y for x, y in zip(kappa, plus))
                lm = tuple(x + y for x, y in zip(kappa, minus))
                if lp not in ball or lm not in ball:
                    continue
                ep = [Fraction(x) + a for x, a in zip(lp, sols.alpha)]
                em = [Fraction(x) + a for x, a in zip(lm, sols.alpha)]
                left = _box_side(sol.terms.get(lp, {}), ep, plus)
                right = _box_side(sol.terms.get(lm, {}), em, minus)
                report.box_checked += 1
                for e in set(left) | set(right):
                    v = left.get(e, ConstElem()) - right.get(e, ConstElem())
                    if not v.is_zero():
                        report.residuals.append(Residual(
                            sol.basis_element, f"box{list(plus)}-{list(minus)}", kappa, e, v))
    report.ok = not report.residuals
    return report


def verify_annihilation_ring(B: CohomSeries, degmax: Optional[int] = None) -> AnnihilationReport:
    """The same checks on the cohomology-valued coefficients.

    On ``x^(l + alpha) O_l exp(lambda . D)`` the operator ``theta_c`` acts as
    multiplication of ``O_l`` by ``l_c + alpha_c + D_c``; since ``exp(lambda . D)``
    is invertible this is equivalent to the scalar check.
    """
    ctx, g = B.ctx, B.ctx.g
    degmax = B.degmax if degmax is None else degmax
    ring = ctx.ring
    ball = set(B.ball)
    box_ops = box_operators_up_to(g, degmax)
    report = AnnihilationReport(True, 0, 0, len(box_ops))

    def theta_product(O: CohomConst, expo, nu) -> CohomConst:
        for col, k in enumerate(nu):
            for t in range(k):
                factor = ctx.D[col] + ring.one().scale(expo[col] - t)
                O = O * factor
        return O

    for op in euler_operators(g):
        for l, O in B.terms.items():
            expo = [Fraction(x) + a for x, a in zip(l, ctx.alpha)]
            factor = ring.one().scale(sum(a * x for a, x in zip(op.coefficients, expo))
                                      - op.constant)
            for col, a in enumerate(op.coefficients):
                if a:
                    factor = factor + ctx.D[col].scale(a)
            report.euler_checked += 1
            res = O * factor
            if not res.is_zero():
                report.residuals.append(Residual("B", f"euler[{op.index}]", l, (), res.coord(0)))
    for op in box_ops:
        for l in ball:
            for nu in (op.nu_plus, op.nu_minus):
                kappa = tuple(x - y for x, y in zip(l, nu))
                lp = tuple(x + y for x, y in zip(kappa, op.nu_plus))
                lm = tuple(x + y for x, y in zip(kappa, op.nu_minus))
                if lp not in ball or lm not in ball or nu is op.nu_minus and lp == l:
                    continue
                zero = CohomConst(ring)
                ep = [Fraction(x) + a for x, a in zip(lp, ctx.alpha)]
                em = [Fraction(x) + a for x, a in zip(lm, ctx.alpha)]
                left = theta_product(B.terms.get(lp, zero), ep, op.nu_plus)
                right = theta_product(B.terms.get(lm, zero), em, op.nu_minus)
                report.box_checked += 1
                diff = left - right
                if not diff.is_zero():
                    first = next(c for c in diff.coords() if not c.is_zero())
                    report.residuals.append(Residual("B", f"box{list(op.nu_plus)}", kappa, (),
                                                     first))
    report.ok = not report.residuals
    return report


# -- independence ---------------------------------------------------------------------

def leading_signatures(sols: SolutionBasis) -> List[Tuple[Tuple[Fraction, ...], Key, int]]:
    """Distinct pivot signatures ``(exponent, log exponents, log degree)``.

    The ``l = 0`` parts ``x^alpha P_b(lambda)`` of the solutions are put in
    row echelon form with log monomials ordered by decreasing log degree;
    each pivot names the leading ``(exponent, log-degree)`` term of one
    solution of an equivalent basis.  The number of signatures is the rank
    of the initial parts, so it equals the number of solutions exactly when
    they are linearly independent.
    """
    zero = tuple([0] * len(sols.alpha))
    rows = []
    for sol in sols.solutions:
        poly = sol.terms.get(zero, {})
        row = {}
        for e, c in poly.items():
            for m, v in c.terms.items():
                row[(e, m)] = v
        rows.append(row)
    keys = sorted({k for row in rows for k in row}, key=lambda k: (-sum(k[0]), k[0], k[1]))
    dense = [[row.get(k, Fraction(0)) for k in keys] for row in rows]
    _, piv = rref(dense) if dense and keys else ([], [])
    alpha_exp = tuple(sols.alpha)
    return [(alpha_exp, keys[p][0], sum(keys[p][0])) for p in piv]


# -- numeric evaluation -----------------------------------------------------------------

def evaluate_solution(sol: ScalarSeries, x: Sequence, dps: int = 30):
    """Value of the truncated series at positive real ``x`` with ``lambda = log x``.

    For display only; correctness checks never use it.
    """
    import mpmath

    with mpmath.workdps(dps):
        from .oracles import constant_values
        vals = constant_values(dps)
        xs = [mpmath.mpf(Fraction(v).numerator) / Fraction(v).denominator for v in x]
        if any(v <= 0 for v in xs):
            raise FrobeniusError("evaluation needs positive real coordinates")
        logs = [mpmath.log(v) for v in xs]
        total = mpmath.mpf(0)
        for l, poly in sol.terms.items():
            mono = mpmath.mpf(1)
            for v, k, a in zip(xs, l, sol.alpha):
                mono *= mpmath.power(v, mpmath.mpf(k) + mpmath.mpf(a.numerator) / a.denominator)
            for e, c in poly.items():
                term = mono * c.evaluate(vals)
                for lg, k in zip(logs, e):
                    if k:
                        term *= lg ** k
                total += term
        return +total
