"""Exact polynomials in the transcendental constants gamma, log 2, zeta(k).

The only transcendental numbers entering the Frobenius coefficients are
polygamma values at 1 and 1/2, which are rational polynomials in Euler's
constant, ``log 2`` and ``zeta(k)``.  Keeping them as formal symbols makes
every identity an exact equality.
"""

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Mapping, Tuple

# a monomial is a sorted tuple of (symbol, exponent)
ConstMonomial = Tuple[Tuple[str, int], ...]
ONE: ConstMonomial = ()


def _symbol_key(sym: str):
    if sym == "gamma":
        return (0, 0)
    if sym == "log2":
        return (1, 0)
    if sym.startswith("zeta"):
        return (2, int(sym[4:]))
    raise ValueError(f"unknown constant symbol {sym!r}")


def _mono_mul(a: ConstMonomial, b: ConstMonomial) -> ConstMonomial:
    d: Dict[str, int] = dict(a)
    for s, e in b:
        d[s] = d.get(s, 0) + e
    return tuple(sorted(d.items(), key=lambda se: _symbol_key(se[0])))


def monomial_name(m: ConstMonomial) -> str:
    if not m:
        return "1"
    return "*".join(s if e == 1 else f"{s}^{e}" for s, e in m)


def parse_monomial(name: str) -> ConstMonomial:
    if name == "1":
        return ONE
    out = []
    for part in name.split("*"):
        s, _, e = part.partition("^")
        out.append((s, int(e) if e else 1))
    return tuple(sorted(out, key=lambda se: _symbol_key(se[0])))


class ConstElem:
    """A polynomial with rational coefficients in the formal constants."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[ConstMonomial, Fraction] = None):
        self.terms: Dict[ConstMonomial, Fraction] = {
            m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def rational(cls, c) -> "ConstElem":
        return cls({ONE: Fraction(c)})

    @classmethod
    def symbol(cls, name: str) -> "ConstElem":
        _symbol_key(name)
        return cls({((name, 1),): Fraction(1)})

    def __repr__(self):
        return f"ConstElem({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_order):
            c = self.terms[m]
            parts.append(str(c) if not m else f"({c})*{monomial_name(m)}")
        return " + ".join(parts)

    def __eq__(self, other):
        if not isinstance(other, ConstElem):
            other = ConstElem.rational(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, ConstElem):
            other = ConstElem.rational(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ConstElem(out)

    __radd__ = __add__

    def __neg__(self):
        return ConstElem({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ConstElem):
            c = Fraction(other)
            return ConstElem({m: c * v for m, v in self.terms.items()})
        out: Dict[ConstMonomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return ConstElem(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(not m for m in self.terms)

    def rational_part(self) -> Fraction:
        return self.terms.get(ONE, Fraction(0))

    def degree_in(self, symbol: str) -> int:
        """Highest power of ``symbol`` among the terms (0 for the zero element)."""
        return max((dict(m).get(symbol, 0) for m in self.terms), default=0)

    def monomials(self) -> Iterable[ConstMonomial]:
        return self.terms.keys()

    def evaluate(self, values: Mapping[str, object]):
        """Substitute numbers (e.g. mpmath values) for the symbols; rational terms stay exact."""
        total = 0
        for m, c in self.terms.items():
            term = c
            for s, e in m:
                term = term * values[s] ** e
            total = total + term
        return total

    def to_json(self) -> dict:
        """``{"coeff_rational": "p/q", "coeff_constants": {name: "p/q"}}``."""
        consts = {monomial_name(m): _frac_str(c)
                  for m, c in sorted(self.terms.items(), key=lambda mc: _order(mc[0])) if m}
        return {"coeff_rational": _frac_str(self.rational_part()), "coeff_constants": consts}


def _order(m: ConstMonomial):
    return (sum(e for _, e in m), [(_symbol_key(s), e) for s, e in m])


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


ZERO = ConstElem()


def zeta_symbol(k: int) -> ConstElem:
    """``zeta(k)``, with ``zeta(2)`` kept as its own symbol."""
    if k < 2:
        raise ValueError("zeta(k) needs k >= 2")
    return ConstElem.symbol(f"zeta{k}")


def psi_at_base(base: Fraction, k: int) -> ConstElem:
    """``psi^(k)`` at ``1`` or ``1/2``."""
    base = Fraction(base)
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    if base == 1:
        if k == 0:
            return -ConstElem.symbol("gamma")
        return zeta_symbol(k + 1) * ((-1) ** (k + 1) * factorial(k))
    if base == Fraction(1, 2):
        if k == 0:
            return -ConstElem.symbol("gamma") - ConstElem.symbol("log2") * 2
        return zeta_symbol(k + 1) * ((-1) ** (k + 1) * factorial(k) * (2 ** (k + 1) - 1))
    raise ValueError(f"unsupported base {base}; use 1 or 1/2")


def psi_value(a, k: int = 0) -> ConstElem:
    """``psi^(k)(a)`` for ``a`` in ``(1/2) Z``, away from the poles.

    Shifts ``a`` to the base point ``1`` or ``1/2`` with
    ``psi^(k)(x + 1) = psi^(k)(x) + (-1)^k k! / x^(k + 1)``.
    """
    a = Fraction(a)
    if (2 * a).denominator != 1:
        raise ValueError(f"unsupported argument {a}; need an integer or half-integer")
    if a.denominator == 1 and a <= 0:
        raise ValueError(f"psi has a pole at {a}")
    base = Fraction(1) if a.denominator == 1 else Fraction(1, 2)
    out = psi_at_base(base, k)
    step = (-1) ** k * factorial(k)
    x = base
    while x < a:
        out = out + Fraction(step) / x ** (k + 1)
        x += 1
    while x > a:
        x -= 1
        out = out - Fraction(step) / x ** (k + 1)
    return out
