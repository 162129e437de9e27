from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_gkz.constants import ConstElem, monomial_name, parse_monomial, psi_value, zeta_symbol
from cayley_gkz.oracles import constant_values

GAMMA = ConstElem.symbol("gamma")
LOG2 = ConstElem.symbol("log2")


def numeric(c, dps=40):
    with mpmath.workdps(dps):
        return c.evaluate(constant_values(dps))


def test_psi_examples():
    assert psi_value(1) == -GAMMA
    assert psi_value(Fraction(1, 2)) == -GAMMA - 2 * LOG2
    assert psi_value(2) == 1 - GAMMA
    assert psi_value(Fraction(-1, 2)) == 2 - GAMMA - 2 * LOG2
    assert psi_value(1, 1) == zeta_symbol(2)
    assert psi_value(Fraction(1, 2), 1) == 3 * zeta_symbol(2)


def test_psi_rejects_poles_and_other_arguments():
    with pytest.raises(ValueError, match="pole"):
        psi_value(0)
    with pytest.raises(ValueError, match="pole"):
        psi_value(-3)
    with pytest.raises(ValueError, match="half-integer"):
        psi_value(Fraction(1, 3))
    with pytest.raises(ValueError):
        zeta_symbol(1)


@settings(max_examples=40, deadline=None)
@given(st.integers(-6, 12), st.booleans(), st.integers(0, 3))
def test_psi_matches_mpmath(a2, half, k):
    a = Fraction(2 * a2 + (1 if half else 0), 2)
    if a.denominator == 1 and a <= 0:
        return
    with mpmath.workdps(40):
        expected = mpmath.psi(k, mpmath.mpf(a.numerator) / a.denominator)
        assert abs(numeric(psi_value(a, k)) - expected) < mpmath.mpf(10) ** -30


def test_arithmetic_and_degrees():
    x = (GAMMA + 1) * (GAMMA - 1)
    assert x == GAMMA * GAMMA - 1
    assert x.degree_in("gamma") == 2 and x.degree_in("log2") == 0
    assert (x - x).is_zero() and ConstElem.rational(3).is_rational()
    assert (2 + LOG2).rational_part() == 2
    assert 1 - GAMMA == -(GAMMA - 1)


def test_evaluate_keeps_rationals_exact():
    assert ConstElem.rational(Fraction(1, 3)).evaluate({}) == Fraction(1, 3)
    assert isinstance((GAMMA * 0 + Fraction(2, 7)).evaluate({}), Fraction)


def test_monomial_names_round_trip():
    m = (GAMMA * GAMMA * LOG2 * zeta_symbol(3)).monomials()
    (mono,) = list(m)
    assert monomial_name(mono) == "gamma^2*log2*zeta3"
    assert parse_monomial(monomial_name(mono)) == mono
    assert parse_monomial("1") == ()
    with pytest.raises(ValueError, match="unknown constant"):
        ConstElem.symbol("pi")


def test_json_shape():
    assert (Fraction(1, 2) - 3 * GAMMA).to_json() == {"coeff_rational": "1/2",
                                                     "coeff_constants": {"gamma": "-3"}}
