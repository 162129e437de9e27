"""The independent routes: binomial period, random-order volume, numeric gamma jets."""

from fractions import Fraction

from cayley_gkz.cli import sections_of
from cayley_gkz.frobenius import reciprocal_gamma_jet
from cayley_gkz.gkz import build_cayley_gkz, cayley_polytope
from cayley_gkz.instances import load_instance
from cayley_gkz.oracles import binomial_period, compare_gamma_jet, independent_volume

for name, order in [("p1-elliptic", 4), ("p3-8planes", 2)]:
    inst = load_instance(name)
    period = binomial_period(sections_of(inst), order)
    print(f"{name}: period through order {order} has {len(period)} terms")
    poly = cayley_polytope(build_cayley_gkz(inst.npd))
    print("  volumes from three random triangulations:",
          [independent_volume(poly, seed) for seed in range(3)])

for a in [Fraction(1), Fraction(1, 2), Fraction(-1, 2)]:
    err = compare_gamma_jet(reciprocal_gamma_jet(a, 4).coeffs, a)
    print(f"1/Gamma jet at {a}: largest deviation from numeric {float(err):.1e}")
