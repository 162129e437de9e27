"""Walk the whole pipeline on the elliptic curve in P^1 (one section, r = 1).

Builds the nef partition, the Cayley GKZ data, checks non-resonance and the rank,
then prints the two Frobenius solutions and checks them against the binomial period.
"""

from cayley_gkz.cli import sections_of
from cayley_gkz.cohomology import build_ring
from cayley_gkz.frobenius import assemble_B, extract_solutions, verify_annihilation
from cayley_gkz.gkz import build_cayley_gkz, holonomic_rank, non_resonance_check
from cayley_gkz.instances import load_instance
from cayley_gkz.oracles import binomial_period

ORDER = 4

inst = load_instance("p1-elliptic")
npd = inst.npd
print("rays of the fan:", npd.fan.rays)
print("Delta parts:", [p.vertices for p in npd.delta_parts])

g = build_cayley_gkz(npd)
print("A =", g.A)
print("beta =", [str(b) for b in g.beta])
cert = non_resonance_check(g)
print("non-resonant:", cert.non_resonant, "pairings:", [str(p) for _, p in cert.pairings])
print("rank:", holonomic_rank(g), "maximal cones:", len(npd.fan.max_cones))

ring = build_ring(npd.fan)
B = assemble_B(ring, npd, g, ORDER)
sols = extract_solutions(B)
for sol in sols.solutions:
    print(f"solution along {sol.basis_element} (log degree {sol.log_degree()}):")
    for l in sorted(sol.terms, key=lambda l: -l[0]):
        for e, c in sorted(sol.terms[l].items()):
            print(f"  x^{list(l)} lambda^{list(e)}: {c.to_json()}")

period = binomial_period(sections_of(inst), ORDER)
series = {l: c.rational_part() for l, c in B.degree_zero_series().items()}
print("period:", {l: str(c) for l, c in period.items()})
print("holomorphic solution equals the period:", series == period)
print("annihilated:", verify_annihilation(sols, g, ORDER, ball=B.ball).ok)
