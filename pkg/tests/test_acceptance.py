"""The ten acceptance criteria, one test each.

Every test prints a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line (also repeated in the terminal summary) and then asserts.
"""

import time
from fractions import Fraction

from cayley_gkz.cli import build_parser, cmd_build, sections_of
from cayley_gkz.cohomology import build_ring
from cayley_gkz.frobenius import (FrobeniusContext, assemble_B, extract_solutions,
                                  leading_signatures, verify_annihilation)
from cayley_gkz.gkz import (build_cayley_gkz, facet_normals_RA, holonomic_rank,
                            non_resonance_check, verify_union_cones)
from cayley_gkz.instances import load_instance
from cayley_gkz.nef import check_lattice_cover, dual_nef_partition
from cayley_gkz.oracles import binomial_period
from cayley_gkz.polytope import lattice_points

HALF = Fraction(1, 2)
BUILTINS = ["p1-elliptic", "p3-8planes"]
ORDERS = {"p1-elliptic": 4, "p3-8planes": 2}
RESULTS = []

# the 7x16 matrix and beta printed for the eight-planes example
P3_MATRIX = [
    [1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
    [0, 1, 0, 0, 0, -1, -1, -1, 0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 1, 0, 0, -1, -1, -1, 0, 0, 0, 1],
    [0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, -1, -1, -1],
]
P3_BETA = ["-1/2"] * 4 + ["0"] * 3
# our column c is column P3_PERMUTATION.index(c) of the printed matrix
P3_PERMUTATION = [0, 3, 2, 1, 4, 5, 7, 6, 8, 9, 11, 10, 12, 13, 15, 14]


def report(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def solve(name):
    inst = load_instance(name)
    npd = inst.npd
    g = build_cayley_gkz(npd)
    ring = build_ring(npd.fan)
    B = assemble_B(ring, npd, g, ORDERS[name])
    return inst, g, ring, B, extract_solutions(B)


def test_criterion_1_matrix_reproduction():
    start = time.perf_counter()
    rep = cmd_build(load_instance("p3-8planes"),
                    build_parser().parse_args(["build", "--instance", "p3-8planes"]))
    elapsed = time.perf_counter() - start
    permuted = [[row[c] for c in P3_PERMUTATION] for row in rep["A"]]
    ok = (rep["shape"] == [7, 16] and permuted == P3_MATRIX and rep["beta"] == P3_BETA
          and sorted(P3_PERMUTATION) == list(range(16)) and elapsed < 1)
    report(1, ok, f"7x16 matrix and beta equal the printed ones under the recorded "
                  f"in-block permutation ({elapsed:.2f}s)")


def test_criterion_2_non_resonance_certificate():
    details, ok = [], True
    for name in BUILTINS:
        start = time.perf_counter()
        g = build_cayley_gkz(load_instance(name).npd)
        normals = facet_normals_RA(g)
        cert = non_resonance_check(g)
        elapsed = time.perf_counter() - start
        shaped = all(sorted(h[:g.r]) == [0] * (g.r - 1) + [1]
                     and all(isinstance(x, int) for x in h) for h in normals)
        pairs = [p for _, p in cert.pairings]
        ok &= shaped and cert.non_resonant and set(pairs) == {-HALF} and elapsed < 10
        details.append(f"{name}: {len(normals)} facets (e_j, m), all pairings -1/2 "
                       f"({elapsed:.2f}s)")
    report(2, ok, "; ".join(details))


def test_criterion_3_rank_two_ways():
    details, ok = [], True
    for name, expected in zip(BUILTINS, (2, 20)):
        start = time.perf_counter()
        npd = load_instance(name).npd
        vol = holonomic_rank(build_cayley_gkz(npd))
        cones = len(npd.fan.max_cones)
        elapsed = time.perf_counter() - start
        ok &= vol == cones == expected and elapsed < 30
        details.append(f"{name}: volume {vol} = {cones} maximal cones ({elapsed:.2f}s)")
    report(3, ok, "; ".join(details))


def test_criterion_4_union_cones():
    details, ok = [], True
    for name in BUILTINS:
        start = time.perf_counter()
        npd = load_instance(name).npd
        rep = verify_union_cones(build_cayley_gkz(npd), npd)
        elapsed = time.perf_counter() - start
        ok &= rep.ok and sum(rep.simplex_volumes) == rep.volume and elapsed < 60
        details.append(f"{name}: {len(rep.simplex_volumes)} simplices, volume sum "
                       f"{sum(rep.simplex_volumes)} = {rep.volume} ({elapsed:.2f}s)")
    report(4, ok, "; ".join(details))


def test_criterion_5_oracle_equality():
    details, ok = [], True
    for name in BUILTINS:
        start = time.perf_counter()
        inst, g, ring, B, sols = solve(name)
        period = binomial_period(sections_of(inst), ORDERS[name])
        series = B.degree_zero_series()
        equal = (all(c.is_rational() for c in series.values())
                 and {l: c.rational_part() for l, c in series.items()} == period)
        elapsed = time.perf_counter() - start
        ok &= equal and elapsed < 300
        details.append(f"{name}: {len(period)} terms equal through order {ORDERS[name]} "
                       f"({elapsed:.2f}s)")
    p1 = binomial_period(sections_of(load_instance("p1-elliptic")), 4)
    values = [p1[l] for l in sorted(p1, key=lambda l: -l[0])]
    ok &= values == [1, Fraction(3, 4), Fraction(105, 64)]
    report(5, ok, "; ".join(details) + "; P1 values 1, 3/4, 105/64")


def test_criterion_6_annihilation():
    details, ok = [], True
    for name in BUILTINS:
        start = time.perf_counter()
        inst, g, ring, B, sols = solve(name)
        rep = verify_annihilation(sols, g, ORDERS[name], ball=B.ball)
        elapsed = time.perf_counter() - start
        ok &= rep.ok and rep.box_operators > 0 and elapsed < 300
        details.append(f"{name}: {rep.euler_checked} Euler terms, {rep.box_operators} box "
                       f"operators over {rep.box_checked} windows, "
                       f"{len(rep.residuals)} residuals ({elapsed:.2f}s)")
    report(6, ok, "; ".join(details))


def test_criterion_7_solution_count():
    details, ok = [], True
    for name, expected in zip(BUILTINS, (2, 20)):
        inst, g, ring, B, sols = solve(name)
        sig = leading_signatures(sols)
        ok &= len(sols) == expected == len(set(sig)) == len(sig)
        details.append(f"{name}: {len(sols)} solutions, {len(set(sig))} distinct signatures")
    report(7, ok, "; ".join(details))


def test_criterion_8_gamma_cancellation():
    details, ok = [], True
    for name in BUILTINS:
        inst, g, ring, B, sols = solve(name)
        free = all(c.degree_in("gamma") == 0 for s in sols.solutions
                   for poly in s.terms.values() for c in poly.values())
        npd = inst.npd
        mutated = FrobeniusContext(ring, npd, g, zero_part_override=[ring.zero()] * npd.r)
        appears = mutated.G.gamma_degree() > 0
        ok &= free and appears
        details.append(f"{name}: solutions gamma-free, mutation gamma-degree "
                       f"{mutated.G.gamma_degree()}")
    report(8, ok, "; ".join(details))


def test_criterion_9_duality_round_trips():
    details, ok = [], True
    for name in BUILTINS:
        start = time.perf_counter()
        npd = load_instance(name).npd
        back = dual_nef_partition(dual_nef_partition(npd))
        same = ([p.vertices for p in back.delta_parts] == [p.vertices for p in npd.delta_parts]
                and [p.vertices for p in back.nabla_parts]
                == [p.vertices for p in npd.nabla_parts])
        cover, _ = check_lattice_cover(npd)
        points = len(lattice_points(npd.delta_dual))
        elapsed = time.perf_counter() - start
        ok &= same and cover and elapsed < 10
        details.append(f"{name}: round trip {same}, cover {cover} on {points} points "
                       f"({elapsed:.2f}s)")
    ok &= len(lattice_points(load_instance("p3-8planes").npd.delta_dual)) == 13
    report(9, ok, "; ".join(details))


def test_criterion_10_resonance_control():
    details, ok = [], True
    for name in BUILTINS:
        g = build_cayley_gkz(load_instance(name).npd)
        before = non_resonance_check(g).non_resonant
        after = non_resonance_check(g.with_beta([0] * (g.r + g.n))).non_resonant
        ok &= before and not after
        details.append(f"{name}: non-resonant at beta, resonant at 0")
    report(10, ok, "; ".join(details))
