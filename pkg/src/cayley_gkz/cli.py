"""Command-line front end.

    cayley-gkz dualize --instance p3-8planes
    cayley-gkz build   --instance p3-8planes
    cayley-gkz check   --instance p1-elliptic --beta 0
    cayley-gkz solve   --instance p1-elliptic --order 4
    cayley-gkz verify  --instance p3-8planes --order 2
    cayley-gkz oracle  --instance p3-8planes --order 2 --seed 3

Every command prints one JSON report (or writes it to ``--json``) and
exits with status 0 exactly when all checks it ran passed.
"""

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .cohomology import build_ring
from .frobenius import (assemble_B, evaluate_solution, extract_solutions, gamma_ratio_jet,
                        leading_signatures, reciprocal_gamma_jet, support_degree,
                        verify_annihilation, verify_annihilation_ring)
from .gkz import (build_cayley_gkz, cayley_polytope, fraction_str, holonomic_rank,
                  non_resonance_check, verify_union_cones)
from .instances import BUILTINS, Instance, InstanceError, default_degmax, load_instance
from .nef import check_lattice_cover, dual_nef_partition, smoothness_regime
from .oracles import LaurentSection, binomial_period, compare_gamma_jet, independent_volume
from .polytope import is_reflexive, lattice_points

HALF = Fraction(1, 2)


def _parse_beta(text: Optional[str], size: int) -> Optional[List[Fraction]]:
    """Comma-separated rationals; a single value is repeated ``size`` times."""
    if text is None:
        return None
    vals = [Fraction(t.strip()) for t in text.split(",")]
    if len(vals) == 1:
        vals = vals * size
    if len(vals) != size:
        raise InstanceError(f"--beta needs {size} entries, got {len(vals)}")
    return vals


def _vertices(p) -> list:
    return [list(v) for v in p.vertices]


def sections_of(inst: Instance) -> List[LaurentSection]:
    npd = inst.npd
    zero = (0,) * npd.n
    return [LaurentSection(i + 1, (zero,) + tuple(npd.part_rays(i))) for i in range(npd.r)]


# -- commands -----------------------------------------------------------------------------

def cmd_dualize(inst: Instance, args) -> dict:
    npd = inst.npd
    dual = dual_nef_partition(npd)
    back = dual_nef_partition(dual)
    round_trip = ([p.vertices for p in back.delta_parts] == [p.vertices for p in npd.delta_parts]
                  and [p.vertices for p in back.nabla_parts]
                  == [p.vertices for p in npd.nabla_parts])
    cover, witness = check_lattice_cover(npd)
    report = {
        "nabla_parts": [_vertices(p) for p in npd.nabla_parts],
        "delta_parts": [_vertices(p) for p in npd.delta_parts],
        "delta_reflexive": is_reflexive(npd.delta),
        "nabla_reflexive": is_reflexive(npd.nabla),
        "dual_fan": dual.fan.to_json(),
        "dual_parts": [list(p) for p in dual.parts],
        "round_trip": round_trip,
        "lattice_cover": cover,
        "lattice_points_of_conv_nabla": len(lattice_points(npd.delta_dual)),
        "regime": smoothness_regime(npd, dual),
    }
    if witness is not None:
        report["uncovered_point"] = list(witness)
    report["ok"] = (report["delta_reflexive"] and report["nabla_reflexive"] and round_trip
                    and cover)
    return report


def _gkz(inst: Instance, args):
    g = build_cayley_gkz(inst.npd)
    beta = _parse_beta(getattr(args, "beta", None), g.r + g.n)
    return g.with_beta(beta) if beta is not None else g


def cmd_build(inst: Instance, args) -> dict:
    g = _gkz(inst, args)
    report = g.to_json()
    report["shape"] = [len(g.A), g.ncols]
    report["regime"] = smoothness_regime(inst.npd)
    report["ok"] = True
    return report


def cmd_check(inst: Instance, args) -> dict:
    g = _gkz(inst, args)
    cert = non_resonance_check(g)
    volume = holonomic_rank(g)
    cones = len(inst.npd.fan.max_cones)
    seeded = independent_volume(cayley_polytope(g), args.seed)
    union = verify_union_cones(g, inst.npd)
    report = g.to_json()
    report.update(cert.to_json())
    report.update({
        "rank": volume,
        "rank_from_fan": cones,
        "rank_from_seeded_triangulation": seeded,
        "union_cones": union.to_json(),
    })
    report["ok"] = cert.non_resonant and volume == cones == seeded and union.ok
    return report


def _solve(inst: Instance, order: int):
    g = build_cayley_gkz(inst.npd)
    ring = build_ring(inst.npd.fan)
    B = assemble_B(ring, inst.npd, g, order)
    return g, ring, B, extract_solutions(B)


def cmd_solve(inst: Instance, args) -> dict:
    order = default_degmax(inst, args.order)
    g, ring, B, sols = _solve(inst, order)
    report = sols.to_json()
    report["count"] = len(sols)
    report["cohomology_degrees"] = ring.degrees
    if args.at:
        x = [Fraction(t) for t in args.at.split(",")]
        if len(x) != g.ncols:
            raise InstanceError(f"--at needs {g.ncols} coordinates")
        report["values"] = {s.basis_element: str(evaluate_solution(s, x))
                            for s in sols.solutions}
    report["ok"] = not B.outside_support
    return report


def cmd_verify(inst: Instance, args) -> dict:
    order = default_degmax(inst, args.order)
    g, ring, B, sols = _solve(inst, order)
    scalar = verify_annihilation(sols, g, order, ball=B.ball)
    ring_check = verify_annihilation_ring(B)
    period = binomial_period(sections_of(inst), order)
    degree_zero = B.degree_zero_series()
    oracle_ok = (all(c.is_rational() for c in degree_zero.values())
                 and {l: c.rational_part() for l, c in degree_zero.items()} == period)
    sig = leading_signatures(sols)
    gamma_free = all(c.degree_in("gamma") == 0 for s in sols.solutions
                     for poly in s.terms.values() for c in poly.values())
    report = {
        "order": order,
        "solutions": len(sols),
        "rank": len(inst.npd.fan.max_cones),
        "annihilation": scalar.to_json(),
        "annihilation_ring": ring_check.to_json(),
        "oracle_period_equal": oracle_ok,
        "period_terms": len(period),
        "distinct_leading_signatures": len(set(sig)),
        "gamma_free": gamma_free,
        "nonzero_terms_outside_mori_cone": len(B.outside_support),
        "warnings": scalar.warnings,
    }
    report["ok"] = (scalar.ok and ring_check.ok and oracle_ok and gamma_free
                    and len(sols) == report["rank"] == len(set(sig))
                    and not B.outside_support)
    return report


def cmd_oracle(inst: Instance, args) -> dict:
    order = default_degmax(inst, args.order)
    g = build_cayley_gkz(inst.npd)
    period = binomial_period(sections_of(inst), order)
    terms = [{"l": list(l), "coeff": fraction_str(c)}
             for l, c in sorted(period.items(), key=lambda lc: (support_degree(lc[0]), lc[0]))]
    vol = independent_volume(cayley_polytope(g), args.seed)
    K = inst.npd.n + 1
    jets = {}
    for a in (Fraction(1), Fraction(0), HALF):
        jet = reciprocal_gamma_jet(a, K).coeffs
        jets[fraction_str(a)] = str(compare_gamma_jet(jet, a))
    ratio = gamma_ratio_jet(0, K)
    report = {
        "order": order,
        "period": terms,
        "seed": args.seed,
        "independent_volume": vol,
        "max_cones": len(inst.npd.fan.max_cones),
        "gamma_jet_errors": jets,
        "ratio_jet_first_coefficient": str(ratio.coeffs[1]) if K > 1 else "0",
    }
    report["ok"] = vol == len(inst.npd.fan.max_cones)
    return report


COMMANDS = {"dualize": cmd_dualize, "build": cmd_build, "check": cmd_check,
            "solve": cmd_solve, "verify": cmd_verify, "oracle": cmd_oracle}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayley-gkz",
        description="GKZ systems of nef-partitions: construction, non-resonance, rank and "
                    "Frobenius series solutions.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--instance", required=True,
                        help=f"instance file or built-in name ({', '.join(BUILTINS)})")
    parser.add_argument("--order", type=int, default=None,
                        help="truncation order |l_+| of the series (default from the instance)")
    parser.add_argument("--seed", type=int, default=0, help="seed for the randomized oracles")
    parser.add_argument("--json", dest="json_out", default=None,
                        help="write the report to this file instead of stdout")
    parser.add_argument("--beta", default=None,
                        help="override beta, comma-separated rationals (one value is repeated)")
    parser.add_argument("--at", default=None,
                        help="solve: evaluate the solutions at these comma-separated x values")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.order is not None and args.order < 0:
        print(json.dumps({"ok": False, "error": "--order must be nonnegative"}))
        return 2
    try:
        inst = load_instance(args.instance)
        report = COMMANDS[args.command](inst, args)
    except ValueError as exc:
        report = {"ok": False, "error": str(exc)}
    report = {"command": args.command, "instance": args.instance, **report}
    text = json.dumps(report, indent=2)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
        print(f"{args.command}: {'ok' if report['ok'] else 'FAILED'} -> {args.json_out}")
    else:
        print(text)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
