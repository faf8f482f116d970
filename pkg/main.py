#!/usr/bin/env python3
"""
Crosscap Orientation Lab runner.

Every command prints one JSON report to stdout; diagnostics go to stderr.
Exit codes: 0 pass, 1 computation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.config import get_config, setup_logging
from core.curves.realcurves import build, check_equivariance, equivariance_residual, in_delta
from core.errors import ComputationError, CrosscapError, InputError
from core.numerics.clutching import (
    check_reality,
    classify_disk,
    det_winding,
    induced_klein_pair,
    klein_class,
    reality_deviation,
)
from core.numerics.spectral import (
    DiskProblem,
    boundary_recurrence_cokernel,
    boundary_recurrence_kernel,
    numerical_kernel_dim,
    remark37_expected,
    remark37_integral,
)
from core.orientation.holonomy import (
    corollary17_verdict,
    corollary18_verdict,
    corollary62_verdict,
    corollary63_check,
    decompose,
    holonomy,
    trivialization_sign,
)
from core.shared import codec
from core.shared.report import Report, Stopwatch, inputs_digest
from core.topology.bundles import (
    KleinTorusPair,
    RealBundlePair,
    direct_sum,
    fredholm_index,
    has_real_square_root,
    klein_eqw2,
    klein_eqw2_oracle,
    klein_top,
    top_exterior,
)
from core.topology.cohomology import (
    H1Presentation,
    OneClass,
    cup_pair,
    ring_of,
    square_class_cokernel,
    square_pairing,
    whitney_w2,
)
from core.topology.surfaces import ClosedSurfaceInfo, double, euler_char, quotient
from core.verification.acceptance import acceptance_results_to_dict, run_acceptance

logger = logging.getLogger("crosscap")

EXIT_PASS, EXIT_COMPUTATION, EXIT_INPUT = 0, 1, 2

Outputs = Tuple[Dict[str, Any], Dict[str, bool]]


# ---- Argument helpers ----

def _bits(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated bits, got {text!r}") from e
    if any(v not in (0, 1) for v in values):
        raise argparse.ArgumentTypeError(f"expected bits, got {text!r}")
    return values


def _torsion(text: str) -> Tuple[int, int]:
    m, _, r = text.partition(":")
    try:
        return int(m), int(r or 1)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected ORDER[:MULTIPLICITY], got {text!r}") from e


def _surface(args):
    if getattr(args, "json", None):
        return codec.surface_from_dict(codec.load_json(args.json))
    return codec.surface_from_dict(args.surface)


def _info_dict(info: ClosedSurfaceInfo) -> Dict[str, Any]:
    return {
        "orientable": info.orientable,
        "genus_or_crosscap_number": info.genus_or_crosscap_number,
        "boundary_count": info.boundary_count,
        "euler_char": info.euler_char,
    }


def _closed_ring(args):
    if args.crosscaps is not None:
        return ring_of(ClosedSurfaceInfo(orientable=False, genus_or_crosscap_number=args.crosscaps))
    return ring_of(ClosedSurfaceInfo(orientable=True, genus_or_crosscap_number=args.genus))


def _pair(args, base) -> RealBundlePair:
    return RealBundlePair(rank=args.rank, maslov=args.maslov, std_w1=args.std_w1, base=base)


# ---- Handlers ----

def cmd_surface(args) -> Outputs:
    s = _surface(args)
    out = {"surface": codec.surface_to_dict(s)}
    if args.action == "double":
        out["double"] = _info_dict(double(s))
    elif args.action == "quotient":
        out["quotient"] = _info_dict(quotient(s))
    else:
        out["euler_char"] = euler_char(s)
    return out, {}


def cmd_cohomology(args) -> Outputs:
    if args.action == "cokernel":
        h = H1Presentation(free_rank=args.free, torsion_orders=list(args.torsion))
        count = square_class_cokernel(h)
        return {"cokernel_rank": count, "no_4_torsion": count == 0}, {}

    ring = _closed_ring(args)
    if args.action == "ring":
        return {
            "orientable": ring.orientable,
            "h1_rank": ring.h1_rank,
            "intersection_form": [list(r) for r in ring.intersection_form],
            "torsion_class": list(ring.torsion_class),
        }, {}
    if args.action == "cup":
        return {"cup": cup_pair(OneClass(args.kappa), OneClass(args.lam), ring)}, {}
    if args.action == "square":
        return {"square": square_pairing(OneClass(args.kappa), ring)}, {}
    return {"w2": whitney_w2([OneClass(b) for b in args.lines], ring)}, {}


def cmd_bundle(args) -> Outputs:
    if args.action == "klein":
        k = KleinTorusPair(rank=args.rank, twist=args.twist)
        eqw2, oracle = klein_eqw2(k), klein_eqw2_oracle(k)
        return {
            "eqw2": eqw2,
            "oracle": oracle,
            "top": codec.klein_to_dict(klein_top(k)),
            "real_square_root": has_real_square_root(k),
        }, {"oracle_agrees": eqw2 == oracle}

    base = _surface(args)
    if args.action == "sum":
        p = codec.pair_from_dict(codec.parse_json_text(args.p, "--p"), base)
        q = codec.pair_from_dict(codec.parse_json_text(args.q, "--q"), base)
        return {"sum": codec.pair_to_dict(direct_sum(p, q))}, {}
    pair = _pair(args, base)
    if args.action == "top":
        return {"top": codec.pair_to_dict(top_exterior(pair))}, {}
    return {"index": fredholm_index(pair, base)}, {}


def cmd_holonomy(args) -> Outputs:
    action = args.action
    if action in ("eval", "decompose"):
        loop = codec.operator_loop_from_dict(codec.load_json(args.loop))
        if action == "eval":
            return {"w1_det": holonomy(loop)}, {}
        reduced, bits = decompose(loop)
        total = holonomy(reduced) ^ (sum(bits) % 2)
        return {
            "reduced": codec.operator_loop_to_dict(reduced),
            "reduced_w1_det": holonomy(reduced),
            "crosscap_bits": bits,
            "w1_det": holonomy(loop),
        }, {"decomposition_identity": total == holonomy(loop)}
    if action == "sign":
        change, boundary = codec.change_from_dict(codec.load_json(args.change))
        return {"sign": trivialization_sign(change, boundary)}, {}
    if action == "cor17":
        verdict = corollary17_verdict(bool(args.no_std_boundary), bool(args.pi1_trivial),
                                      bool(args.c1_even), bool(args.square_root))
        return {"verdict": verdict.value}, {}
    if action == "cor18":
        verdict = corollary18_verdict(bool(args.pi1_trivial), bool(args.c1_even), bool(args.square_root))
        return {"verdict": verdict.value}, {}
    if action == "cor62":
        square = bool(args.square_class) or (bool(args.pi1_trivial) and bool(args.c1_even)) or bool(args.square_root)
        verdict = corollary62_verdict(args.std_circles, args.crosscap_circles, bool(args.fixed_orientable),
                                      bool(args.fixed_w2_square), square)
        return {"verdict": verdict.value, "top_eqw2_square": square}, {}
    check = corollary63_check(args.n, tuple(args.a))
    return {"applies": check.applies, "sign_product": check.sign_product}, {}


def cmd_clutch(args) -> Outputs:
    loop = codec.sampled_loop_from_dict(codec.load_json(args.loop))
    if args.action == "reality":
        return {"real": check_reality(loop, args.tol), "deviation": reality_deviation(loop)}, {}
    if args.action == "winding":
        return {"winding": det_winding(loop)}, {}
    if args.action == "disk":
        cls = classify_disk(loop, args.tol, form=args.form)
        return {"d": cls.d, "maslov": cls.maslov}, {}
    bit = klein_class(loop, args.tol)
    return {"klein_class": bit, "pair": codec.klein_to_dict(induced_klein_pair(loop, args.tol))}, {}


def cmd_spectral(args) -> Outputs:
    problem = DiskProblem.for_twist(args.d, K=args.trunc, M=args.colloc, tol=args.tol)
    dim = numerical_kernel_dim(problem)
    recurrence = boundary_recurrence_kernel(args.d)
    ok = dim == recurrence.dim
    return {
        "dim": dim,
        "expected": recurrence.dim,
        "pass": ok,
        "cokernel": boundary_recurrence_cokernel(args.d),
        "relations": recurrence.relations,
        "K": problem.K,
        "M": problem.M,
    }, {"kernel_matches_recurrence": ok}


def cmd_quadrature(args) -> Outputs:
    value = remark37_integral(args.k, args.m, args.points)
    expected = remark37_expected(args.k, args.m)
    ok = abs(value - expected) <= 1e-12
    return {"value": value, "expected": expected, "pass": ok}, {"quadrature_exact": ok}


def cmd_realcurve(args) -> Outputs:
    params = codec.params_from_dict(codec.load_json(args.params))
    if args.action == "build":
        return {"map": codec.poly_tuple_to_dict(build(params))}, {}
    if args.action == "delta":
        return {"in_delta": in_delta(params, args.tol)}, {}
    if args.action == "residual":
        return {"residual": equivariance_residual(build(params))}, {}
    config = get_config()
    tol = config.equivariance_tol if args.tol is None else args.tol
    deviation = check_equivariance(build(params), args.samples, tol, rng=np.random.default_rng(args.seed))
    return {"deviation": deviation, "tol": tol}, {"equivariant": deviation <= tol}


def cmd_verify_all(args) -> Outputs:
    results = run_acceptance(seed=args.seed, suite_ids=args.suite)
    checks = {f"suite_{s.suite_id}": s.passed for s in results.suites}
    return acceptance_results_to_dict(results), checks


# ---- Parser ----

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="master seed (default from config)")
    common.add_argument("--tol", type=float, default=None, help="tolerance override")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")

    parser = argparse.ArgumentParser(prog="main.py", description="Crosscap orientation lab")
    sub = parser.add_subparsers(dest="command", required=True)

    def surface_args(p, required=True):
        group = p.add_mutually_exclusive_group(required=required)
        group.add_argument("--surface", help="disk, disk-crosscap, annulus, mobius, sphere or g<G>-s<S>-c<C>")
        group.add_argument("--json", help="surface JSON file")

    p = sub.add_parser("surface", parents=[common], help="doubles, quotients, Euler characteristic")
    p.add_argument("action", choices=["double", "quotient", "euler"])
    surface_args(p)
    p.set_defaults(handler=cmd_surface)

    p = sub.add_parser("cohomology", parents=[common], help="Z2 cohomology of closed surfaces")
    p.add_argument("action", choices=["ring", "cup", "square", "cokernel", "w2"])
    closed = p.add_mutually_exclusive_group()
    closed.add_argument("--genus", type=int, default=1, help="orientable genus")
    closed.add_argument("--crosscaps", type=int, default=None, help="nonorientable crosscap number")
    p.add_argument("--kappa", type=_bits, default=())
    p.add_argument("--lam", type=_bits, default=())
    p.add_argument("--lines", type=_bits, nargs="*", default=[])
    p.add_argument("--free", type=int, default=0)
    p.add_argument("--torsion", type=_torsion, nargs="*", default=[])
    p.set_defaults(handler=cmd_cohomology)

    p = sub.add_parser("bundle", parents=[common], help="real bundle pairs and Klein torus pairs")
    p.add_argument("action", choices=["sum", "top", "index", "klein"])
    surface_args(p, required=False)
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--maslov", type=int, default=0)
    p.add_argument("--std-w1", type=_bits, default=())
    p.add_argument("--twist", type=int, choices=[0, 1], default=0)
    p.add_argument("--p", help='first pair as JSON, e.g. {"rank": 1, "maslov": 2, "std_w1": []}')
    p.add_argument("--q", help="second pair as JSON")
    p.set_defaults(handler=cmd_bundle)

    p = sub.add_parser("holonomy", parents=[common], help="determinant-line holonomy and criteria")
    p.add_argument("action", nargs="?", default="eval", choices=["eval", "decompose", "sign", "cor17", "cor18", "cor62", "cor63"])
    p.add_argument("--loop", help="operator loop JSON file")
    p.add_argument("--change", help="trivialization change JSON file")
    for flag in ("--no-std-boundary", "--pi1-trivial", "--c1-even", "--square-root",
                 "--fixed-orientable", "--fixed-w2-square", "--square-class"):
        p.add_argument(flag, type=int, choices=[0, 1], default=0)
    p.add_argument("--std-circles", type=int, default=0, help="standard boundary circles (cor62)")
    p.add_argument("--crosscap-circles", type=int, default=0, help="crosscaps (cor62)")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--a", type=int, nargs="*", default=[])
    p.set_defaults(handler=cmd_holonomy)

    p = sub.add_parser("clutch", parents=[common], help="sampled clutching loops")
    p.add_argument("action", choices=["reality", "winding", "disk", "klein"])
    p.add_argument("--loop", required=True, help="sampled loop JSON file")
    p.add_argument("--form", choices=["trivialization", "conjugation"], default="trivialization")
    p.set_defaults(handler=cmd_clutch)

    p = sub.add_parser("spectral", parents=[common], help="kernel of the crosscap-disk boundary problem")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trunc", type=int, default=None)
    p.add_argument("--colloc", type=int, default=None)
    p.set_defaults(handler=cmd_spectral)

    p = sub.add_parser("quadrature", parents=[common], help="contour integral of −Re z^{2k}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--points", type=int, default=None)
    p.set_defaults(handler=cmd_quadrature)

    p = sub.add_parser("realcurve", parents=[common], help="real rational curves")
    p.add_argument("action", choices=["build", "check", "delta", "residual"])
    p.add_argument("--params", required=True, help="curve parameter JSON file")
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(handler=cmd_realcurve)

    p = sub.add_parser("verify-all", parents=[common], help="run every acceptance suite")
    p.add_argument("--suite", type=int, nargs="*", default=None)
    p.set_defaults(handler=cmd_verify_all)

    return parser


def _validate(args, parser: argparse.ArgumentParser):
    """Cross-flag requirements argparse cannot express."""
    if args.command == "bundle" and args.action != "klein" and not (args.surface or args.json):
        parser.error("bundle sum/top/index need --surface or --json")
    if args.command == "bundle" and args.action == "sum" and not (args.p and args.q):
        parser.error("bundle sum needs --p and --q")
    if args.command == "holonomy" and args.action in ("eval", "decompose") and not args.loop:
        parser.error(f"holonomy {args.action} needs --loop")
    if args.command == "holonomy" and args.action == "sign" and not args.change:
        parser.error("holonomy sign needs --change")


def run(argv: List[str]) -> Tuple[Report, int]:
    """
    Parse argv, dispatch, and build the report.

    Returns:
        (report, exit code)
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    if args.seed is None:
        args.seed = get_config().default_seed

    report = Report(command=list(argv), inputs_digest=inputs_digest(argv, args.seed))
    code = EXIT_PASS
    with Stopwatch() as sw:
        try:
            outputs, checks = args.handler(args)
            report.outputs = outputs
            for name, ok in checks.items():
                report.check(name, ok)
            if not report.passed:
                code = EXIT_COMPUTATION
        except InputError as e:
            logger.error("input error: %s", e)
            report.error, report.passed, code = f"{type(e).__name__}: {e}", False, EXIT_INPUT
        except (ComputationError, CrosscapError) as e:
            logger.error("computation failed: %s", e)
            report.error, report.passed, code = f"{type(e).__name__}: {e}", False, EXIT_COMPUTATION
    report.wall_time_ms = sw.elapsed_ms
    return report, code


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    level = None
    if "--log-level" in argv:
        idx = argv.index("--log-level")
        level = argv[idx + 1] if idx + 1 < len(argv) else None
    setup_logging(level)

    report, code = run(argv)
    print(report.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
