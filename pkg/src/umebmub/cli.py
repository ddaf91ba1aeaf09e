"""Command-line front end.

Exit codes: 0 pass, 1 verification failed, 2 usage or input error,
3 semantically invalid input (d < 3, non-unitary S or W).
Angles are decimal radians (pi/2 = 1.5707963267948966).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .bases import build_umeb, complete_basis
from .entanglement import OptimizerConfig, verify_umeb
from .errors import (
    InvalidDimensionError,
    NotOrthonormalError,
    NotUnitaryError,
    SearchConfigError,
    ShapeError,
)
from .linalg import DEFAULT_EPS
from .mub import (
    EXAMPLE_IDS,
    PhaseSpec,
    build_second_basis,
    corollary_check,
    example_catalog,
    theorem_conditions,
    verify_pair_direct,
)
from .search import MODES, SearchConfig, SearchStats, run_search

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_SEMANTIC = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="umebmub", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="write a basis, or a basis pair for a spec")
    c.add_argument("--d", type=int, help="dimension of the second factor (>= 3)")
    src = c.add_mutually_exclusive_group()
    src.add_argument("--example", choices=EXAMPLE_IDS)
    src.add_argument("--spec", metavar="SPEC_JSON", help='{"d", "S", "W"} file')
    src.add_argument("--umeb", action="store_true", help="write only the 2d-2 UMEB states")
    c.add_argument("--out", required=True)

    v = sub.add_parser("verify", help="check a file and print a JSON report")
    v.add_argument("check", choices=("mub", "theorem", "corollary", "umeb"))
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--tol", type=float, default=DEFAULT_EPS)
    v.add_argument("--certify-margin", type=float, default=OptimizerConfig.certify_margin)

    s = sub.add_parser("search", help="search for (S, W) pairs; writes JSON lines")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--mode", choices=MODES, required=True)
    s.add_argument("--phi1", type=float, required=True)
    s.add_argument("--phi2", type=float, required=True)
    s.add_argument("--limit", type=int, default=SearchConfig.limit)
    s.add_argument("--seed", type=int, default=SearchConfig.seed)
    s.add_argument("--samples", type=int, default=SearchConfig.samples)
    s.add_argument("--tol", type=float, default=DEFAULT_EPS, help="verification tolerance for emitted candidates")
    s.add_argument("--out", required=True)
    return p


def cmd_construct(args) -> int:
    spec = None
    if args.example:
        spec = example_catalog(args.example)
    elif args.spec:
        spec = jsonio.spec_from_json(jsonio.read_json(args.spec))
    if spec is not None:
        if args.d is not None and args.d != spec.d:
            raise InvalidDimensionError(f"--d {args.d} does not match the spec's d = {spec.d}")
        second = build_second_basis(spec)
        jsonio.write_json(args.out, jsonio.pair_to_json(complete_basis(spec.d), second, spec))
        return EXIT_PASS
    if args.d is None:
        raise ShapeError("construct needs --d unless --example or --spec is given")
    basis = build_umeb(args.d) if args.umeb else complete_basis(args.d)
    jsonio.write_json(args.out, jsonio.basis_to_json(basis))
    return EXIT_PASS


def _spec_from_any(obj):
    if isinstance(obj, dict) and "spec" in obj:
        obj = obj["spec"]
    return jsonio.spec_from_json(obj)


def cmd_verify(args) -> int:
    obj = jsonio.read_json(args.inp)
    if args.check == "mub":
        first, second = jsonio.pair_from_json(obj)
        report = verify_pair_direct(first, second, args.tol)
    elif args.check == "theorem":
        report = theorem_conditions(_spec_from_any(obj), args.tol)
    elif args.check == "corollary":
        if isinstance(obj, dict) and "theta" in obj:
            ps = jsonio.phase_spec_from_json(obj)
        else:
            ps = PhaseSpec.from_mub_spec(_spec_from_any(obj), args.tol)
        report = corollary_check(ps, args.tol)
    else:
        basis = jsonio.basis_from_json(obj["first"] if isinstance(obj, dict) and "first" in obj else obj)
        cfg = OptimizerConfig(certify_margin=args.certify_margin)
        report = verify_umeb(basis, args.tol, cfg)
    print(json.dumps(report.to_json()))
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_search(args) -> int:
    cfg = SearchConfig(
        d=args.d, mode=args.mode, limit=args.limit, seed=args.seed,
        phi1=args.phi1, phi2=args.phi2, samples=args.samples, tol=args.tol,
    )
    stats = SearchStats()
    with open(args.out, "w") as fh:
        for cand in run_search(cfg, stats):
            fh.write(json.dumps(cand.to_json()) + "\n")
    status = "found" if stats.emitted else "none-found"
    print(f"{status} mode={cfg.mode} d={cfg.d} {stats.summary()}")
    return EXIT_PASS


_COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "search": cmd_search}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        parser.error("--tol must be positive")
    try:
        return _COMMANDS[args.command](args)
    except (InvalidDimensionError, NotUnitaryError, NotOrthonormalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except (ShapeError, SearchConfigError, KeyError, TypeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
