"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 domain error (degenerate or boundary
input), 4 self-test failure.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import math
import sys

import numpy as np

from . import io
from .classes import classify_triple
from .congruence import Tolerance, congruent, match_residual, witness
from .counterexamples import DEFAULT_PARAMS, refutation_report
from .errors import DomainError, InputError
from .hermspace import HermitianSpace
from .invariants import profile
from .moduli import ModuliPoint, det_normalized, member, membership_slice, realize, sample_with_rate

EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_SELFTEST = 4


_GLOBAL_DEFAULTS = {
    "tol_abs": None,
    "tol_rel": None,
    "eps_isotropy": None,
    "seed": None,
    "format": None,
    "raw_sigma": False,
}


def _common() -> argparse.ArgumentParser:
    # defaults are suppressed so that a flag given before a subcommand is not
    # reset by the subcommand's own copy of the option
    sup = argparse.SUPPRESS
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol-abs", type=float, default=sup, help="absolute comparison tolerance")
    p.add_argument("--tol-rel", type=float, default=sup, help="relative comparison tolerance")
    p.add_argument("--eps-isotropy", type=float, default=sup, help="isotropy threshold for <v,v>/|v|^2")
    p.add_argument("--seed", type=int, default=sup)
    p.add_argument("--format", choices=("json", "csv", "md"), default=sup)
    p.add_argument("--raw-sigma", action="store_true", default=sup,
                   help="report sigma* with the opposite (non-positive) sign convention")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="quatcongruence",
        description="Invariants and congruence of point triples in quaternionic hyperbolic space.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="point signs and triple class")
    p.add_argument("file")

    p = sub.add_parser("invariants", parents=[common], help="invariant profile of a triple")
    p.add_argument("file")

    p = sub.add_parser("congruent", parents=[common], help="decide congruence of two triples")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--witness", action="store_true", help="also emit an isometry matrix")

    p = sub.add_parser("moduli", parents=[common], help="moduli of hyperplane triples")
    msub = p.add_subparsers(dest="moduli_command", required=True)
    for name in ("check", "realize"):
        q = msub.add_parser(name, parents=[common])
        for arg in ("r1", "r2", "r3", "alpha"):
            q.add_argument(arg, type=float)
        if name == "realize":
            q.add_argument("--n", type=int, default=2)
    q = msub.add_parser("sample", parents=[common])
    q.add_argument("count", type=int)
    q.add_argument("--box", type=float, default=3.0)
    q = msub.add_parser("slice", parents=[common])
    q.add_argument("--r1", type=float, required=True)
    q.add_argument("--r2", type=float, required=True)
    q.add_argument("--r3-max", type=float, default=3.0)
    q.add_argument("--resolution", type=int, default=60)
    q.add_argument("--out", default="moduli_slice.svg", help="SVG output path")

    p = sub.add_parser("counterexample", parents=[common], help="tables for the two counterexample families")
    p.add_argument("family", choices=("I", "II"))
    p.add_argument("--params", type=float, nargs="+", default=None)
    p.add_argument("--figure", default=None, help="write an SVG plot of eta to this path")

    p = sub.add_parser("selftest", parents=[common], help="randomized invariance checks")
    p.add_argument("--iters", type=int, default=20)
    return parser


def _space(pf: io.PointFile, args) -> HermitianSpace:
    eps = args.eps_isotropy if args.eps_isotropy is not None else pf.options.get("eps_isotropy", 1e-9)
    return HermitianSpace(pf.n, float(eps))


def _tolerance(args, options=None) -> Tolerance:
    options = options or {}
    a = args.tol_abs if args.tol_abs is not None else options.get("tol_abs", 1e-9)
    r = args.tol_rel if args.tol_rel is not None else options.get("tol_rel", 1e-7)
    return Tolerance(float(a), float(r))


def _triple(pf: io.PointFile, what: str = "file"):
    if len(pf.points) != 3:
        raise InputError(f"{what} must contain exactly 3 points, found {len(pf.points)}")
    return pf.points


def cmd_classify(args, out) -> int:
    pf = io.load(args.file)
    space = _space(pf, args)
    doc = {
        "n": pf.n,
        "signs": [space.classify(v).value for v in pf.points],
        "class": classify_triple(space, *pf.points).to_json() if len(pf.points) == 3 else None,
    }
    out.write(io.dumps(doc))
    return 0


def cmd_invariants(args, out) -> int:
    pf = io.load(args.file)
    space = _space(pf, args)
    prof = profile(space, *_triple(pf), raw_sigma=args.raw_sigma)
    out.write(io.dumps(prof.to_json()))
    return 0


def cmd_congruent(args, out) -> int:
    pa, pb = io.load(args.file_a), io.load(args.file_b)
    if pa.n != pb.n:
        raise InputError(f"files live in different dimensions (n={pa.n} and n={pb.n})")
    space = _space(pa, args)
    ta, tb = _triple(pa, args.file_a), _triple(pb, args.file_b)
    report = congruent(space, ta, tb, _tolerance(args, pa.options), raw_sigma=args.raw_sigma)
    doc = report.to_json()
    if args.witness:
        if report.verdict:
            g = witness(space, ta, tb)
            doc["witness"] = g.to_json()
            doc["witness"]["match_residual"] = match_residual(space, g, ta, tb)
        else:
            doc["witness"] = None
    out.write(io.dumps(doc))
    return 0


def _moduli_point(args) -> ModuliPoint:
    return ModuliPoint(args.r1, args.r2, args.r3, args.alpha)


def cmd_moduli(args, out) -> int:
    sub = args.moduli_command
    if sub == "check":
        m = _moduli_point(args)
        doc = {"point": [m.r1, m.r2, m.r3, m.alpha], "det": det_normalized(m), "member": member(m)}
        out.write(io.dumps(doc))
        return 0
    if sub == "realize":
        if args.n < 2:
            raise InputError("realization needs n >= 2")
        space = HermitianSpace(args.n)
        pts = realize(space, _moduli_point(args))
        out.write(io.serialize(io.PointFile(args.n, [p.rep for p in pts], {})))
        return 0
    if sub == "sample":
        pts, rate = sample_with_rate(args.count, args.seed if args.seed is not None else 0, args.box)
        if (args.format or "csv") == "json":
            out.write(io.dumps({"acceptance_rate": rate, "points": [p.to_json() for p in pts]}))
        else:
            _write_csv(out, ["r1", "r2", "r3", "alpha", "det"],
                       [[p.r1, p.r2, p.r3, p.alpha, det_normalized(p)] for p in pts])
            print(f"acceptance rate: {rate:.4f}", file=sys.stderr)
        return 0
    if sub == "slice":
        from .plotting import moduli_slice_svg

        sl = membership_slice(args.r1, args.r2, args.r3_max, args.resolution)
        moduli_slice_svg(sl, args.out)
        rows = []
        for i, a in enumerate(sl.alpha):
            for k, r in enumerate(sl.r3):
                rows.append([r, a, sl.det[i, k], bool(sl.member[i, k])])
        _write_csv(out, ["r3", "alpha", "det", "member"], rows)
        print(f"wrote {args.out}", file=sys.stderr)
        return 0
    raise InputError(f"unknown moduli command {sub!r}")


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return io.fmt_float(v)
    return str(v)


def _write_csv(out, header, rows) -> None:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    out.write(buf.getvalue())


def cmd_counterexample(args, out) -> int:
    params = args.params if args.params is not None else DEFAULT_PARAMS[args.family]
    report = refutation_report(args.family, params)
    fmt = args.format or "md"
    if fmt == "md":
        out.write(report.to_markdown())
    elif fmt == "csv":
        out.write(report.to_csv())
    else:
        out.write(io.dumps(report.to_json()))
    if args.figure:
        from .plotting import eta_family_svg

        eta_family_svg(report, args.figure)
        print(f"wrote {args.figure}", file=sys.stderr)
    return 0


def cmd_selftest(args, out) -> int:
    from .selftest import run

    seed = args.seed if args.seed is not None else 0
    tol = _tolerance(args)
    results = run(seed, args.iters, tol)
    for r in results:
        out.write(r.line() + "\n")
    failed = [r for r in results if not r.passed]
    out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    return EXIT_SELFTEST if failed else 0


COMMANDS = {
    "classify": cmd_classify,
    "invariants": cmd_invariants,
    "congruent": cmd_congruent,
    "moduli": cmd_moduli,
    "counterexample": cmd_counterexample,
    "selftest": cmd_selftest,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    # filled in here rather than with set_defaults, which would write the
    # defaults into the option objects shared with every subcommand
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
