"""Command-line front end: ``slabarea {beta,waist,verify,sweep,mesh}``.

Exit status: 0 when every check passes, 1 when a mathematical verdict
fails, 2 on usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .catenoid import BETA, CatenoidalWaist, is_maximally_stable, waist_area
from .corpus import CorpusError, read_corpus
from .errors import GaussMapSyntaxError, NonConvergence, RangeError
from .gauss_map_parser import parse_gauss_map
from .quadrature import QuadratureSpec
from .slab_analysis import CSV_COLUMNS, verify_chain, write_chain_csv
from .weierstrass import export_mesh, immerse

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_float(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return x


def _resolution(text):
    try:
        u, v = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected UxV, e.g. 64x256, got {text!r}") from None
    if u < 2 or v < 2:
        raise argparse.ArgumentTypeError("both resolution counts must be at least 2")
    return u, v


def _spec_from(args) -> QuadratureSpec:
    try:
        return QuadratureSpec(v_nodes=args.v_nodes, u_panels=args.u_panels, rel_tol=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_beta(args, out):
    if not 1 <= args.digits <= 15:
        raise UsageError(f"--digits must be between 1 and 15, got {args.digits}")
    print(f"beta = {BETA.value:.{args.digits}f} (residual {BETA.residual:.1e} <= 1e-13)", file=out)
    return EXIT_OK


def cmd_waist(args, out):
    c = CatenoidalWaist(args.lam, args.d0, args.a)
    try:
        area = waist_area(c)
    except RangeError as exc:
        raise UsageError(str(exc)) from None
    print(f"area = {area:.15g}", file=out)
    print(f"flux = {c.flux:.15g}", file=out)
    print(f"maximally stable = {str(is_maximally_stable(c)).lower()}", file=out)
    return EXIT_OK


def _verify_one(item):
    sid, surface, spec, mixed_ok = item
    try:
        return sid, verify_chain(surface, spec, mixed_ok=mixed_ok), None
    except (NonConvergence, RangeError) as exc:
        return sid, None, str(exc)


def cmd_verify(args, out):
    spec = _spec_from(args)
    try:
        corpus = read_corpus(args.corpus)
    except CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: cannot read {args.corpus}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    mixed = [sid for sid, s in corpus.surfaces if not s.eligible]
    if mixed and not args.mixed_ok:
        for sid in mixed:
            print(
                f"error: surface {sid} has level curves of mixed orientation; "
                "pass --mixed-ok to analyse it as exploratory",
                file=sys.stderr,
            )
        return EXIT_USAGE

    items = [(sid, s, spec, args.mixed_ok) for sid, s in corpus.surfaces]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_one, items))
    else:
        results = [_verify_one(it) for it in items]

    status = EXIT_OK
    rows = []
    for sid, report, err in results:
        if report is None:
            print(f"surface {sid}: numerical failure: {err}", file=sys.stderr)
            rows.append([sid] + ["nan"] * (len(CSV_COLUMNS) - 3) + ["error", "false"])
            status = EXIT_FAIL
            continue
        rows.append(report.csv_row(sid))
        if not report.exploratory and not report.passed:
            status = EXIT_FAIL
        tag = report.verdict + (" equality" if report.equality_case else "")
        failed = report.failed_links()
        detail = f" (failed: {'; '.join(failed)})" if failed else ""
        print(f"surface {sid}: {tag}{detail}", file=out)
    try:
        write_chain_csv(rows, args.out, spec)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    return status


def cmd_sweep(args, out):
    if not args.lambda_lo < args.lambda_hi:
        raise UsageError("--lambda-lo must be smaller than --lambda-hi")
    if args.steps < 3:
        raise UsageError("--steps must be at least 3")
    lams = np.linspace(args.lambda_lo, args.lambda_hi, args.steps)
    try:
        areas = [waist_area(CatenoidalWaist(float(lam), 0.0, args.a)) for lam in lams]
    except RangeError as exc:
        raise UsageError(str(exc)) from None
    try:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["lambda", "area"])
            writer.writerows((f"{lam:.17g}", f"{area:.17g}") for lam, area in zip(lams, areas))
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    i = int(np.argmin(areas))
    exact = BETA.value / args.a
    step = (args.lambda_hi - args.lambda_lo) / (args.steps - 1)
    print(f"grid argmin lambda = {lams[i]:.12g} (area {areas[i]:.12g})", file=out)
    print(f"analytic lambda* = beta/a = {exact:.12g}", file=out)
    print(f"discrepancy = {abs(lams[i] - exact):.3g} (grid step {step:.3g})", file=out)
    return EXIT_OK


def cmd_mesh(args, out):
    spec = _spec_from(args)
    try:
        g = parse_gauss_map(args.g, args.f)
    except GaussMapSyntaxError as exc:
        print(f"error: --g {args.g!r}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    u_count, v_count = args.resolution
    try:
        sample = immerse(g, args.a, u_count, v_count, spec)
    except (NonConvergence, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        export_mesh(sample, args.out)
    except OSError as exc:
        print(f"error: {exc.strerror}: {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote {u_count * v_count} vertices to {args.out}", file=out)
    if sample.closed:
        print("closed: true", file=out)
    else:
        print(f"closed: false (|period| = {abs(sample.period):.6g})", file=out)
    return EXIT_OK


def _add_spec_flags(p):
    p.add_argument("--v-nodes", type=int, default=256, help="periodic nodes per circumference")
    p.add_argument("--u-panels", type=int, default=64, help="Gauss-Legendre panels in height")
    p.add_argument("--tol", type=float, default=1e-10, help="relative quadrature tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slabarea", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("beta", help="print the root of tanh z = 1/z")
    p.add_argument("--digits", type=int, default=12)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("waist", help="area and stability of a catenoidal waist")
    p.add_argument("--lambda", dest="lam", type=_positive_float, required=True)
    p.add_argument("--d0", type=float, default=0.0)
    p.add_argument("--a", type=_positive_float, required=True)
    p.set_defaults(func=cmd_waist)

    p = sub.add_parser("verify", help="check the area inequality chain on a corpus")
    p.add_argument("corpus")
    p.add_argument("--out", required=True, help="CSV report path")
    p.add_argument("--mixed-ok", action="store_true", help="analyse mixed-orientation surfaces")
    p.add_argument("--jobs", type=int, default=1)
    _add_spec_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="tabulate symmetric waist area against lambda")
    p.add_argument("--a", type=_positive_float, required=True)
    p.add_argument("--lambda-lo", type=_positive_float, required=True)
    p.add_argument("--lambda-hi", type=_positive_float, required=True)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("mesh", help="export a sampled immersion as a triangle mesh")
    p.add_argument("--g", required=True, help="Gauss map expression, e.g. 'q^1'")
    p.add_argument("--f", type=_positive_float, required=True, help="circumference")
    p.add_argument("--a", type=_positive_float, required=True)
    p.add_argument("--resolution", type=_resolution, default=(64, 256), help="UxV grid")
    p.add_argument("--out", required=True)
    _add_spec_flags(p)
    p.set_defaults(func=cmd_mesh)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"slabarea {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
