"""Command-line front end.

    hypergruss eval 2f1 --a 1 --b 1 --c 2 --z 0.5
    hypergruss check thm-a --b 0.5:5:5 --c-offset 0.5:3:4 --z 0.1:0.9:5 --z0 0.1:0.9:5 -o out.ndjson
    hypergruss golden verify

Exit codes: 0 success, 1 inequality failure or golden mismatch,
2 domain error, 3 non-convergence, 4 I/O error.
"""
from __future__ import annotations

import argparse
import sys

from . import oracle
from .errors import ConvergenceError, DomainError
from .hyperseries import EvalConfig, gauss_2f1, gchf_series, gghf_series, kummer_1f1
from .params import ParamSet
from .quadrature import (
    QuadConfig,
    gauss_2f1_integral,
    gchf_integral,
    gen_beta,
    gghf_integral,
    kummer_1f1_integral,
)
from .sweep import (
    CHECKERS,
    GridSpec,
    fmt_float,
    gruss_instances,
    run_sweep,
    write_report,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3
EXIT_IO = 4

FUNCTIONS = ("2f1", "1f1", "gghf", "gchf", "genbeta")


def _print(label, value):
    if isinstance(value, float):
        value = fmt_float(value)
    print(f"{label:<15} {value}")


def _eval_one(fn, method, args, ecfg, qcfg):
    if fn == "2f1":
        if method == "series":
            return gauss_2f1(args.a, args.b, args.c, args.z, ecfg)
        return gauss_2f1_integral(args.a, args.b, args.c, args.z, qcfg)
    if fn == "1f1":
        if method == "series":
            return kummer_1f1(args.b, args.c, args.z, ecfg)
        return kummer_1f1_integral(args.b, args.c, args.z, qcfg)
    ps = ParamSet(b=args.b, c=args.c, alpha=args.alpha, beta=args.beta, p=args.p, a=args.a)
    if fn == "gghf":
        return gghf_series(ps, args.z, cfg=ecfg) if method == "series" else gghf_integral(ps, args.z, qcfg)
    return gchf_series(ps, args.z, cfg=ecfg) if method == "series" else gchf_integral(ps, args.z, qcfg)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError("missing " + ", ".join("--" + n for n in missing))


def cmd_eval(args) -> int:
    ecfg = EvalConfig(rel_tol=args.rel_tol, max_terms=args.max_terms)
    qcfg = QuadConfig(base_level=args.base_level, max_level=args.max_level, rel_tol=args.quad_tol)
    fn = args.function
    if fn == "genbeta":
        _need(args, "x", "y")
        gb = gen_beta(args.x, args.y, args.alpha, args.beta, args.p, qcfg)
        _print("value", float(gb.raw))
        _print("normalized", float(gb.normalized))
        _print("err_estimate", float(gb.err_estimate))
        _print("method", "quadrature")
        return EXIT_OK
    _need(args, "b", "c", "z")
    if fn in ("2f1", "gghf"):
        _need(args, "a")
    methods = ("series", "integral") if args.method == "both" else (args.method,)
    results = []
    for m in methods:
        r = _eval_one(fn, m, args, ecfg, qcfg)
        results.append(r)
        prefix = f"[{m}] " if len(methods) > 1 else ""
        _print(prefix + "value", float(r.value))
        _print(prefix + "err_estimate", float(r.err_estimate))
        _print(prefix + "method", r.method.value)
        _print(prefix + "work", int(r.terms_used))
        _print(prefix + "converged", str(bool(r.converged)).lower())
    if len(results) == 2:
        _print("difference", float(results[0].value - results[1].value))
    return EXIT_OK


def _grid_from_args(args) -> GridSpec:
    texts = {}
    for axis in ("a", "b", "c", "c_offset", "alpha", "beta", "beta_offset", "p", "z", "z0", "z1", "z2", "z3", "t"):
        texts[axis] = getattr(args, axis, None)
    return GridSpec.from_strings(**texts)


def cmd_check(args) -> int:
    if args.checker == "gruss-random":
        jobs = gruss_instances(args.n, args.trials, args.seed)
    else:
        jobs = list(_grid_from_args(args).points(args.checker))
    report, results = run_sweep(args.checker, jobs, threads=args.threads)
    if args.output:
        try:
            write_report(args.output, args.checker, results, args.format)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_IO
    for line in report.summary_lines():
        print(line)
    if report.failed:
        return EXIT_FAIL
    if report.errors:
        return EXIT_CONVERGENCE
    return EXIT_OK


def cmd_golden(args) -> int:
    path = args.file or oracle.DEFAULT_GOLDEN_PATH
    try:
        if args.action == "mint":
            records = oracle.mint(path, resolution_scale=args.resolution_scale)
            for rec in records:
                print(rec.line())
            return EXIT_OK
        outcomes = oracle.verify(path, resolution_scale=args.resolution_scale)
    except OSError as exc:
        print(f"error: golden file: {exc}", file=sys.stderr)
        return EXIT_IO
    bad = 0
    for o in outcomes:
        status = "ok" if o.ok else "MISMATCH"
        diff = o.recomputed - o.record.value
        print(f"{status:<9}{o.record.kind:<9} z={fmt_float(o.record.z)}  diff={fmt_float(diff)}  bound={fmt_float(o.record.bound)}")
        bad += not o.ok
    print(f"{len(outcomes) - bad}/{len(outcomes)} records match")
    return EXIT_FAIL if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypergruss",
        description="Evaluate generalized hypergeometric functions and certify their inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a function at one point")
    ev.add_argument("function", choices=FUNCTIONS)
    for name in ("a", "b", "c", "z", "x", "y"):
        ev.add_argument(f"--{name}", type=float)
    ev.add_argument("--alpha", type=float, default=1.0)
    ev.add_argument("--beta", type=float, default=2.0)
    ev.add_argument("--p", type=float, default=0.0)
    ev.add_argument("--method", choices=("series", "integral", "both"), default="series")
    ev.add_argument("--rel-tol", type=float, default=EvalConfig.rel_tol)
    ev.add_argument("--max-terms", type=int, default=EvalConfig.max_terms)
    ev.add_argument("--base-level", type=int, default=QuadConfig.base_level)
    ev.add_argument("--max-level", type=int, default=QuadConfig.max_level)
    ev.add_argument("--quad-tol", type=float, default=QuadConfig.rel_tol)
    ev.set_defaults(handler=cmd_eval)

    ck = sub.add_parser("check", help="run an inequality checker over a parameter grid")
    ck.add_argument("checker", choices=CHECKERS)
    rng_help = "range lo:hi:steps or a single value"
    for name in ("a", "b", "c", "alpha", "beta", "p", "z", "z0", "z1", "z2", "z3", "t"):
        ck.add_argument(f"--{name}", help=rng_help)
    ck.add_argument("--c-offset", dest="c_offset", help="c = b + offset; " + rng_help)
    ck.add_argument("--beta-offset", dest="beta_offset", help="beta = alpha + offset; " + rng_help)
    ck.add_argument("--n", type=int, default=100, help="gruss-random: largest sequence length")
    ck.add_argument("--trials", type=int, default=1000, help="gruss-random: number of instances")
    ck.add_argument("--seed", type=int, default=0, help="gruss-random: RNG seed")
    ck.add_argument("-o", "--output", help="report file (one record per inequality instance)")
    ck.add_argument("--format", choices=("json", "csv"), default="json")
    ck.add_argument("--threads", type=int, help="worker threads (default: $HYPERGRUSS_THREADS)")
    ck.set_defaults(handler=cmd_check)

    gd = sub.add_parser("golden", help="mint or verify the reference value file")
    gd.add_argument("action", choices=("mint", "verify"))
    gd.add_argument("file", nargs="?", help="golden file (default: the packaged one)")
    gd.add_argument("--resolution-scale", type=int, default=1, help="multiply every recorded resolution")
    gd.set_defaults(handler=cmd_golden)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ConvergenceError, ArithmeticError) as exc:
        print(f"error: no convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
