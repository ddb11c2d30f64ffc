"""Command-line front end.

stdout carries data only (JSON for single computations, CSV for sweeps), so the
same flags always give the same bytes. Wall-clock timing goes to stderr, or into
a "timing" key when --timing is passed. Exit codes: 0 ok, 1 failed acceptance
criterion, 2 usage or domain error, 3 resource limit (table too small, memo cap).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from typing import Sequence

from . import acceptance, bertrand, dickman, iterlog, recursion, simplex, smooth
from .errors import DomainError, OutOfRangeError, ResourceError
from .primes import build_prime_table

ENV_LIMIT = "SMOOTHBOUND_TABLE_LIMIT"
SCHEMA = "v1"
BOUNDS_COLUMNS = ("schema", "x", "y", "u", "exact", "lower", "upper", "empirical_a", "status")
RECURSION_COLUMNS = ("schema", "c", "M", "ln_F", "ln_G", "lower_thm", "upper_thm", "status")


class UsageError(Exception):
    pass


def int_arg(text: str) -> int:
    """Integer flag that also accepts integral scientific notation such as 1e6."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not v.is_integer():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def fmt(v) -> str:
    """CSV cell: 17 significant digits for floats, empty for missing."""
    if v is None:
        return ""
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _table_limit(args, needed: int) -> int:
    if args.table_limit is not None:
        return args.table_limit
    env = os.environ.get(ENV_LIMIT)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_LIMIT}={env!r} is not an integer") from None
    return max(needed, 16)


def _emit_json(obj: dict, args, seconds: float) -> None:
    if args.timing:
        obj = {**obj, "timing": {"seconds": seconds}}
    else:
        print(json.dumps({"timing": {"seconds": seconds}}), file=sys.stderr)
    print(json.dumps(obj, default=str))


def _writer():
    return csv.writer(sys.stdout, lineterminator="\r\n")


# -- commands -------------------------------------------------------------------


def cmd_psi(args) -> int:
    t = time.perf_counter()
    conv = smooth.Convention(args.convention)
    q = smooth.SmoothQuery(args.x, args.y, conv)
    if args.method == "naive":
        need = args.x
    else:
        need = max(math.isqrt(args.x), min(math.floor(args.y), args.x)) + 1
    table = build_prime_table(_table_limit(args, need))
    if args.method == "naive":
        value = smooth.psi_naive(table, q)
    else:
        value = smooth.psi_recursive(table, q)
    out = {"psi": value, "x": args.x, "y": args.y, "method": args.method, "convention": conv.value}
    _emit_json(out, args, time.perf_counter() - t)
    return 0


def _bounds_row(table, rec, x: int, y: float, args) -> list:
    row = {"schema": SCHEMA, "x": x, "y": y, "u": None, "exact": None, "lower": None, "upper": None,
           "empirical_a": None, "status": "ok"}
    notes = []
    try:
        q = iterlog.XYQuery.from_xy(x, y)
    except DomainError as e:
        row["status"] = f"domain: {e}"
        return [fmt(row[c]) for c in BOUNDS_COLUMNS]
    row["u"] = q.u
    psi_exact = None
    if x <= args.exact_max:
        try:
            psi_exact = rec.psi(smooth.SmoothQuery(x, y))
            row["exact"] = math.log(psi_exact / x)
            row["empirical_a"] = iterlog.empirical_a(q, psi_exact)
        except (ResourceError, OutOfRangeError) as e:
            notes.append(f"exact skipped: {e}")
    else:
        notes.append("exact skipped: x above --exact-max")
    try:
        if args.evaluator == "iterlog":
            row["lower"] = iterlog.ln_psi_lower_bound(q, args.a_lower, args.theta)
            row["upper"] = iterlog.ln_psi_upper_bound(q, args.a_upper, not args.no_slack, args.nu, args.beta)
        else:
            s = simplex.build_reduced(table, x, y)
            row["lower"] = simplex.psi_lower(s).log - math.log(x)
            row["upper"] = simplex.psi_upper(s).log - math.log(x)
    except (DomainError, ResourceError) as e:
        notes.append(f"bounds: {e}")
    if notes:
        row["status"] = "; ".join(notes)
    return [fmt(row[c]) for c in BOUNDS_COLUMNS]


def cmd_bounds(args) -> int:
    t = time.perf_counter()
    xs, ys = sorted(set(args.x)), sorted(set(args.y))
    need = max([math.isqrt(min(x, args.exact_max)) for x in xs] + [math.floor(y) for y in ys]) + 1
    table = build_prime_table(_table_limit(args, need))
    rec = smooth.PsiRecursion(table)
    w = _writer()
    w.writerow(BOUNDS_COLUMNS)
    for x in xs:
        for y in ys:
            w.writerow(_bounds_row(table, rec, x, y, args))
    print(json.dumps({"timing": {"seconds": time.perf_counter() - t}}), file=sys.stderr)
    return 0


def cmd_rho(args) -> int:
    t = time.perf_counter()
    us = sorted(set(args.u))
    solver = dickman.RhoSolver(step=args.step, max_u=max(2.0, math.ceil(max(us))))
    rows = [{"u": u, "rho": dickman.rho(solver, u), "ln_rho": dickman.ln_rho(solver, u) if u > 0 else 0.0}
            for u in us]
    out = rows[0] if len(rows) == 1 else {"values": rows}
    _emit_json(out, args, time.perf_counter() - t)
    return 0


def cmd_bertrand(args) -> int:
    t = time.perf_counter()
    table = build_prime_table(_table_limit(args, math.ceil(args.gamma * args.hi) + 2))
    rep = bertrand.scan(table, args.lo, args.hi, args.gamma)
    out = {"gamma": args.gamma, "lo": args.lo, "hi": args.hi, "checked": rep.checked, "failures": rep.failures}
    _emit_json(out, args, time.perf_counter() - t)
    return 0


def cmd_recursion(args) -> int:
    t = time.perf_counter()
    params = recursion.BoundParams(a=args.a, a_upper=args.a_upper, alpha=args.alpha, beta=args.beta,
                                   theta=args.theta, nu=args.nu)
    solver = recursion.AuxSolver()
    w = _writer()
    w.writerow(RECURSION_COLUMNS)
    for c in sorted(set(args.c)):
        for M in sorted(set(args.M)):
            row = {"schema": SCHEMA, "c": c, "M": M, "ln_F": None, "ln_G": None, "lower_thm": None,
                   "upper_thm": None, "status": "ok"}
            notes = []
            try:
                p = recursion.AuxProblem(c, M)
                row["ln_F"] = solver.f(p).log
                row["ln_G"] = solver.g(p).log
            except (DomainError, ResourceError) as e:
                notes.append(f"sum: {e}")
            for key, fn in (("lower_thm", recursion.lower_bound_thm), ("upper_thm", recursion.upper_bound_thm)):
                try:
                    row[key] = fn(c, M, params)
                except (DomainError, ValueError) as e:
                    notes.append(f"{key}: {e}")
            if notes:
                row["status"] = "; ".join(notes)
            w.writerow([fmt(row[k]) for k in RECURSION_COLUMNS])
    print(json.dumps({"timing": {"seconds": time.perf_counter() - t}}), file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    results = acceptance.run_all(args.scale)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = acceptance.summary(results)
    timing = out.pop("timing")
    _emit_json(out, args, sum(timing.values()))
    if out["failed"]:
        print("failed: " + ", ".join(out["failed"]), file=sys.stderr)
        return 1
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smoothbound", description="Smooth-number counts, bounds and checks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table-limit", type=int, default=None,
                        help=f"sieve limit (default: ${ENV_LIMIT}, else the smallest that suffices)")
    common.add_argument("--timing", action="store_true", help="put wall-clock timing in the JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("psi", parents=[common], help="count y-smooth integers up to x")
    s.add_argument("--x", type=int_arg, required=True)
    s.add_argument("--y", type=float, required=True)
    s.add_argument("--method", choices=("naive", "recursive"), default="recursive")
    s.add_argument("--convention", choices=[c.value for c in smooth.Convention], default="inclusive")
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("bounds", parents=[common], help="CSV sweep of ln(psi/x) with lower/upper bounds")
    s.add_argument("--x", type=int_arg, nargs="+", required=True)
    s.add_argument("--y", type=float, nargs="+", required=True)
    s.add_argument("--evaluator", choices=("iterlog", "simplex"), default="iterlog")
    s.add_argument("--a-lower", type=float, default=0.0)
    s.add_argument("--a-upper", type=float, default=5.0)
    s.add_argument("--no-slack", action="store_true", help="drop the ln y ln u slack from the upper bound")
    s.add_argument("--theta", type=float, default=None, help="enforce the lower-bound domain at this theta")
    s.add_argument("--nu", type=float, default=None, help="with --beta, enforce the upper-bound domain")
    s.add_argument("--beta", type=float, default=None)
    s.add_argument("--exact-max", type=int_arg, default=10**9, help="skip exact psi above this x")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("rho", parents=[common], help="Dickman rho")
    s.add_argument("--u", type=float, nargs="+", required=True)
    s.add_argument("--step", type=float, default=1e-3)
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("bertrand", parents=[common], help="scan y in [lo, hi] for a prime in (y, gamma y)")
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--lo", type=int_arg, required=True)
    s.add_argument("--hi", type=int_arg, required=True)
    s.set_defaults(func=cmd_bertrand)

    s = sub.add_parser("recursion", parents=[common], help="CSV of ln F, ln G and the lower/upper bound exponents")
    s.add_argument("--c", type=float, nargs="+", required=True)
    s.add_argument("--M", type=float, nargs="+", required=True)
    s.add_argument("--a", type=float, default=1.5)
    s.add_argument("--a-upper", type=float, default=recursion.A_STAR + 1.0)
    s.add_argument("--alpha", type=float, default=5.0)
    s.add_argument("--beta", type=float, default=0.4)
    s.add_argument("--theta", type=float, default=0.6)
    s.add_argument("--nu", type=float, default=1.4)
    s.set_defaults(func=cmd_recursion)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    s.add_argument("--scale", choices=acceptance.SCALES, default="smoke")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on bad flags
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ResourceError, OutOfRangeError, MemoryError) as e:
        print(f"resource error: {e}", file=sys.stderr)
        return 3
    except DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
