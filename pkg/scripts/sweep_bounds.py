"""Sweep ln(psi/x) against the iterated-log bounds and the simplex sandwich.

    python scripts/sweep_bounds.py --x 1e5 1e6 1e7 --y 30 60 100 200 --out sweep.csv
"""

import argparse
import csv
import math
import sys

from smoothbound import iterlog, simplex, smooth
from smoothbound.errors import BoundaryError, DomainError
from smoothbound.primes import build_prime_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--x", type=float, nargs="+", default=[1e5, 1e6, 1e7])
    ap.add_argument("--y", type=float, nargs="+", default=[30, 60, 100, 200])
    ap.add_argument("--a-lower", type=float, default=0.0)
    ap.add_argument("--a-upper", type=float, default=5.0)
    ap.add_argument("--simplex-max", type=float, default=1e5, help="largest x for the simplex sandwich")
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    xs = sorted(int(x) for x in args.x)
    table = build_prime_table(max(int(args.simplex_max), math.isqrt(max(xs)), int(max(args.y))) + 1)
    rec = smooth.PsiRecursion(table)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(["x", "y", "u", "ln_psi_over_x", "iterlog_lower", "iterlog_upper", "a_emp",
                "simplex_lower", "restricted", "simplex_upper"])
    for x in xs:
        for y in sorted(args.y):
            q = iterlog.XYQuery.from_xy(x, y)
            p = rec.psi(smooth.SmoothQuery(x, y))
            row = [x, y, "%.6f" % q.u, "%.6f" % math.log(p / x),
                   "%.6f" % iterlog.ln_psi_lower_bound(q, args.a_lower),
                   "%.6f" % iterlog.ln_psi_upper_bound(q, args.a_upper),
                   "%.6f" % iterlog.empirical_a(q, p)]
            if x <= args.simplex_max:
                try:
                    s = simplex.build_reduced(table, x, y)
                    row += [simplex.psi_lower(s).exact, simplex.psi_restricted_for(table, s), simplex.psi_upper(s).exact]
                except (BoundaryError, DomainError):
                    row += ["", "", ""]
            else:
                row += ["", "", ""]
            w.writerow(row)
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
