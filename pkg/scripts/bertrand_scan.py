"""Exhaustive scan for primes in (y, gamma y), plus the smooth-count model ratio.

    python scripts/bertrand_scan.py --gammas 1.01 1.05 1.1 1.25 1.5 2 --hi 1e6
"""

import argparse
import math

from smoothbound import bertrand
from smoothbound.primes import build_prime_table
from smoothbound.recursion import A_STAR


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--gammas", type=float, nargs="+", default=[1.01, 1.05, 1.1, 1.25, 1.5, 2.0])
    ap.add_argument("--lo", type=int, default=2)
    ap.add_argument("--hi", type=float, default=1e6)
    ap.add_argument("--model-y", type=float, nargs="+", default=[1e2, 1e3, 1e4, 1e5])
    args = ap.parse_args()

    hi = int(args.hi)
    table = build_prime_table(int(max(args.gammas) * hi) + 2)
    print("gamma,checked,failures,last_failure")
    for g in sorted(args.gammas):
        rep = bertrand.scan(table, args.lo, hi, g)
        print(f"{g},{rep.checked},{len(rep.failures)},{rep.failures[-1] if rep.failures else ''}")
    print()
    print("y,gamma,lnx_where_model_ratio_exceeds_2")
    for y in args.model_y:
        lnx = bertrand.model_doubling_lnx(y, 1.6, A_STAR)
        print(f"{y:g},1.6,{'' if lnx is None else '%.3f' % lnx}")


if __name__ == "__main__":
    main()
