"""Compare psi(x, x^{1/u})/x with rho(u), and ln rho(u) with its two leading-order models.

    python scripts/rho_vs_density.py --x 1e6 1e7 --u 1.5 2 2.5 3 4
"""

import argparse
import math

from smoothbound import dickman, smooth
from smoothbound.primes import build_prime_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--x", type=float, nargs="+", default=[1e6, 1e7])
    ap.add_argument("--u", type=float, nargs="+", default=[1.5, 2, 2.5, 3, 4, 5])
    ap.add_argument("--asym-u", type=float, nargs="+", default=[5, 10, 20, 50, 100])
    ap.add_argument("--step", type=float, default=1e-3)
    args = ap.parse_args()

    solver = dickman.RhoSolver(step=args.step, max_u=max(max(args.u), max(args.asym_u), 2))
    table = build_prime_table(math.isqrt(int(max(args.x))) + int(max(args.x) ** (1 / min(args.u))) + 2)
    rec = smooth.PsiRecursion(table)
    print("x,u,y,density,rho,rel_gap")
    for x in sorted(int(v) for v in args.x):
        for u in sorted(args.u):
            y = x ** (1 / u)
            d = rec.psi(smooth.SmoothQuery(x, y)) / x
            r = dickman.rho(solver, u)
            print(f"{x},{u},{y:.3f},{d:.6f},{r:.6f},{(d - r) / r:+.4f}")
    print()
    print("u,ln_rho,ratio_u_ln_u,ratio_u_ln_u_lnln_u,band")
    for u in sorted(args.asym_u):
        lr = dickman.ln_rho(solver, u)
        r1 = lr / dickman.rho_asymptote(u, dickman.Asymptote.UL)
        r2 = lr / dickman.rho_asymptote(u, dickman.Asymptote.UL2) if u > math.e else float("nan")
        l2 = math.log(math.log(u))
        band = 2 * math.log(l2) / l2 if l2 > 1 else float("nan")
        print(f"{u},{lr:.6f},{r1:.5f},{r2:.5f},{band:.5f}")


if __name__ == "__main__":
    main()
