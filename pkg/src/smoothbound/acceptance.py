"""Exit criteria, runnable from the CLI (``smoothbound verify``) and from pytest.

Each check returns a CriterionResult; nothing here relaxes a tolerance to make
a check pass. Two scales: ``desk`` runs every criterion at its stated size,
``smoke`` shrinks the grids for a quick sanity pass.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import bertrand, dickman, iterlog, recursion, simplex, smooth
from .primes import PrimeTable, build_prime_table

# rho(3) from an independent 300-digit Taylor-series evaluation of the delay equation
RHO_3 = 0.0486083882911316
SCALES = ("smoke", "desk")


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number:2d} {self.name} ({self.seconds:.2f}s)"


@lru_cache(maxsize=2)
def shared_table(limit: int = 2_000_100) -> PrimeTable:
    return build_prime_table(limit)


def _timed(number: int, name: str, fn: Callable[[], tuple[bool, dict]]) -> CriterionResult:
    t = time.perf_counter()
    ok, detail = fn()
    return CriterionResult(number, name, bool(ok), detail, time.perf_counter() - t)


# -- 1 --------------------------------------------------------------------------


def oracle_equivalence(scale: str = "desk") -> CriterionResult:
    xmax = 20_000 if scale == "desk" else 2_000

    def run():
        table = shared_table()
        mismatches = []
        for conv in smooth.Convention:
            rec = smooth.PsiRecursion(table)
            fixed = {y: smooth.psi_naive_prefix(table, y, conv) for y in (2, 3, 5, 10)}
            for x in range(1, xmax + 1):
                for y in (2, 3, 5, 10, math.isqrt(x), x):
                    if y < 2:
                        continue
                    q = smooth.SmoothQuery(x, y, conv)
                    naive = int(fixed[y][x]) if y in fixed else smooth.psi_naive(table, q)
                    if rec.psi(q) != naive:
                        mismatches.append((x, y, conv.value))
        big = smooth.SmoothQuery(10**6, 100)
        big_ok = smooth.psi_recursive(table, big) == smooth.psi_naive(table, big)
        return not mismatches and big_ok, {"xmax": xmax, "mismatches": mismatches[:10], "big_check": big_ok}

    return _timed(1, "oracle equivalence psi_recursive == psi_naive", run)


# -- 2 --------------------------------------------------------------------------


def trivial_range(scale: str = "desk") -> CriterionResult:
    xmax = 10_000 if scale == "desk" else 1_000

    def run():
        table = shared_table()
        rec = smooth.PsiRecursion(table)
        bad = []
        for x in range(1, xmax + 1):
            for y in sorted({max(x, 2), x + 0.5, 2 * x + 3} - {1.5}):
                q = smooth.SmoothQuery(x, y)
                if rec.psi(q) != x or (y <= table.limit and smooth.psi_naive(table, q) != x):
                    bad.append((x, y))
        return not bad, {"xmax": xmax, "violations": bad[:10]}

    return _timed(2, "psi(x, y) = x for y >= x", run)


# -- 3 --------------------------------------------------------------------------


def half_smooth(scale: str = "desk") -> CriterionResult:
    xs = (10**3, 10**4, 10**5, 10**6)

    def run():
        table = shared_table()
        floor = 1 - math.log(2)  # ln(e/2)
        vals = {x: smooth.half_smooth_fraction(table, x) for x in xs}
        return all(v > floor for v in vals.values()), {"fractions": vals, "floor": floor}

    return _timed(3, "psi(x, sqrt x)/x > ln(e/2)", run)


# -- 4 --------------------------------------------------------------------------


def dickman_values(scale: str = "desk") -> CriterionResult:
    def run():
        table = shared_table()
        solver = dickman.RhoSolver(step=1e-3, max_u=10)
        r2 = dickman.rho(solver, 2.0)
        r3 = dickman.rho(solver, 3.0)
        ok2 = abs(r2 - (1 - math.log(2))) <= 1e-6
        ok3 = abs(r3 - RHO_3) <= 1e-5
        dens = {}
        ok_d = True
        for u in (2, 3):
            y = 10 ** (6 / u)
            frac = smooth.psi(table, 10**6, y) / 10**6
            rho_u = dickman.rho(solver, u)
            rel = abs(frac - rho_u) / rho_u
            dens[u] = {"y": y, "density": frac, "rho": rho_u, "rel_gap": rel}
            ok_d &= rel <= 0.25
        return ok2 and ok3 and ok_d, {"rho2": r2, "rho3": r3, "density": dens}

    return _timed(4, "Dickman rho values and density match", run)


# -- 5 --------------------------------------------------------------------------


def rho_asymptotics(scale: str = "desk") -> CriterionResult:
    def run():
        solver = dickman.RhoSolver(step=1e-3, max_u=100)
        rows = {}
        ok = True
        for u in (20, 50, 100):
            lr = dickman.ln_rho(solver, u)
            r2 = lr / dickman.rho_asymptote(u, dickman.Asymptote.UL2)
            r1 = lr / dickman.rho_asymptote(u, dickman.Asymptote.UL)
            l2 = math.log(math.log(u))
            band = 2 * math.log(l2) / l2
            in_band = abs(r2 - 1) <= band
            beats = abs(r2 - 1) < abs(r1 - 1)
            rows[u] = {"ln_rho": lr, "ul2_err": abs(r2 - 1), "band": band, "ul_err": abs(r1 - 1),
                       "in_band": in_band, "ul2_beats_ul": beats}
            ok &= in_band and beats
        return ok, rows

    return _timed(5, "ln rho vs -u(ln u + ln ln u)", run)


# -- 6 --------------------------------------------------------------------------


def simplex_sandwich(scale: str = "desk") -> CriterionResult:
    xs = (10**4, 10**5) if scale == "desk" else (10**4,)

    def run():
        table = shared_table()
        rows = []
        ok = True
        for x in xs:
            for y in (30, 60, 120):
                s = simplex.build_reduced(table, x, y)
                lo = simplex.psi_lower(s, simplex.LowerForm.EXACT_K).exact
                up = simplex.psi_upper(s, simplex.UpperForm.EXACT_K).exact
                mid = simplex.psi_restricted_for(table, s)
                good = lo <= mid <= up
                ok &= good
                rows.append({"x": x, "y": y, "r": s.r, "lower": lo, "restricted": mid, "upper": up, "ok": good})
        return ok, {"rows": rows}

    return _timed(6, "reduced simplex sandwich", run)


# -- 7 --------------------------------------------------------------------------


def grid_max_h(c: float, M: float, gamma: float, a: float, n: int = 2001) -> float:
    """Maximum of H on [0, M/c]: dense grid, then golden section inside the best cell."""
    u = M / c
    zs = np.linspace(0.0, u, n)
    hs = [recursion.h_function(float(z), c, M, gamma, a) for z in zs]
    k = int(np.argmax(hs))
    lo, hi = float(zs[max(k - 1, 0)]), float(zs[min(k + 1, n - 1)])
    g = (math.sqrt(5) - 1) / 2
    for _ in range(200):
        if hi - lo < 1e-14 * max(1.0, u):
            break
        m1, m2 = hi - g * (hi - lo), lo + g * (hi - lo)
        if recursion.h_function(m1, c, M, gamma, a) < recursion.h_function(m2, c, M, gamma, a):
            lo = m1
        else:
            hi = m2
    z = 0.5 * (lo + hi)
    return max(max(hs), recursion.h_function(z, c, M, gamma, a))


def h_kernel(scale: str = "desk", seed: int = 20240607) -> CriterionResult:
    n_inst = 100 if scale == "desk" else 20

    def run():
        rng = random.Random(seed)
        worst = 0.0
        for _ in range(n_inst):
            c = rng.uniform(3, 50)
            M = rng.uniform(c, 10 * c)
            gamma = rng.uniform(0, 5)
            a = rng.uniform(1, recursion.A_STAR)
            closed = recursion.h_max_closed(c, M, gamma, a).maximum
            grid = grid_max_h(c, M, gamma, a)
            worst = max(worst, abs(closed - grid))
        hm = recursion.h_max_closed(10.0, 50.0, 1.3, 1.3)
        exact = hm.t0 == 0.5 and hm.f_gamma == math.log(2)
        return worst <= 1e-8 and exact, {"worst_abs_gap": worst, "t0_half_and_f_ln2": exact}

    return _timed(7, "H kernel closed-form maximum", run)


# -- 8 --------------------------------------------------------------------------


def direct_sum(c: float, M: float, kind: str) -> float:
    """ln of the weighted lattice sum by brute-force enumeration (independent of the recursion)."""
    n = math.floor(c) if kind == "F" else math.ceil(c)
    coeffs = [c - i for i in range(n)]
    bases = [recursion.base_weight(c, i) for i in range(n)]
    ranges = [range(math.floor(M / ci + 1e-12) + 1) for ci in coeffs]
    logs = []
    for z in itertools.product(*ranges):
        if sum(ci * zi for ci, zi in zip(coeffs, z)) > M + 1e-9:
            continue
        w = 0.0
        for zi, m in zip(z, bases):
            w += zi * math.log(m) - math.lgamma(zi + 1)
            if kind == "G":
                w += zi * zi / m
        logs.append(w)
    top = max(logs)
    return top + math.log(math.fsum(math.exp(l - top) for l in logs))


def fg_recursions(scale: str = "desk") -> CriterionResult:
    def run():
        solver = recursion.AuxSolver()
        worst = 0.0
        g_ge_f = True
        for c in (2.5, 3.5, 4.5):
            for M in (3, 6, 9):
                p = recursion.AuxProblem(c, M)
                lf, lg = solver.f(p).log, solver.g(p).log
                worst = max(worst, abs(math.expm1(lf - direct_sum(c, M, "F"))))
                worst = max(worst, abs(math.expm1(lg - direct_sum(c, M, "G"))))
                g_ge_f &= lg >= lf
        p = recursion.AuxProblem(5.0, 10.0)
        lf, lg = solver.f(p).log, solver.g(p).log
        g_lt_2f = lg < lf + math.log(2)
        detail = {"worst_rel_gap": worst, "g_ge_f": g_ge_f, "ln_F_5_10": lf, "ln_G_5_10": lg,
                  "G_over_F_5_10": math.exp(lg - lf), "g_lt_2f": g_lt_2f}
        return worst <= 1e-9 and g_ge_f and g_lt_2f, detail

    return _timed(8, "F/G recursion vs direct sum, G < 2F", run)


# -- 9 --------------------------------------------------------------------------


def descent_closure(scale: str = "desk", seed: int = 7) -> CriterionResult:
    def run():
        rng = random.Random(seed)
        half = recursion.BoundParams(alpha=5.0)
        bad_half = []
        for _ in range(50):
            c = rng.uniform(100, 200)
            M = math.exp(rng.uniform(1.0 + 1e-9, c / 2))
            assert recursion.in_domain(c, M, 0.5)
            st = recursion.descent_step(c, M, half)
            if not recursion.in_domain(st.c_next, st.M_next, 0.5):
                bad_half.append((c, M))
        beta = 0.05
        small = recursion.BoundParams(alpha=recursion.alpha_for_beta(beta), beta=beta)
        bad_beta = []
        for _ in range(50):
            c = rng.uniform(100, 200)
            M = math.exp(rng.uniform(1.0 + 1e-9, beta * c))
            st = recursion.descent_step(c, M, small)
            if not recursion.in_domain(st.c_next, st.M_next, beta):
                bad_beta.append((c, M))
        return not bad_half and not bad_beta, {"d_half_failures": bad_half, "d_beta_failures": bad_beta,
                                               "alpha_beta": small.alpha}

    return _timed(9, "descent step keeps D_beta", run)


# -- 10 -------------------------------------------------------------------------


def main_sandwich(scale: str = "desk") -> CriterionResult:
    xs = (10**5, 10**6, 10**7) if scale == "desk" else (10**5, 10**6)

    def run():
        table = shared_table()
        rec = smooth.PsiRecursion(table)
        rows, a_vals = [], []
        ok = True
        for x in xs:
            for y in (60, 100, 200):
                q = iterlog.XYQuery.from_xy(x, y)
                p = rec.psi(smooth.SmoothQuery(x, y))
                exact = math.log(p / x)
                lo = iterlog.ln_psi_lower_bound(q, 0.0)
                up = iterlog.ln_psi_upper_bound(q, 5.0, with_slack=True)
                a = iterlog.empirical_a(q, p)
                a_vals.append(a)
                good = lo <= exact <= up
                ok &= good
                rows.append({"x": x, "y": y, "psi": p, "lower": lo, "exact": exact, "upper": up, "a_emp": a})
        spread = max(a_vals) - min(a_vals)
        return ok and spread < 1.5, {"rows": rows, "a_spread": spread}

    return _timed(10, "iterated-log sandwich and a_emp spread", run)


# -- 11 -------------------------------------------------------------------------


def bertrand_scan(scale: str = "desk") -> CriterionResult:
    top = 10**6 if scale == "desk" else 10**5

    def run():
        table = shared_table()
        r15 = bertrand.scan(table, 10, top, 1.5)
        r2 = bertrand.scan(table, 2, top, 2.0)
        return r15.ok and r2.ok, {"gamma_1_5_failures": r15.failures[:10], "gamma_2_failures": r2.failures[:10],
                                  "checked": r15.checked + r2.checked}

    return _timed(11, "primes in (y, 1.5y) and (y, 2y)", run)


# -- 12 -------------------------------------------------------------------------


def identities(scale: str = "desk", seed: int = 12) -> CriterionResult:
    def run():
        rng = random.Random(seed)
        worst_u = worst_forms = 0.0
        for _ in range(1000):
            ln_y = rng.uniform(1.5, 60)
            ln_x = ln_y * rng.uniform(1.05, 50)
            if ln_x <= math.e + 1e-9:
                continue
            q = iterlog.XYQuery(ln_x, ln_y)
            worst_u = max(worst_u, abs(q.lx(2) - q.ly(2) - math.log(q.u)))
            if q.ln_x > math.e**math.e and q.ln_y > math.e:
                f1, f2 = iterlog.lower_forms(q, rng.uniform(0, 3))
                worst_forms = max(worst_forms, abs(f1 - f2) / max(1.0, abs(f1)))
        table = shared_table()
        worst_rt = 0.0
        for x in (10**5, 10**6):
            for y in (60, 100, 200):
                q = iterlog.XYQuery.from_xy(x, y)
                p = smooth.psi(table, x, y)
                back = iterlog.psi_model(q, iterlog.empirical_a(q, p))
                worst_rt = max(worst_rt, abs(back - math.log(p)) / max(1.0, math.log(p)))
        ok = worst_u < 1e-12 and worst_forms < 1e-10 and worst_rt < 1e-10
        return ok, {"ln2x_minus_ln2y_minus_lnu": worst_u, "form_gap": worst_forms, "round_trip": worst_rt}

    return _timed(12, "algebraic identities", run)


CRITERIA: tuple[Callable[..., CriterionResult], ...] = (
    oracle_equivalence, trivial_range, half_smooth, dickman_values, rho_asymptotics, simplex_sandwich,
    h_kernel, fg_recursions, descent_closure, main_sandwich, bertrand_scan, identities,
)


def run_all(scale: str = "desk") -> list[CriterionResult]:
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {SCALES}")
    return [fn(scale) for fn in CRITERIA]


def summary(results: list[CriterionResult]) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "failed": [f"{r.number}:{r.name}" for r in results if not r.passed],
        "criteria": [{k: v for k, v in asdict(r).items() if k != "seconds"} for r in results],
        "timing": {str(r.number): r.seconds for r in results},
    }
