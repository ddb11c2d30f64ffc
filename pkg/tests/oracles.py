"""Independent oracles used only by the tests.

Nothing here imports the package's sieve or solvers, so agreement means
something.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import mpmath as mp


def gpf_trial(n: int) -> int:
    """Largest prime factor by trial division (gpf(1) = 1)."""
    best, d = 1, 2
    while d * d <= n:
        while n % d == 0:
            best, n = d, n // d
        d += 1
    return max(best, n) if n > 1 else best


def psi_trial(x: int, y: float) -> int:
    return sum(1 for k in range(1, x + 1) if gpf_trial(k) <= y)


def primes_upto(n: int) -> list[int]:
    """Plain boolean sieve."""
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i, f in enumerate(flags) if f]


@lru_cache(maxsize=4)
def rho_series(umax: int, dps: int = 60, terms: int = 200) -> dict:
    """Taylor coefficients of rho on each [k-1, k] in z = k - u.

    On [1, 2], rho = 1 - ln(2 - z). The delay equation then gives
    a_{i+1} = (b_i + i a_i) / (k (i + 1)) with continuity fixing a_0.
    terms=200 is good to ~1e-55 up to u = 12; use dps=320, terms=1100 for u = 100.
    """
    with mp.workdps(dps):
        a = [1 - mp.log(2)] + [mp.mpf(1) / (i * mp.mpf(2) ** i) for i in range(1, terms)]
        coeffs = {2: a}
        for k in range(3, umax + 1):
            b = coeffs[k - 1]
            new = [mp.mpf(0)] * terms
            for i in range(terms - 1):
                new[i + 1] = (b[i] + i * new[i]) / (k * (i + 1))
            new[0] = b[0] - mp.fsum(new[1:])
            coeffs[k] = new
        return coeffs


def rho_oracle(u: float, umax: int = 12) -> float:
    if u <= 1:
        return 1.0
    coeffs = rho_series(umax)
    with mp.workdps(60):
        k = int(mp.ceil(u))
        z = k - mp.mpf(u)
        return float(mp.polyval(coeffs[k][::-1], z))


# ln rho(u) from rho_series(100, dps=320, terms=1100), cross-checked at dps=360, terms=1250
LN_RHO_REFERENCE = {
    2.5: -2.03776567693885,
    3.0: -3.02395916438616,
    4.0: -5.31629283197838,
    6.0: -10.8374486724933,
    7.3: -14.9206884352844,
    8.0: -17.2475581603842,
    10.0: -24.3095266693792,
    20.0: -65.8740818822307,
    50.0: -221.446360378333,
    100.0: -527.291391035,
}


def lattice_log_sum(coeffs, bases, M: float, squares: bool = False) -> float:
    """ln sum over z >= 0 with sum c_i z_i <= M of prod m_i^z_i / z_i! [e^{z_i^2/m_i}]."""
    ranges = [range(math.floor(M / c + 1e-12) + 1) for c in coeffs]
    total = mp.mpf(0)
    with mp.workdps(40):
        for z in itertools.product(*ranges):
            if sum(c * zi for c, zi in zip(coeffs, z)) > M + 1e-9:
                continue
            t = mp.mpf(1)
            for zi, m in zip(z, bases):
                t *= mp.mpf(m) ** zi / mp.factorial(zi)
                if squares:
                    t *= mp.e ** (mp.mpf(zi) ** 2 / m)
            total += t
        return float(mp.log(total))


def fg_direct(c: float, M: float, kind: str) -> float:
    n = math.floor(c) if kind == "F" else math.ceil(c)
    coeffs = [c - i for i in range(n)]
    bases = [(math.e - 1) * math.exp(d) / d for d in coeffs]
    return lattice_log_sum(coeffs, bases, M, squares=kind == "G")


def nested_count(coeffs, budget: float) -> int:
    """#{z >= 0 : sum c_i z_i < budget} by brute-force nested loops."""
    ranges = [range(int(budget / c) + 2) for c in coeffs]
    return sum(1 for z in itertools.product(*ranges) if sum(c * zi for c, zi in zip(coeffs, z)) < budget)
