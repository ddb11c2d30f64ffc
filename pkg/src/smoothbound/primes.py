"""Least-prime-factor sieve and the prime queries everything else leans on."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, OutOfRangeError


@dataclass(frozen=True, eq=False)
class PrimeTable:
    limit: int
    smallest_factor: np.ndarray
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def is_prime(self, n: int) -> bool:
        if n < 2:
            return False
        if n > self.limit:
            raise OutOfRangeError(f"{n} exceeds table limit {self.limit}")
        return int(self.smallest_factor[n]) == n

    def pi(self, t: float) -> int:
        """Number of primes <= t."""
        if t > self.limit:
            raise OutOfRangeError(f"pi({t}) needs primes beyond {self.limit}")
        if t < 2:
            return 0
        return int(np.searchsorted(self.primes, math.floor(t), side="right"))

    def nth_prime(self, k: int) -> int:
        """p_k with p_1 = 2."""
        if k < 1 or k > len(self.primes):
            raise OutOfRangeError(f"p_{k} not in table")
        return int(self.primes[k - 1])

    @cached_property
    def largest_factor(self) -> np.ndarray:
        """Largest prime factor of every n <= limit (gpf[1] = 1, gpf[0] = 0).

        Built by repeatedly stripping the least prime factor; at most log2(limit)
        vectorised passes.
        """
        n = self.limit
        gpf = np.zeros(n + 1, dtype=np.int64)
        gpf[1] = 1
        rest = np.arange(n + 1, dtype=np.int64)
        active = np.arange(2, n + 1, dtype=np.int64)
        while active.size:
            p = self.smallest_factor[rest[active]]
            gpf[active] = np.maximum(gpf[active], p)
            rest[active] //= p
            active = active[rest[active] > 1]
        gpf.setflags(write=False)
        return gpf


def build_prime_table(limit: int) -> PrimeTable:
    if limit < 2:
        raise DomainError("prime table needs limit >= 2")
    limit = int(limit)
    lpf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if lpf[p]:
            continue
        seg = lpf[p * p :: p]
        seg[seg == 0] = p
    idx = np.flatnonzero(lpf == 0)
    idx = idx[idx >= 2]
    lpf[idx] = idx
    lpf.setflags(write=False)
    primes = idx.astype(np.int64)
    primes.setflags(write=False)
    return PrimeTable(limit, lpf, primes)


def is_prime_trial(n: int) -> bool:
    """Deterministic trial division; used only to audit the sieve."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def count_primes_in(table: PrimeTable, lo: float, hi: float) -> int:
    """Primes p with lo < p <= hi."""
    if lo < 0 or hi < lo:
        raise DomainError(f"need 0 <= lo <= hi, got ({lo}, {hi}]")
    if hi > table.limit:
        raise OutOfRangeError(f"hi={hi} exceeds table limit {table.limit}")
    return table.pi(hi) - table.pi(lo)


def bracketing_primes(table: PrimeTable, y: float) -> tuple[int, int, int]:
    """(p_m, p_{m+1}, m) with p_m < y <= p_{m+1}."""
    if y <= 2:
        raise DomainError("bracketing needs y > 2")
    if y > table.primes[-1]:
        raise OutOfRangeError(f"y={y} beyond the largest tabulated prime")
    j = int(np.searchsorted(table.primes, y, side="left"))  # first prime >= y
    return int(table.primes[j - 1]), int(table.primes[j]), j


def prime_reciprocal_sum(table: PrimeTable, a: float, b: float) -> float:
    """Sum of 1/p over primes a <= p <= b (closed interval)."""
    if a < 2 or b < a:
        raise DomainError(f"need 2 <= a <= b, got [{a}, {b}]")
    if b > table.limit:
        raise OutOfRangeError(f"b={b} exceeds table limit {table.limit}")
    lo = int(np.searchsorted(table.primes, math.ceil(a), side="left"))
    hi = int(np.searchsorted(table.primes, math.floor(b), side="right"))
    return math.fsum(1.0 / table.primes[lo:hi])


def loglog_estimate(a: float, b: float) -> float:
    """ln ln b - ln ln a, the prime-number-theorem majorant of the reciprocal sum."""
    if a <= 1 or b < a:
        raise DomainError("need 1 < a <= b")
    return math.log(math.log(b)) - math.log(math.log(a))
