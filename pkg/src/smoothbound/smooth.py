"""Exact counts of y-smooth integers.

Two independent routes: a brute-force count over the largest-prime-factor
table, and the prime-power recursion

    psi(x, p_k) = sum_{j >= 0} psi(x / p_k^j, p_{k-1}),

unrolled along its j = 0 chain so recursion depth stays at log2(x).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OutOfRangeError, ResourceError
from .primes import PrimeTable


class Convention(enum.Enum):
    INCLUSIVE = "inclusive"  # gpf(k) <= y, k = 1 counted
    STRICT = "strict"  # gpf(k) < y, k = 1 counted
    FROM_TWO = "from_two"  # gpf(k) <= y, 2 <= k <= x


@dataclass(frozen=True)
class SmoothQuery:
    x: int
    y: float
    convention: Convention = Convention.INCLUSIVE

    def __post_init__(self):
        if self.x < 1:
            raise DomainError("x must be >= 1")
        if self.y < 2:
            raise DomainError("y must be >= 2")


def _prime_bound(y: float, convention: Convention) -> int:
    """Largest integer a prime factor may equal under the convention."""
    if convention is Convention.STRICT:
        return math.ceil(y) - 1
    return math.floor(y)


def _finish(count_inclusive: int, x: int, convention: Convention) -> int:
    if convention is Convention.FROM_TWO and x >= 1:
        return count_inclusive - 1
    return count_inclusive


def psi_naive(table: PrimeTable, q: SmoothQuery) -> int:
    """Brute force: count k <= x whose largest prime factor is admissible."""
    if q.x > table.limit:
        raise OutOfRangeError(f"x={q.x} exceeds table limit {table.limit}")
    bound = _prime_bound(q.y, q.convention)
    gpf = table.largest_factor[1 : q.x + 1]
    return _finish(int(np.count_nonzero(gpf <= bound)), q.x, q.convention)


def psi_naive_prefix(table: PrimeTable, y: float, convention=Convention.INCLUSIVE) -> np.ndarray:
    """psi(x, y) for every x in 0..limit at once (index = x)."""
    bound = _prime_bound(y, convention)
    out = np.zeros(table.limit + 1, dtype=np.int64)
    np.cumsum(table.largest_factor[1:] <= bound, out=out[1:])
    if convention is Convention.FROM_TWO:
        out[1:] -= 1
    return out


class PsiRecursion:
    """Memoised prime-power recursion over one PrimeTable.

    Memo keys are (floor(x), k) and values are INCLUSIVE counts, so a single
    instance may be shared by any number of queries on the same table.
    """

    def __init__(self, table: PrimeTable, max_states: int = 5_000_000):
        self.table = table
        self.max_states = max_states
        self.memo: dict[tuple[int, int], int] = {}
        self._p = table.primes.tolist()

    def count(self, n: int, k: int) -> int:
        """psi(n, p_k), INCLUSIVE, for integer n >= 0 and k >= 0 (p_0 := 1)."""
        if n <= 0:
            return 0
        if k == 0 or n == 1:
            return 1
        p = self._p
        if p[k - 1] >= n:
            return n
        if k == 1:
            return n.bit_length()  # floor(log2 n) + 1
        key = (n, k)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        # primes p_i <= sqrt(n) recurse; larger ones contribute floor(n / p_i)
        ks = min(k, self.table.pi(min(math.isqrt(n), self.table.limit)))
        total = n.bit_length()
        for i in range(2, ks + 1):
            pi = p[i - 1]
            m = n // pi
            while m:
                total += self.count(m, i - 1)
                m //= pi
        if k > ks:
            total += int((n // self.table.primes[ks:k]).sum())
        if len(self.memo) >= self.max_states:
            raise ResourceError(
                f"psi recursion memo exceeded {self.max_states} states", partial=len(self.memo)
            )
        self.memo[key] = total
        return total

    def psi(self, q: SmoothQuery) -> int:
        bound = _prime_bound(q.y, q.convention)
        if bound >= q.x:
            return _finish(q.x, q.x, q.convention)
        if bound > self.table.limit:
            raise OutOfRangeError(f"y={q.y} needs primes beyond {self.table.limit}")
        k = self.table.pi(bound)
        return _finish(self.count(q.x, k), q.x, q.convention)


def psi_recursive(table: PrimeTable, q: SmoothQuery, memo: PsiRecursion | None = None) -> int:
    """psi via the prime-power recursion; pass ``memo`` to share work across calls."""
    solver = memo if memo is not None else PsiRecursion(table)
    return solver.psi(q)


def psi(table: PrimeTable, x: int, y: float, convention=Convention.INCLUSIVE) -> int:
    return psi_recursive(table, SmoothQuery(x, y, convention))


def half_smooth_fraction(table: PrimeTable, x: int) -> float:
    """psi(x, sqrt x) / x, counting k = 1 and prime factors up to sqrt(x)."""
    if x < 4:
        raise DomainError("half_smooth_fraction needs x >= 4")
    if x > table.limit:
        raise OutOfRangeError(f"x={x} exceeds table limit {table.limit}")
    return psi_naive(table, SmoothQuery(x, math.isqrt(x))) / x


@dataclass(frozen=True)
class SqrtUpper:
    """Upper bounds on psi(x, y) at y = alpha (ln x)^2, all in log form."""

    p_k: int
    k: int
    log_product: float  # ln of sqrt(x) * base / prod_{j=2..k} (1 - p_j^{-1/2})
    log_exp_form: float  # ln of sqrt(x) * exp(C sqrt(p_k) / ln p_k)
    C: float
    base: float


# sup over real x >= 1 of (floor(log2 x) + 1) / sqrt(x), attained at x = 4
INCLUSIVE_BASE = 1.5


def _log_product_factors(table: PrimeTable, k: int) -> float:
    # ln of 1 / prod_{j=2..k} (1 - 1/sqrt(p_j))
    ps = table.primes[1:k].astype(float)
    return -float(np.log1p(-1.0 / np.sqrt(ps)).sum())


def sqrt_upper_constant(table: PrimeTable, base: float = INCLUSIVE_BASE) -> float:
    """Smallest C making the exponential form dominate the product form for every
    p_k in the table."""
    ps = table.primes.astype(float)
    logs = math.log(base) - np.concatenate(([0.0], np.cumsum(np.log1p(-1.0 / np.sqrt(ps[1:])))))
    return float(np.max(logs * np.log(ps) / np.sqrt(ps)))


def psi_sqrt_upper(table: PrimeTable, x: float, y: float, C: float | None = None) -> SqrtUpper:
    """Both bounds at p_k = smallest prime >= y (y is meant to be alpha (ln x)^2)."""
    if x < 1:
        raise DomainError("x must be >= 1")
    j = int(np.searchsorted(table.primes, y, side="left"))
    if j >= len(table.primes):
        raise OutOfRangeError(f"no tabulated prime >= {y}")
    k = j + 1
    p_k = int(table.primes[j])
    if C is None:
        C = sqrt_upper_constant(table)
    half = 0.5 * math.log(x)
    log_product = half + math.log(INCLUSIVE_BASE) + _log_product_factors(table, k)
    log_exp = half + C * math.sqrt(p_k) / math.log(p_k)
    return SqrtUpper(p_k, k, log_product, log_exp, C, INCLUSIVE_BASE)
