"""Reduced-order simplices sandwiching the count of smooth numbers.

Primes up to y are grouped into the bands J_i = (y/e^i, y/e^{i-1}], i = 1..r.
Writing n = prod p_j^{t_j} and z_i for the total exponent carried by band i,

    sum_i (ln y - i) z_i  <  ln n  <=  sum_i (ln y - i + 1) z_i,

so the lattice points of the "lower" simplex (coefficients ln y - i + 1) lift to
integers below x, and every integer up to x built from these primes projects
into the "upper" simplex (coefficients ln y - i). Each lattice point z stands
for prod_i C(z_i + m_i - 1, z_i) exponent vectors, m_i = #primes in J_i.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BoundaryError, DomainError, OutOfRangeError, ResourceError
from .logvalue import LogValue, log_sum
from .primes import PrimeTable

DEFAULT_VISIT_CAP = 10**8
KNIFE_EDGE = 1e-9


class WeightMode(enum.Enum):
    EXACT_WEIGHTS = "exact"  # m_i = prime counts from the sieve
    PNT_WEIGHTS = "pnt"  # m_i = (e - 1) y / ((ln y - i) e^i)


class RRule(enum.Enum):
    FLOOR = "floor"  # r = floor(ln y) always
    SPLIT = "split"  # floor(ln y) + 1 once ln y passes floor(ln y) + ln 2


class Side(enum.Enum):
    LOWER = "lower"  # coefficients ln y - i + 1
    UPPER = "upper"  # coefficients ln y - i


class LowerForm(enum.Enum):
    POISSON = "poisson"  # prod m^z / z!
    EXACT_K = "exact_k"  # prod C(z + m - 1, z)


class UpperForm(enum.Enum):
    EXACT_K = "exact_k"
    P_BOUND = "p_bound"  # prod m^z / z! * exp(z^2 / 2m)


def choose_r(y: float, rule: RRule = RRule.FLOOR) -> int:
    ly = math.log(y)
    fl = math.floor(ly)
    if abs(ly - (fl + math.log(2))) <= KNIFE_EDGE:
        raise BoundaryError(f"ln y = {ly!r} sits on floor(ln y) + ln 2; r is undefined there")
    if rule is RRule.SPLIT and ly > fl + math.log(2):
        return fl + 1
    return fl


@dataclass(frozen=True)
class ReducedSimplex:
    x: int
    y: float
    r: int
    coeff_lower: tuple[float, ...]
    coeff_upper: tuple[float, ...]
    weights: tuple  # int counts (exact) or floats (PNT)
    budget: float
    mode: WeightMode
    rule: RRule = RRule.FLOOR

    @property
    def floor_prime(self) -> float:
        """Primes at or below this value fall outside every band."""
        return self.y / math.exp(self.r)

    def band(self, i: int) -> tuple[float, float]:
        """(lo, hi] for J_i, 1-based."""
        return self.y / math.exp(i), self.y / math.exp(i - 1)

    def coeffs(self, side: Side) -> tuple[float, ...]:
        return self.coeff_lower if side is Side.LOWER else self.coeff_upper


def pnt_weight(y: float, i: int) -> float:
    ly = math.log(y)
    if ly - i <= 0:
        raise DomainError(f"PNT weight needs ln y > i (ln y={ly:.4f}, i={i})")
    return (math.e - 1) * y / ((ly - i) * math.exp(i))


def build_reduced(
    table: PrimeTable,
    x: int,
    y: float,
    mode: WeightMode = WeightMode.EXACT_WEIGHTS,
    rule: RRule = RRule.FLOOR,
) -> ReducedSimplex:
    if x < 2:
        raise DomainError("x must be >= 2")
    if y < 2:
        raise DomainError("y must be >= 2")
    if y > table.limit:
        raise OutOfRangeError(f"y={y} exceeds table limit {table.limit}")
    r = choose_r(y, rule)
    if r < 1:
        raise DomainError(f"y={y} gives r=0 bands")
    ly = math.log(y)
    lower = tuple(ly - i + 1 for i in range(1, r + 1))
    upper = tuple(ly - i for i in range(1, r + 1))
    if mode is WeightMode.EXACT_WEIGHTS:
        weights = []
        for i in range(1, r + 1):
            lo, hi = y / math.exp(i), y / math.exp(i - 1)
            weights.append(table.pi(hi) - table.pi(lo))
        weights = tuple(weights)
    else:
        weights = tuple(pnt_weight(y, i) for i in range(1, r + 1))
    return ReducedSimplex(x, y, r, lower, upper, weights, math.log(x), mode, rule)


def compositions(k: int, m: float) -> LogValue:
    """Ways to write k as an ordered sum of m nonnegative parts, C(k + m - 1, k).

    Real m continues through Gamma(m + k) / (Gamma(m) k!).
    """
    if k < 0:
        raise DomainError("k must be >= 0")
    if m < 1:
        raise DomainError("m must be >= 1")
    if float(m).is_integer():
        return LogValue.from_int(math.comb(k + int(m) - 1, k))
    return LogValue(math.lgamma(m + k) - math.lgamma(m) - math.lgamma(k + 1))


def signature_count(z: Sequence[int], m: Sequence[float]) -> LogValue:
    """Number of exponent vectors whose band totals are z: prod_i C(z_i + m_i - 1, z_i)."""
    if len(z) != len(m):
        raise DomainError("z and m must have equal length")
    out = LogValue.one()
    for zi, mi in zip(z, m):
        out = out * compositions(zi, mi)
    return out


def _last_count(rest: float, c: float) -> int:
    """#{z >= 0 : c z < rest}."""
    if rest <= 0:
        return 0
    return math.ceil(rest / c)


def count_lattice(
    coeffs: Sequence[float],
    budget: float,
    visit: Callable[[tuple[int, ...]], None] | None = None,
    cap: int = DEFAULT_VISIT_CAP,
) -> int:
    """Nonnegative integer points with sum c_i z_i < budget.

    Depth-first over all but the last coordinate; the last one is counted in
    closed form unless a visitor needs every point.
    """
    coeffs = tuple(float(c) for c in coeffs)
    if not coeffs:
        raise DomainError("need at least one coordinate")
    if min(coeffs) <= 0:
        raise DomainError("coefficients must be positive for a bounded simplex")
    if budget <= 0:
        return 0
    r = len(coeffs)
    z = [0] * r
    count = 0

    def rec(i: int, rest: float):
        nonlocal count
        c = coeffs[i]
        if i == r - 1:
            n = _last_count(rest, c)
            if count + n > cap:
                raise ResourceError(f"lattice enumeration exceeded cap {cap}", partial=count)
            if visit is not None:
                for zl in range(n):
                    z[i] = zl
                    visit(tuple(z))
                z[i] = 0
            count += n
            return
        zi = 0
        while zi * c < rest:
            z[i] = zi
            rec(i + 1, rest - zi * c)
            zi += 1
        z[i] = 0

    rec(0, budget)
    return count


def enumerate_lattice(
    s: ReducedSimplex,
    side: Side,
    visit: Callable[[tuple[int, ...]], None] | None = None,
    cap: int = DEFAULT_VISIT_CAP,
) -> int:
    """lambda of the lower or upper simplex, calling ``visit`` on each point."""
    return count_lattice(s.coeffs(side), s.budget, visit, cap)


# -- weighted sums -------------------------------------------------------------


def _is_int_weight(m) -> bool:
    return isinstance(m, (int, np.integer)) or float(m).is_integer()


def _log_term(kind: str, z: np.ndarray, m: float) -> np.ndarray:
    """ln of the per-coordinate weight for z = 0..n-1."""
    lz = np.array([math.lgamma(k + 1) for k in z])
    if kind == "exact_k":
        return np.array([math.lgamma(m + k) - math.lgamma(m) for k in z]) - lz
    base = z * math.log(m) - lz
    if kind == "p_bound":
        base = base + z.astype(float) ** 2 / (2 * m)
    return base


class _Weights:
    """Per-coordinate weight tables and prefix sums, exact when possible."""

    def __init__(self, kind: str, coeffs, weights, budget):
        self.kind = kind
        self.exact = kind == "exact_k" and all(_is_int_weight(m) for m in weights)
        self.active = [m > 0 for m in weights]
        self.logw, self.intw, self.logpref, self.intpref = [], [], [], []
        for c, m in zip(coeffs, weights):
            n = _last_count(budget, c) if m > 0 else 1
            zs = np.arange(n)
            if m > 0:
                lw = _log_term(kind, zs, float(m))
            else:
                lw = np.array([0.0])
            self.logw.append(lw)
            self.logpref.append(np.logaddexp.accumulate(lw))
            if self.exact:
                mi = int(m)
                if mi > 0:
                    iw = [math.comb(k + mi - 1, k) for k in range(n)]
                    ip = [math.comb(k + mi, k) for k in range(n)]  # hockey stick
                else:
                    iw, ip = [1], [1]
                self.intw.append(iw)
                self.intpref.append(ip)


def _weighted_sum(coeffs, weights, budget, kind: str, cap: int) -> LogValue:
    if budget <= 0:
        return LogValue.zero()
    coeffs = tuple(coeffs)
    if any(m > 0 and c <= 0 for c, m in zip(coeffs, weights)):
        raise DomainError("a band with primes has a nonpositive coefficient; the simplex is unbounded")
    # bands without primes only admit z_i = 0; drop them
    keep = [i for i, m in enumerate(weights) if m > 0]
    if not keep:
        return LogValue.one()
    cs = [coeffs[i] for i in keep]
    ms = [weights[i] for i in keep]
    w = _Weights(kind, cs, ms, budget)
    r = len(cs)
    visits = 0
    int_total = 0
    logs: list[float] = []

    def rec(i: int, rest: float, lacc: float, iacc: int):
        nonlocal visits, int_total
        c = cs[i]
        if i == r - 1:
            n = _last_count(rest, c)
            if n == 0:
                return
            visits += n
            if visits > cap:
                raise ResourceError(f"lattice sum exceeded cap {cap}", partial=visits)
            if w.exact:
                int_total += iacc * w.intpref[i][n - 1]
            else:
                logs.append(lacc + float(w.logpref[i][n - 1]))
            return
        zi = 0
        while zi * c < rest:
            rec(
                i + 1,
                rest - zi * c,
                lacc + float(w.logw[i][zi]),
                iacc * w.intw[i][zi] if w.exact else 0,
            )
            zi += 1

    rec(0, budget, 0.0, 1)
    if w.exact:
        return LogValue.from_int(int_total)
    return LogValue(log_sum(logs))


def psi_lower(s: ReducedSimplex, form: LowerForm = LowerForm.EXACT_K, cap: int = DEFAULT_VISIT_CAP) -> LogValue:
    """Weighted count over the lower simplex; never exceeds psi_restricted."""
    return _weighted_sum(s.coeff_lower, s.weights, s.budget, form.value, cap)


def psi_upper(s: ReducedSimplex, form: UpperForm = UpperForm.EXACT_K, cap: int = DEFAULT_VISIT_CAP) -> LogValue:
    """Weighted count over the upper simplex; never below psi_restricted."""
    return _weighted_sum(s.coeff_upper, s.weights, s.budget, form.value, cap)


def psi_restricted(table: PrimeTable, x: int, lo: float, hi: float) -> int:
    """#{1 <= n <= x : every prime factor p of n has lo < p <= hi}."""
    if x > table.limit:
        raise OutOfRangeError(f"x={x} exceeds table limit {table.limit}")
    gpf = table.largest_factor[1 : x + 1]
    lpf = table.smallest_factor[1 : x + 1]
    ok = (gpf <= math.floor(hi)) & (lpf > lo)
    ok[0] = True  # n = 1
    return int(np.count_nonzero(ok))


def psi_restricted_for(table: PrimeTable, s: ReducedSimplex) -> int:
    return psi_restricted(table, s.x, s.floor_prime, s.y)

