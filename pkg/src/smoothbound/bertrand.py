"""Primes in short intervals (y, gamma y): exhaustive sieve scans plus the
smooth-count model that motivates them."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, OutOfRangeError
from .iterlog import XYQuery, psi_model
from .primes import PrimeTable


def prime_in_interval(table: PrimeTable, y: float, gamma: float) -> int | None:
    """Smallest prime p with y < p < gamma y, or None."""
    if gamma <= 1:
        raise DomainError("gamma must exceed 1")
    hi = gamma * y
    if hi > table.limit:
        raise OutOfRangeError(f"gamma*y={hi} exceeds table limit {table.limit}")
    j = int(np.searchsorted(table.primes, y, side="right"))
    if j < len(table.primes) and table.primes[j] < hi:
        return int(table.primes[j])
    return None


@dataclass(frozen=True)
class ScanReport:
    gamma: float
    y_lo: int
    y_hi: int
    checked: int
    failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def scan(table: PrimeTable, y_lo: int, y_hi: int, gamma: float) -> ScanReport:
    """Every integer y in [y_lo, y_hi] whose interval (y, gamma y) holds no prime."""
    if gamma <= 1:
        raise DomainError("gamma must exceed 1")
    if y_lo < 1 or y_hi < y_lo:
        raise DomainError("need 1 <= y_lo <= y_hi")
    ys = np.arange(y_lo, y_hi + 1, dtype=np.int64)
    j = np.searchsorted(table.primes, ys, side="right")
    beyond = j >= len(table.primes)
    if beyond.any() and gamma * ys[beyond].min() > table.limit:
        raise OutOfRangeError(f"next prime after y={int(ys[beyond].min())} lies beyond the table")
    nxt = table.primes[np.minimum(j, len(table.primes) - 1)].astype(float)
    # exact test p < gamma y with integer p, y: compare in float only where safe
    bad = beyond | ~(nxt < gamma * ys)
    return ScanReport(gamma, y_lo, y_hi, len(ys), ys[bad].tolist())


# -- the smooth-count model ------------------------------------------------------


def model_dlog_dy(q: XYQuery, a: float) -> float:
    """Exact d/dy of psi_model at (x, y):
    ln x / (y ln^2 y) * [ln u + 1 + 1/ln2 y + ln3 x - ln3 y + ln4 x - a]."""
    ly = q.ln_y
    y = math.exp(ly)
    inner = math.log(q.u) + 1 + 1 / q.ly(2) + q.lx(3) - q.ly(3) + q.lx(4) - a
    return q.ln_x / (y * ly * ly) * inner


def model_derivative_floor(q: XYQuery) -> float:
    """ln x ln u / (y ln^2 y), the claimed lower bound on the y-derivative."""
    return q.ln_x * math.log(q.u) / (math.exp(q.ln_y) * q.ln_y**2)


def model_dlog_dy_fd(q: XYQuery, a: float, rel_step: float = 1e-6) -> float:
    """Central finite difference of psi_model in y."""
    y = math.exp(q.ln_y)
    h = y * rel_step
    up = psi_model(XYQuery(q.ln_x, math.log(y + h)), a)
    dn = psi_model(XYQuery(q.ln_x, math.log(y - h)), a)
    return (up - dn) / (2 * h)


class RatioBound(enum.Enum):
    STATED = "stated"  # (gamma - 1) u ln u / ln y at the left end
    RIGOROUS = "rigorous"  # ln(gamma) u2 ln u2 / ln y2 at the right end


def model_log_ratio(ln_x: float, y: float, gamma: float, a: float) -> float:
    """ln psi_a(x, gamma y) - ln psi_a(x, y)."""
    return psi_model(XYQuery(ln_x, math.log(gamma * y)), a) - psi_model(XYQuery(ln_x, math.log(y)), a)


def model_ratio_bound(ln_x: float, y: float, gamma: float, variant: RatioBound = RatioBound.RIGOROUS) -> float:
    """Log of the lower bound on psi_a(x, gamma y) / psi_a(x, y).

    STATED integrates the derivative floor as if it held at y on all of
    [y, gamma y]; RIGOROUS uses its value at the right end together with
    int dy/y = ln gamma, which is what the floor actually supports.
    """
    if variant is RatioBound.STATED:
        u = ln_x / math.log(y)
        return (gamma - 1) * u * math.log(u) / math.log(y)
    ly2 = math.log(gamma * y)
    u2 = ln_x / ly2
    return math.log(gamma) * u2 * math.log(u2) / ly2


def model_doubling_lnx(y: float, gamma: float, a: float, lnx_max: float = 1e6, steps: int = 400) -> float | None:
    """Smallest ln x on a geometric grid where psi_a(x, gamma y) > 2 psi_a(x, y).

    Starts just above ln x = e^e ln(gamma y) so every iterated log is defined.
    """
    lo = max(math.e**math.e, math.e) * math.log(gamma * y)
    if lo >= lnx_max:
        return None
    for lnx in np.geomspace(lo, lnx_max, steps):
        if model_log_ratio(float(lnx), y, gamma, a) > math.log(2):
            return float(lnx)
    return None
