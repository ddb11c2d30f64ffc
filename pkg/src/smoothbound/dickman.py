"""Dickman's rho on a uniform mesh.

Integrating u rho'(u) = -rho(u - 1) forward in the form
rho(u) = rho(k) - int_k^u rho(t - 1)/t dt keeps discretisation errors
*absolute*: they persist while rho falls by ~u log u per unit, and by u = 9 the
table goes negative at step 1e-3. The solver therefore integrates the
equivalent identity

    u rho(u) = int_{u-1}^{u} rho(t) dt        (u >= 1),

whose trapezoid discretisation only ever adds positive terms, so errors stay
relative. Each unit interval [k, k+1] is solved in values scaled by rho(k) and
stored as ln rho, so nothing underflows out to max_u; ``values`` is its
exponential. The classic integral form survives as ``integral_form_table`` for
cross-checks on short ranges.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


def _cumtrapz(f: np.ndarray, h: float) -> np.ndarray:
    out = np.empty_like(f)
    out[0] = 0.0
    np.cumsum(0.5 * h * (f[1:] + f[:-1]), out=out[1:])
    return out


def _solve_unit(prev: np.ndarray, t: np.ndarray, h: float) -> np.ndarray:
    """One unit interval of the window identity, in values scaled by prev[-1].

    prev holds rho/rho(k) on [k-1, k] (N+1 points); returns the same on [k, k+1].
    """
    n = len(prev) - 1
    # tail[j] = trapezoid of prev over [k-1 + j h, k], summed from the right
    halves = 0.5 * h * (prev[1:] + prev[:-1])
    tail = np.zeros(n + 1)
    tail[:-1] = np.cumsum(halves[::-1])[::-1]
    cur = np.empty(n + 1)
    cur[0] = 1.0
    inner = 0.0  # trapezoid of cur over [k, t_{j-1}]
    for j in range(1, n + 1):
        cur[j] = (tail[j] + inner + 0.5 * h * cur[j - 1]) / (t[j] - 0.5 * h)
        inner += 0.5 * h * (cur[j - 1] + cur[j])
    return cur


@dataclass(frozen=True, eq=False)
class RhoSolver:
    step: float = 1e-3
    max_u: float = 100.0
    log_values: np.ndarray = field(init=False, repr=False)
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 < self.step <= 1:
            raise DomainError("step must lie in (0, 1]")
        n = round(1.0 / self.step)
        if n < 1 or abs(n * self.step - 1.0) > 1e-9:
            raise DomainError("step must divide 1 exactly")
        if self.max_u < 2:
            raise DomainError("max_u must be >= 2")
        units = math.ceil(self.max_u)
        h = 1.0 / n
        u = np.arange(units * n + 1) * h
        logs = np.zeros_like(u)
        logs[n : 2 * n + 1] = np.log1p(-np.log(u[n : 2 * n + 1]))
        for k in range(2, units):
            lo, hi = k * n, (k + 1) * n
            prev = np.exp(logs[lo - n : lo + 1] - logs[lo])
            logs[lo : hi + 1] = logs[lo] + np.log(_solve_unit(prev, u[lo : hi + 1], h))
        lin = np.exp(logs)
        logs.setflags(write=False)
        lin.setflags(write=False)
        object.__setattr__(self, "log_values", logs)
        object.__setattr__(self, "values", lin)

    @property
    def per_unit(self) -> int:
        return round(1.0 / self.step)

    def _locate(self, u: float) -> tuple[int, float]:
        if not 0 <= u <= self.max_u:
            raise DomainError(f"u={u} outside [0, {self.max_u}]")
        s = u * self.per_unit
        i = min(int(s), len(self.log_values) - 2)
        return i, s - i


def integral_form_table(step: float = 1e-3, max_u: float = 10.0) -> np.ndarray:
    """rho(u) = rho(k) - int_k^u rho(t-1)/t dt with composite trapezoid, linear space.

    Absolute error stays near step^2, so this is only trustworthy while rho is
    far above that (u <= 6 or so at step 1e-3).
    """
    n = round(1.0 / step)
    units = math.ceil(max_u)
    h = 1.0 / n
    u = np.arange(units * n + 1) * h
    lin = np.ones_like(u)
    lin[n : 2 * n + 1] = 1.0 - np.log(u[n : 2 * n + 1])
    for k in range(2, units):
        lo, hi = k * n, (k + 1) * n
        lin[lo : hi + 1] = lin[lo] - _cumtrapz(lin[lo - n : hi - n + 1] / u[lo : hi + 1], h)
    lin.setflags(write=False)
    return lin


def rho(solver: RhoSolver, u: float) -> float:
    if 0 <= u <= 1:
        return 1.0
    if 1 < u <= 2:
        return 1.0 - math.log(u)
    return math.exp(ln_rho(solver, u))


def ln_rho(solver: RhoSolver, u: float) -> float:
    """ln rho(u); the log table is interpolated linearly between mesh points."""
    if 0 <= u <= 1:
        return 0.0
    if 1 < u <= 2:
        return math.log1p(-math.log(u))
    i, w = solver._locate(u)
    lv = solver.log_values
    return float((1 - w) * lv[i] + w * lv[i + 1])


class Asymptote(enum.Enum):
    UL = "u_ln_u"  # -u ln u
    UL2 = "u_ln_u_lnln_u"  # -u (ln u + ln ln u)


def rho_asymptote(u: float, variant: Asymptote = Asymptote.UL2) -> float:
    """Leading-order model of ln rho(u)."""
    if variant is Asymptote.UL:
        if u <= 0:
            raise DomainError("u must be positive")
        return -u * math.log(u)
    if u <= math.e:
        raise DomainError("UL2 needs u > e so that ln ln u > 0")
    return -u * (math.log(u) + math.log(math.log(u)))
