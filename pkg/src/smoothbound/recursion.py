"""Weighted lattice sums F(c, M), G(c, M) and the iteration kernel built on them.

F(c, M) sums prod_i m_i^{z_i} / z_i! over nonnegative z_0..z_{r-1}, r = floor(c),
with sum_i (c - i) z_i <= M and bases m_i = (e - 1) e^{c-i} / (c - i). Fixing
z_0 peels off one coordinate:

    F(c, M) = sum_{z=0}^{floor(M/c)} F(c - 1, M - c z) m_0^z / z!.

G(c, M) is the same with weights m^z e^{z^2/m} / z! and one more coordinate
(every i with c - i > 0). Both are carried as LogValue.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DomainError, ResourceError
from .logvalue import LogValue, log_sum

E_MINUS_1 = math.e - 1.0
A_STAR = 1.0 + math.log(E_MINUS_1)  # 1.5413248546129181...
M_GRID = 2.0**-40  # memo-key cell, below _SLACK
_SLACK = 1e-12  # tolerance on z <= M/c


def _iln(k: int, v: float) -> float:
    for level in range(1, k + 1):
        if v <= 0:
            raise DomainError(f"ln^({level}) undefined: argument {v!r} <= 0")
        v = math.log(v)
    return v


def base_weight(c: float, i: int) -> float:
    d = c - i
    if d <= 0:
        raise DomainError(f"base m_{i} needs c - i > 0 (c={c})")
    return E_MINUS_1 * math.exp(d) / d


def _log_base(c: float, i: int) -> float:
    d = c - i
    if d <= 0:
        raise DomainError(f"base m_{i} needs c - i > 0 (c={c})")
    return math.log(E_MINUS_1) + d - math.log(d)


@dataclass(frozen=True)
class AuxProblem:
    c: float
    M: float

    def __post_init__(self):
        if self.c <= 1:
            raise DomainError("c must exceed 1")
        if self.M < 0:
            raise DomainError("M must be nonnegative")

    @property
    def r(self) -> int:
        return math.floor(self.c)

    def p_bases(self) -> tuple[float, ...]:
        """m_0..m_{r-1}, the bases of the F sum."""
        return tuple(base_weight(self.c, i) for i in range(self.r))

    def q_bases(self) -> tuple[float, ...]:
        """Bases of the G sum: every i with c - i > 0."""
        return tuple(base_weight(self.c, i) for i in range(math.ceil(self.c)))


class _Kind(enum.Enum):
    F = "F"
    G = "G"


class AuxSolver:
    """Memoised F/G recursion; M is snapped to a 2^-40 grid for memo keys only.

    ``max_quantization`` records the largest snap applied, so callers can see
    whether quantisation ever moved an argument (it is 0 for dyadic inputs).
    Sums are always taken at the exact M: snapping M itself can push a lattice
    point with c z = M outside the simplex.
    """

    def __init__(self, max_states: int = 2_000_000, grid: float = M_GRID):
        self.max_states = max_states
        self.grid = grid
        self.memo: dict[tuple[str, float, int], float] = {}
        self.max_quantization = 0.0

    def _snap(self, M: float) -> tuple[int, float]:
        k = round(M / self.grid)
        q = k * self.grid
        self.max_quantization = max(self.max_quantization, abs(q - M))
        return k, q

    def _log(self, kind: _Kind, c: float, M: float) -> float:
        floor_c = 1.0 if kind is _Kind.F else 0.0
        if c < floor_c or (kind is _Kind.G and c <= 0):
            return 0.0  # no variables left: the empty sum counts the origin
        k, _ = self._snap(M)
        key = (kind.value, round(c, 12), k)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        lm = _log_base(c, 0)
        m0 = math.exp(lm)
        zmax = math.floor(M / c + _SLACK)
        terms = []
        for z in range(zmax + 1):
            w = z * lm - math.lgamma(z + 1)
            if kind is _Kind.G:
                w += z * z / m0
            terms.append(self._log(kind, c - 1, max(M - c * z, 0.0)) + w)
        out = log_sum(terms)
        if len(self.memo) >= self.max_states:
            raise ResourceError(f"F/G memo exceeded {self.max_states} states", partial=len(self.memo))
        self.memo[key] = out
        return out

    def f(self, p: AuxProblem) -> LogValue:
        return LogValue(self._log(_Kind.F, p.c, p.M))

    def g(self, p: AuxProblem) -> LogValue:
        return LogValue(self._log(_Kind.G, p.c, p.M))


def f_cm(p: AuxProblem, solver: AuxSolver | None = None) -> LogValue:
    return (solver or AuxSolver()).f(p)


def g_cm(p: AuxProblem, solver: AuxSolver | None = None) -> LogValue:
    return (solver or AuxSolver()).g(p)


# -- the kernel H and its maximiser ---------------------------------------------


def _xlogx(v: float) -> float:
    return 0.0 if v == 0 else v * math.log(v)


def h_function(z: float, c: float, M: float, gamma: float, a: float) -> float:
    """H(z) = M(1 + gamma/c) + (a - gamma) z - (M/c) ln c - z ln z - (M/c - z) ln(M/c - z)."""
    u = M / c
    if not 0 <= z <= u:
        raise DomainError(f"z={z} outside [0, M/c={u}]")
    return M * (1 + gamma / c) + (a - gamma) * z - u * math.log(c) - _xlogx(z) - _xlogx(max(u - z, 0.0))


def _softplus(v: float) -> float:
    """ln(1 + e^v) without overflow."""
    return v + math.log1p(math.exp(-v)) if v > 0 else math.log1p(math.exp(v))


def _logistic(v: float) -> float:
    """1 / (1 + e^v)."""
    if v >= 0:
        ev = math.exp(-v)
        return ev / (1 + ev)
    return 1 / (1 + math.exp(v))


@dataclass(frozen=True)
class HMax:
    maximum: float
    z0: float
    t0: float
    f_gamma: float


def h_max_closed(c: float, M: float, gamma: float, a: float) -> HMax:
    """max_{0<=z<=M/c} H(z) = M(1 - ln M/c + (gamma + f(gamma))/c), f = ln(1 + e^{a - gamma})."""
    if c <= 0 or M <= 0:
        raise DomainError("need c, M > 0")
    f = _softplus(a - gamma)
    t0 = _logistic(gamma - a)
    return HMax(M * (1 - math.log(M) / c + (gamma + f) / c), (M / c) * t0, t0, f)


@dataclass(frozen=True)
class NeighborCorrection:
    z1: int
    z2: int
    loss_bound: float
    neighbor_mass: float  # e^{-theta^2} + e^{-(1-theta)^2}, always > 1


def integer_neighbor_correction(z0: float, c: float | None = None, M: float | None = None) -> NeighborCorrection:
    """Integer neighbours of a real maximiser and the loss in H when rounding to them."""
    if z0 < 1:
        raise DomainError("z0 must be >= 1 (the curvature bound needs zeta >= 1)")
    if c is not None and M is not None and M / c <= 2:
        raise DomainError(f"M/c={M / c} must exceed 2")
    z1, z2 = math.ceil(z0), math.floor(z0)
    if z1 == z2:
        return NeighborCorrection(z1, z2, 0.0, 2.0)
    theta = z1 - z0
    mass = math.exp(-theta * theta) + math.exp(-(1 - theta) ** 2)
    return NeighborCorrection(z1, z2, max(theta * theta, (1 - theta) ** 2), mass)


@dataclass(frozen=True)
class SeedCoefficient:
    value: LogValue  # B = exp(-e^{kappa + gamma})
    M0: float  # maximiser of M (1 - ln M/(kappa+1) + gamma/(kappa+1))
    peak: float  # value of that map at M0, e^{kappa+gamma}/(kappa+1)
    saturated: bool


def seed_coefficient(kappa: float, gamma: float) -> SeedCoefficient:
    s = kappa + gamma
    if s > 709.0:
        return SeedCoefficient(LogValue(-math.inf), math.inf, math.inf, True)
    e = math.exp(s)
    return SeedCoefficient(LogValue(-e), e, e / (kappa + 1), False)


# -- constants and descent ------------------------------------------------------


@dataclass(frozen=True)
class BoundParams:
    a: float = 1.5
    a_lower: float = 1.0
    a_upper: float = A_STAR + 1.0
    alpha: float = 5.0
    beta: float = 0.4
    theta: float = 0.6
    nu: float = 2.5
    lambda_rate: float = 1.0
    gamma: float = 0.0
    delta: float | None = None  # defaults to lambda * beta
    q: float | None = None  # defaults to 1 - lambda * beta / 2
    a_star: float = field(default=A_STAR, init=False)

    def __post_init__(self):
        if not self.a < A_STAR:
            raise DomainError(f"a={self.a} must be below a*={A_STAR}")
        if not self.a_lower < self.a_upper:
            raise DomainError("need a_lower < a_upper")
        if not 0 < self.beta < 0.5:
            raise DomainError("beta must lie in (0, 1/2)")
        if not 0 < self.theta < 1:
            raise DomainError("theta must lie in (0, 1)")
        if self.delta is None:
            object.__setattr__(self, "delta", self.lambda_rate * self.beta)
        if self.q is None:
            object.__setattr__(self, "q", 1 - self.lambda_rate * self.beta / 2)

    @property
    def epsilon(self) -> float:
        return 1 - 2 * self.beta


def alpha_for_beta(beta: float) -> float:
    """Smallest alpha for which ln(1 + e^alpha beta) >= beta is guaranteed."""
    return beta / 2 * (1 + beta / 2)


class DescentForm(enum.Enum):
    LOG1 = "log1"  # gamma0 = a - alpha + ln(c-1) - ln ln M
    LOG2 = "log2"  # adds ln ln(c-1) - ln ln ln M


@dataclass(frozen=True)
class DescentStep:
    c_next: float
    M_next: float
    gamma0: float
    t0: float


def descent_step(c: float, M: float, params: BoundParams, form: DescentForm = DescentForm.LOG1) -> DescentStep:
    if c <= 2:
        raise DomainError("descent needs c > 2")
    if M <= math.e:
        raise DomainError("descent needs M > e so that ln ln M is defined (ln ln ln M for LOG2)")
    g0 = params.a - params.alpha + math.log(c - 1) - _iln(2, M)
    if form is DescentForm.LOG2:
        g0 += _iln(2, c - 1) - _iln(3, M)
    t0 = _logistic(g0 - params.a)
    return DescentStep(c - 1, M * (1 - t0), g0, t0)


def in_domain(c: float, M: float, beta: float) -> bool:
    """(c, M) in D_beta, i.e. 1 <= M <= e^{beta c}."""
    return M >= 1 and math.log(M) <= beta * c


def lower_domain(c: float, M: float, theta: float) -> bool:
    """c^{1 - theta} < ln M < c / 2."""
    if M <= 1 or c <= 0:
        return False
    lm = math.log(M)
    return c ** (1 - theta) < lm < c / 2


def upper_domain(c: float, M: float, nu: float, beta: float) -> bool:
    """c^nu < M < e^{beta c}."""
    if M <= 0 or c <= 0:
        return False
    return nu * math.log(c) < math.log(M) < beta * c


def lower_bound_thm(c: float, M: float, params: BoundParams, check_domain: bool = True) -> float:
    """Exponent of the lower bound on F:
    M(1 - (ln M + ln2 M + ln3 M)/(c+1) + (a - alpha + ln c + ln2 c)/(c+1))."""
    if check_domain and not lower_domain(c, M, params.theta):
        raise DomainError(f"(c={c}, M={M}) violates c^(1-theta) < ln M < c/2 at theta={params.theta}")
    neg = math.log(M) + _iln(2, M) + _iln(3, M)
    pos = params.a - params.alpha + math.log(c) + _iln(2, c)
    return M * (1 - neg / (c + 1) + pos / (c + 1))


def upper_bound_thm(
    c: float, M: float, params: BoundParams, with_slack: bool = True, check_domain: bool = True
) -> float:
    """Exponent of the upper bound on G:
    M(1 - (ln M + ln2 M + ln3 M)/c + (a_upper + ln c + ln2 c)/c) [+ c ln(M/c)]."""
    if params.a_upper <= A_STAR:
        raise DomainError(f"a_upper={params.a_upper} must exceed a*={A_STAR}")
    if check_domain and not upper_domain(c, M, params.nu, params.beta):
        raise DomainError(f"(c={c}, M={M}) violates c^nu < M < e^(beta c) at nu={params.nu}, beta={params.beta}")
    neg = math.log(M) + _iln(2, M) + _iln(3, M)
    pos = params.a_upper + math.log(c) + _iln(2, c)
    out = M * (1 - neg / c + pos / c)
    if with_slack:
        out += c * math.log(M / c)
    return out
