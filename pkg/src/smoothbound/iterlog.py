"""Iterated logarithms and the log-scale bounds on psi(x, y)/x.

All bounds are returned as bounds on ln(psi/x). Queries are stored through
ln x and ln y so that x far beyond binary64 range (x = e^{e^{50}}, say) is fine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

FORM_TOL = 1e-10


def iter_ln(k: int, x: float) -> float:
    """k-fold natural log; raises naming the first level whose argument is <= 0."""
    if k < 0:
        raise DomainError("k must be >= 0")
    v = x
    for level in range(1, k + 1):
        if v <= 0:
            raise DomainError(f"ln^({level}) undefined: ln^({level - 1}) = {v!r} <= 0")
        v = math.log(v)
    return v


@dataclass(frozen=True)
class XYQuery:
    ln_x: float
    ln_y: float

    def __post_init__(self):
        if not self.ln_x > math.e:
            raise DomainError("need x > e^e")
        if not self.ln_y > 1:
            raise DomainError("need y > e")

    @classmethod
    def from_xy(cls, x: float, y: float) -> XYQuery:
        if x <= 0 or y <= 0:
            raise DomainError("x and y must be positive")
        return cls(math.log(x), math.log(y))

    @property
    def u(self) -> float:
        return self.ln_x / self.ln_y

    def lx(self, k: int) -> float:
        """ln^(k) x for k >= 1."""
        return iter_ln(k - 1, self.ln_x)

    def ly(self, k: int) -> float:
        return iter_ln(k - 1, self.ln_y)


def _bracket(q: XYQuery, a: float) -> float:
    """ln2 x - ln2 y + ln3 x - ln3 y + ln4 x - a."""
    return q.lx(2) - q.ly(2) + q.lx(3) - q.ly(3) + q.lx(4) - a


def check_lower_domain(q: XYQuery, theta: float) -> None:
    """exp((ln y)^{1-theta}) < ln x < sqrt(y), compared on the log scale."""
    llx = q.lx(2)
    if not q.ln_y ** (1 - theta) < llx:
        raise DomainError(f"left inequality fails: (ln y)^(1-theta) >= ln ln x (theta={theta})")
    if not llx < q.ln_y / 2:
        raise DomainError("right inequality fails: ln x >= sqrt(y)")


def check_upper_domain(q: XYQuery, nu: float, beta: float) -> None:
    """(ln y)^nu < ln x < y^beta."""
    llx = q.lx(2)
    if not nu * q.ly(2) < llx:
        raise DomainError(f"left inequality fails: (ln y)^nu >= ln x (nu={nu})")
    if not llx < beta * q.ln_y:
        raise DomainError(f"right inequality fails: ln x >= y^beta (beta={beta})")


def _agree(v1: float, v2: float, what: str) -> float:
    if abs(v1 - v2) > FORM_TOL * max(1.0, abs(v1)):
        raise ArithmeticError(f"{what}: algebraic forms disagree ({v1!r} vs {v2!r})")
    return v1


def lower_forms(q: XYQuery, a_lower: float) -> tuple[float, float]:
    """Both ways of writing the lower bound on ln(psi/x).

    First: ln x * [-(ln2 x + ln3 x + ln4 x)/ln y + (a + ln2 y + ln3 y)/ln y].
    Second: -u [ln u + ln3 x - ln3 y + ln4 x - a].
    """
    first = q.ln_x * (-(q.lx(2) + q.lx(3) + q.lx(4)) / q.ln_y + (a_lower + q.ly(2) + q.ly(3)) / q.ln_y)
    second = -q.u * (math.log(q.u) + q.lx(3) - q.ly(3) + q.lx(4) - a_lower)
    return first, second


def ln_psi_lower_bound(q: XYQuery, a_lower: float, theta: float | None = None) -> float:
    """Lower bound on ln(psi/x); the domain is checked when ``theta`` is given."""
    if theta is not None:
        check_lower_domain(q, theta)
    return _agree(*lower_forms(q, a_lower), "lower bound")


def ln_psi_upper_bound(
    q: XYQuery,
    a_upper: float,
    with_slack: bool = True,
    nu: float | None = None,
    beta: float | None = None,
) -> float:
    """Upper bound on ln(psi/x); the slack form adds ln y * ln u."""
    if nu is not None and beta is not None:
        check_upper_domain(q, nu, beta)
    first = q.ln_x * (-(q.lx(2) + q.lx(3) + q.lx(4)) / q.ln_y + (a_upper + q.ly(2) + q.ly(3)) / q.ln_y)
    second = -q.u * _bracket(q, a_upper)
    out = _agree(first, second, "upper bound")
    if with_slack:
        out += q.ln_y * math.log(q.u)
    return out


def generalized_bound(q: XYQuery, a: float, k: int) -> float:
    """1 - (1/ln y) [sum_{j=2}^{k+1} ln^(j) x - a - sum_{j=2}^{k} ln^(j) y], a bound on ln psi / ln x.

    k = 3 reproduces the bracket of the proven bounds; k = 2 drops ln4 x and ln3 y.
    """
    if k < 2:
        raise DomainError("k must be >= 2")
    sx = math.fsum(q.lx(j) for j in range(2, k + 2))
    sy = math.fsum(q.ly(j) for j in range(2, k + 1))
    return 1 - (sx - a - sy) / q.ln_y


def psi_model(q: XYQuery, a: float) -> float:
    """ln psi_a = u [ln y + ln2 y + ln3 y - ln2 x - ln3 x - ln4 x + a]."""
    return q.u * (q.ln_y + q.ly(2) + q.ly(3) - q.lx(2) - q.lx(3) - q.lx(4) + a)


def empirical_a(q: XYQuery, psi_exact: int) -> float:
    """The a for which psi_model reproduces ln psi_exact."""
    if psi_exact < 1:
        raise DomainError("psi must be >= 1")
    return math.log(psi_exact) / q.u - (q.ln_y + q.ly(2) + q.ly(3) - q.lx(2) - q.lx(3) - q.lx(4))


@dataclass(frozen=True)
class IterlogReport:
    u: float
    res_x3: float  # ln3 x - ln2 u
    res_x4: float  # ln4 x - ln3 u
    res_y4: float  # ln4 y - ln4 u
    ln3_y: float
    bracket_lo: float  # ln3 u
    bracket_hi: float  # ln3 u + ln(1/nu)
    slack_lo: float  # ln3 y - bracket_lo
    slack_hi: float  # bracket_hi - ln3 y
    log2x_above_log_u: bool  # ln u < ln2 x


def check_iterlog_domain(q: XYQuery, nu: float, beta: float) -> None:
    """exp((ln y)^nu) < ln x < y^beta with 0 < nu < 1."""
    if not 0 < nu < 1:
        raise DomainError("nu must lie in (0, 1)")
    llx = q.lx(2)
    if not q.ln_y**nu < llx:
        raise DomainError("left inequality fails: exp((ln y)^nu) >= ln x")
    if not llx < beta * q.ln_y:
        raise DomainError("right inequality fails: ln x >= y^beta")


def iterlog_estimates(q: XYQuery, nu: float, beta: float | None = None) -> IterlogReport:
    """Residuals of ln^(k) x ~ ln^(k-1) u and ln^(k) y ~ ln^(k) u, plus the ln3 y bracket."""
    if beta is not None:
        check_iterlog_domain(q, nu, beta)
    elif not 0 < nu < 1:
        raise DomainError("nu must lie in (0, 1)")
    u = q.u
    l3u = iter_ln(3, u)
    ly3 = q.ly(3)
    hi = l3u + math.log(1 / nu)
    return IterlogReport(
        u=u,
        res_x3=q.lx(3) - iter_ln(2, u),
        res_x4=q.lx(4) - l3u,
        res_y4=q.ly(4) - iter_ln(4, u),
        ln3_y=ly3,
        bracket_lo=l3u,
        bracket_hi=hi,
        slack_lo=ly3 - l3u,
        slack_hi=hi - ly3,
        log2x_above_log_u=math.log(u) < q.lx(2),
    )
