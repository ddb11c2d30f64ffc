"""Nonnegative quantities carried by their natural logarithm.

Lattice sums over the smoothness simplices reach sizes like e^M for M in the
hundreds, so everything downstream of the enumeration works on the log scale.
A value may additionally carry its exact integer, which makes comparisons
against exact counts free of rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

NEG_INF = float("-inf")


def log_sum(logs: Iterable[float]) -> float:
    """Max-shifted log(sum(exp(l))) over an iterable, -inf for an empty sum."""
    logs = [l for l in logs if l != NEG_INF]
    if not logs:
        return NEG_INF
    top = max(logs)
    if top == float("inf"):
        return top
    return top + math.log(math.fsum(math.exp(l - top) for l in logs))


@dataclass(frozen=True)
class LogValue:
    log: float
    exact: int | None = None

    @classmethod
    def zero(cls) -> LogValue:
        return cls(NEG_INF, 0)

    @classmethod
    def one(cls) -> LogValue:
        return cls(0.0, 1)

    @classmethod
    def from_value(cls, v: float) -> LogValue:
        if v < 0:
            raise ValueError("LogValue holds nonnegative quantities only")
        if isinstance(v, int):
            return cls.from_int(v)
        return cls(math.log(v) if v > 0 else NEG_INF)

    @classmethod
    def from_int(cls, n: int) -> LogValue:
        if n < 0:
            raise ValueError("LogValue holds nonnegative quantities only")
        return cls(math.log(n) if n > 0 else NEG_INF, int(n))

    @property
    def value(self) -> float:
        """Linear value; overflows to inf beyond ~e^709."""
        if self.exact is not None:
            return float(self.exact)
        return math.exp(self.log) if self.log < 709.78 else float("inf")

    def is_zero(self) -> bool:
        return self.log == NEG_INF

    def __add__(self, other: LogValue) -> LogValue:
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = self.exact + other.exact
            return LogValue.from_int(exact)
        a, b = self.log, other.log
        if a < b:
            a, b = b, a
        if b == NEG_INF:
            return LogValue(a)
        return LogValue(a + math.log1p(math.exp(b - a)))

    def __mul__(self, other: LogValue) -> LogValue:
        if self.exact is not None and other.exact is not None:
            return LogValue.from_int(self.exact * other.exact)
        if self.log == NEG_INF or other.log == NEG_INF:
            return LogValue.zero()
        return LogValue(self.log + other.log)

    def _key(self, other: LogValue):
        if self.exact is not None and other.exact is not None:
            return self.exact, other.exact
        return self.log, other.log

    def __lt__(self, other: LogValue) -> bool:
        a, b = self._key(other)
        return a < b

    def __le__(self, other: LogValue) -> bool:
        a, b = self._key(other)
        return a <= b

    def __gt__(self, other: LogValue) -> bool:
        a, b = self._key(other)
        return a > b

    def __ge__(self, other: LogValue) -> bool:
        a, b = self._key(other)
        return a >= b

    @staticmethod
    def sum(values: Iterable[LogValue]) -> LogValue:
        values = list(values)
        if values and all(v.exact is not None for v in values):
            return LogValue.from_int(sum(v.exact for v in values))
        return LogValue(log_sum(v.log for v in values))
