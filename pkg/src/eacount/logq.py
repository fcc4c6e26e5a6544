"""Exact values of the form ``factor * q**scale`` and their log_q rendering.

Used for probabilities and bounds such as |Gamma| / q**(m q^n) that are far
outside float range.  ``scale`` may be a Fraction; comparisons stay exact by
raising both sides to the denominator of the scale difference.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class LogQValue:
    q: int
    scale: Fraction
    factor: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        object.__setattr__(self, "factor", Fraction(self.factor))
        if self.factor <= 0:
            raise ValueError("LogQValue holds positive quantities only")

    @property
    def exponent(self) -> float:
        """log_q of the value (approximate only through the factor's logarithm)."""
        f = self.factor
        return float(self.scale) + log_q_int(f.numerator, self.q) - log_q_int(f.denominator, self.q)

    def exact(self) -> Fraction:
        if self.scale.denominator != 1:
            raise ValueError("value is irrational: fractional power of q")
        return self.factor * Fraction(self.q) ** int(self.scale)

    @property
    def vacuous(self) -> bool:
        """True when the value exceeds 1 (useless as a probability bound)."""
        return self > 1

    def _compare(self, other) -> int:
        # self vs other: f1 q^s1 vs f2 q^s2  <=>  f1 q^d vs f2, d = s1 - s2 = u/v
        # raise to the v-th power: f1^v q^u vs f2^v
        if not isinstance(other, LogQValue):
            other = Fraction(other)
            if other <= 0:
                return 1
            other = LogQValue(self.q, 0, other)
        if other.q != self.q:
            raise ValueError("cannot compare values in different bases")
        d = self.scale - other.scale
        u, v = d.numerator, d.denominator
        lhs = self.factor**v
        rhs = other.factor**v
        if u >= 0:
            lhs *= self.q**u
        else:
            rhs *= self.q ** (-u)
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        try:
            return self._compare(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self._compare(other) < 0

    def __hash__(self):
        return hash((self.q, self.scale, self.factor))

    def __mul__(self, other):
        if isinstance(other, LogQValue):
            return LogQValue(self.q, self.scale + other.scale, self.factor * other.factor)
        return LogQValue(self.q, self.scale, self.factor * Fraction(other))

    __rmul__ = __mul__

    def render(self, digits=12) -> str:
        return f"{self.q}^{self.exponent:.{digits}f}"

    def __str__(self):
        return self.render()


def log_q_int(x: int, q: int) -> float:
    """log_q of a positive int.

    Splits off the top 64 bits so the float error stays at rounding level
    for arbitrarily large ints.
    """
    shift = max(x.bit_length() - 64, 0)
    return (math.log(x >> shift) + shift * math.log(2)) / math.log(q)
