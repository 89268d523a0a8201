"""
Overflow-safe arithmetic for bounds that leave floating point range.

Values are carried as natural logarithms; an exact rational rides along whenever it
is cheap to keep.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from src.core.exceptions import ParameterDomainError

Number = Union[int, Fraction]

LOG2 = math.log(2.0)

# above this many bits an exact value is dropped and only its logarithm is kept
EXACT_BIT_LIMIT = 4096


def log_int(n: int) -> float:
    """Natural log of a positive integer of any size"""
    if n <= 0:
        raise ParameterDomainError(f"log of non-positive integer {n}")
    bits = n.bit_length()
    if bits < 1000:
        return math.log(n)
    shift = bits - 64
    return math.log(n >> shift) + shift * LOG2


def log_fraction(q: Number) -> float:
    q = Fraction(q)
    if q <= 0:
        raise ParameterDomainError(f"log of non-positive value {q}")
    return log_int(q.numerator) - log_int(q.denominator)


def log_binomial(n: int, k: int) -> float:
    """log C(n, k), exact through math.comb for small arguments"""
    if k < 0 or k > n:
        return -math.inf
    if n < 2000:
        return log_int(math.comb(n, k))
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def log1mexp(x: float) -> float:
    """log(1 - e^x) for x <= 0, accurate near both ends"""
    if x > 0:
        raise ParameterDomainError(f"log1mexp needs x <= 0, got {x}")
    if x == 0:
        return -math.inf
    if x > -LOG2:
        return math.log(-math.expm1(x))
    return math.log1p(-math.exp(x))


def logaddexp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = max(a, b), min(a, b)
    return hi + math.log1p(math.exp(lo - hi))


def logsumexp(values: Iterable[float]) -> float:
    values = list(values)
    if not values:
        return -math.inf
    hi = max(values)
    if hi == -math.inf:
        return hi
    return hi + math.log(math.fsum(math.exp(v - hi) for v in values))


def relative_error(approx: float, exact: float) -> float:
    if exact == 0:
        return abs(approx)
    return abs(approx - exact) / abs(exact)


@dataclass(frozen=True)
class LogReal:
    """
    A positive extended real held as its natural logarithm

    `exact` is kept for values that fit comfortably in memory; comparisons always use
    the exact values when both sides carry one.
    """

    ln: float
    exact: Optional[Fraction] = None

    @classmethod
    def of(cls, value: Number) -> "LogReal":
        value = Fraction(value)
        if value <= 0:
            raise ParameterDomainError(f"LogReal needs a positive value, got {value}")
        size = value.numerator.bit_length() + value.denominator.bit_length()
        return cls(log_fraction(value), value if size <= EXACT_BIT_LIMIT else None)

    @classmethod
    def from_log(cls, ln: float) -> "LogReal":
        return cls(ln)

    @classmethod
    def from_log2(cls, log2: float) -> "LogReal":
        return cls(log2 * LOG2)

    @property
    def log2(self) -> float:
        return self.ln / LOG2

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.ln)

    def to_float(self) -> float:
        """Plain float, or inf when the value leaves double range"""
        if self.exact is not None:
            try:
                return float(self.exact)
            except OverflowError:
                return math.inf
        return math.exp(self.ln) if self.ln < 709.0 else math.inf

    def as_int(self) -> Optional[int]:
        if self.exact is not None and self.exact.denominator == 1:
            return self.exact.numerator
        return None

    def __le__(self, other: "LogReal") -> bool:
        if self.exact is not None and other.exact is not None:
            return self.exact <= other.exact
        return self.ln <= other.ln + 1e-12 * max(1.0, abs(other.ln))

    def __lt__(self, other: "LogReal") -> bool:
        if self.exact is not None and other.exact is not None:
            return self.exact < other.exact
        return self.ln < other.ln

    def __str__(self) -> str:
        value = self.as_int()
        if value is not None:
            return str(value)
        if self.ln < 50:
            return f"{self.to_float():.6g}"
        return f"2^{self.log2:.6g}"
