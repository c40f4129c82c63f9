"""Binary floating values of arbitrary precision, with exact-rational logarithms.

The logarithm of a positive rational q is computed in integer fixed point:

1. write q = 2^k * r with r in [1/sqrt(2), sqrt(2)), extracting k from bit
   lengths so the reduction is exact;
2. ln r = 2 * atanh(s) with s = (r - 1) / (r + 1), |s| <= 0.1716, summed as
   s + s^3/3 + s^5/5 + ...; the tail after the term s^(2j+1)/(2j+1) is below
   |s|^(2j+3) / ((2j+3)(1 - s^2)), so summation stops once a term is zero at
   the working precision;
3. ln q = k * ln 2 + ln r, with ln 2 = 2 * atanh(1/3) from the same series.

The working precision is ``bits + 32`` plus the bits of |k| and of any integer
scale factor, plus enough extra bits to resolve s when q is close to 1, so the
returned value carries relative error well under ``2^-(bits - 8)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

GUARD_BITS = 32
MIN_BITS = 64


def _round_shift(x: int, shift: int) -> int:
    """x / 2^shift rounded to nearest (half away from zero); shift may be negative."""
    if shift <= 0:
        return x << -shift
    q, r = divmod(abs(x), 1 << shift)
    if 2 * r >= (1 << shift):
        q += 1
    return q if x >= 0 else -q


@dataclass(frozen=True)
class HighPrecisionValue:
    """The number sign * mantissa * 2^exponent, mantissa < 2^mantissa_bits."""

    sign: int
    mantissa: int
    exponent: int
    mantissa_bits: int = 128

    def __post_init__(self):
        if self.mantissa_bits < MIN_BITS:
            raise ValueError(f"mantissa_bits must be at least {MIN_BITS}")
        if self.sign not in (-1, 0, 1) or self.mantissa < 0:
            raise ValueError("bad sign or mantissa")
        if (self.sign == 0) != (self.mantissa == 0):
            raise ValueError("zero must have sign 0 and mantissa 0")

    @classmethod
    def zero(cls, bits: int = 128) -> "HighPrecisionValue":
        return cls(0, 0, 0, bits)

    @classmethod
    def from_scaled_int(cls, x: int, exponent: int, bits: int = 128) -> "HighPrecisionValue":
        """Round x * 2^exponent to ``bits`` significant bits."""
        if x == 0:
            return cls.zero(bits)
        shift = max(0, abs(x).bit_length() - bits)
        mant = _round_shift(abs(x), shift)
        if mant.bit_length() > bits:
            mant >>= 1
            shift += 1
        return cls(1 if x > 0 else -1, mant, exponent + shift, bits)

    @classmethod
    def from_fraction(cls, q: Fraction | int, bits: int = 128) -> "HighPrecisionValue":
        q = Fraction(q)
        if q == 0:
            return cls.zero(bits)
        mag = abs(q)
        e = mag.numerator.bit_length() - mag.denominator.bit_length() - bits
        mant = round(mag / Fraction(2) ** e)
        if mant.bit_length() > bits:
            e += 1
            mant = round(mag / Fraction(2) ** e)
        return cls(1 if q > 0 else -1, mant, e, bits)

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.sign * self.mantissa << self.exponent)
        return Fraction(self.sign * self.mantissa, 1 << -self.exponent)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __neg__(self) -> "HighPrecisionValue":
        return HighPrecisionValue(-self.sign, self.mantissa, self.exponent, self.mantissa_bits)

    def __abs__(self) -> "HighPrecisionValue":
        return HighPrecisionValue(abs(self.sign), self.mantissa, self.exponent, self.mantissa_bits)

    def __lt__(self, other) -> bool:
        return self.to_fraction() < _as_fraction(other)

    def __le__(self, other) -> bool:
        return self.to_fraction() <= _as_fraction(other)

    def __gt__(self, other) -> bool:
        return self.to_fraction() > _as_fraction(other)

    def __ge__(self, other) -> bool:
        return self.to_fraction() >= _as_fraction(other)

    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def decimal_digits(self) -> int:
        return math.ceil(self.mantissa_bits * 0.3)

    def to_decimal(self, digits: int | None = None) -> str:
        """Decimal string with ``digits`` significant digits (default ceil(0.3 * bits))."""
        if self.sign == 0:
            return "0"
        q = self.to_fraction()
        with localcontext() as ctx:
            ctx.prec = digits or self.decimal_digits
            d = Decimal(q.numerator) / Decimal(q.denominator)
        return format(d, "f")

    def __str__(self) -> str:
        return self.to_decimal()


class MinusInfinity:
    """ln 0: the host has no homomorphic images of the pattern."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "MINUS_INFINITY"

    def __str__(self) -> str:
        return "-inf"

    def to_decimal(self, digits: int | None = None) -> str:
        return "-inf"


MINUS_INFINITY = MinusInfinity()


def _as_fraction(x) -> Fraction:
    return x.to_fraction() if isinstance(x, HighPrecisionValue) else Fraction(x)


# -------------------------------------------------------------- fixed point

def _atanh_fixed(num: int, den: int, wp: int) -> int:
    """atanh(num/den) * 2^wp for |num/den| <= 1/3, error a few units."""
    s = (abs(num) << wp) // den
    if s == 0:
        return 0
    s2 = (s * s) >> wp
    term, total, j = s, s, 1
    while True:
        term = (term * s2) >> wp
        if term == 0:
            break
        total += term // (2 * j + 1)
        j += 1
    return total if num >= 0 else -total


@lru_cache(maxsize=64)
def ln2_fixed(wp: int) -> int:
    """ln 2 * 2^wp, computed as 2 atanh(1/3) with 16 extra bits then rounded."""
    return _round_shift(2 * _atanh_fixed(1, 3, wp + 16), 16)


def _reduce(q: Fraction) -> tuple[int, int, int]:
    """Return (k, a, b) with q = 2^k * a/b and a/b in [1/sqrt(2), sqrt(2))."""
    a, b = q.numerator, q.denominator
    k = a.bit_length() - b.bit_length()
    if k >= 0:
        b <<= k
    else:
        a <<= -k
    # now a/b in (1/2, 2); fold into [1/sqrt2, sqrt2)
    if 2 * a * a >= 4 * b * b:  # a/b >= sqrt(2)
        b <<= 1
        k += 1
    elif 2 * a * a < b * b:  # a/b < 1/sqrt(2)
        a <<= 1
        k -= 1
    return k, a, b


def log_fixed(q: Fraction, wp: int) -> int:
    """ln q * 2^wp for positive rational q."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("logarithm of a nonpositive number")
    k, a, b = _reduce(q)
    return k * ln2_fixed(wp) + 2 * _atanh_fixed(a - b, a + b, wp)


def _extra_bits_near_one(q: Fraction) -> int:
    k, a, b = _reduce(q)
    if k != 0 or a == b:
        return 0
    return max(0, (a + b).bit_length() - abs(a - b).bit_length())


def log_rational(q: Fraction | int, bits: int = 128, scale: int = 1) -> HighPrecisionValue:
    """``scale * ln q`` for a positive rational q and integer ``scale`` >= 1."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("logarithm of a nonpositive number")
    if q == 1:
        return HighPrecisionValue.zero(bits)
    k, _, _ = _reduce(q)
    wp = (bits + GUARD_BITS + abs(scale).bit_length() + (abs(k) + 1).bit_length()
          + _extra_bits_near_one(q))
    return HighPrecisionValue.from_scaled_int(scale * log_fixed(q, wp), -wp, bits)


def exp_value(x: HighPrecisionValue | Fraction | int, bits: int = 128) -> HighPrecisionValue:
    """e^x rounded to ``bits`` significant bits."""
    x = _as_fraction(x)
    if x == 0:
        return HighPrecisionValue.from_fraction(1, bits)
    k_est = round(float(x) / math.log(2)) if abs(x) < 10**300 else None
    if k_est is None:
        raise OverflowError("exp argument too large")
    wp = bits + GUARD_BITS + (abs(k_est) + 1).bit_length() + 8
    xf = (x.numerator << wp) // x.denominator
    ln2 = ln2_fixed(wp)
    k = _round_shift(xf, 0) // ln2 if ln2 else 0
    r = xf - k * ln2
    if 2 * r > ln2:  # keep |r| <= ln2 / 2
        r -= ln2
        k += 1
    one = 1 << wp
    term, total, j = one, one, 1
    while term:
        term = (term * r >> wp) // j
        total += term
        j += 1
    return HighPrecisionValue.from_scaled_int(total, k - wp, bits)
