"""Arbitrary-precision binary fixed-point reals with elementary-function oracles.

Every public operation takes a target precision ``p`` and guarantees an
absolute error of at most 2^(-p).  Internals run with 64 guard bits and
truncate toward zero; the one-sided truncation error is absorbed by the
guard margin.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import OutOfDomain, PrecisionTooLow

GUARD = 64


def tdiv(a: int, b: int) -> int:
    """Integer division truncating toward zero."""
    q = abs(a) // abs(b)
    return -q if (a < 0) != (b < 0) else q


@dataclass(frozen=True)
class FixedReal:
    """sign * mantissa * 2^(-frac_bits); mantissa == 0 iff sign == 0."""

    sign: int
    mantissa: int
    frac_bits: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if self.mantissa < 0:
            raise ValueError("mantissa must be non-negative")
        if (self.mantissa == 0) != (self.sign == 0):
            raise ValueError("mantissa == 0 iff sign == 0")
        if self.frac_bits < 1:
            raise ValueError("frac_bits must be >= 1")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_scaled(cls, v: int, scale: int, p: int | None = None) -> FixedReal:
        """From an integer v with value v * 2^(-scale), truncated to p bits."""
        if p is None:
            p = scale
        s = (v > 0) - (v < 0)
        m = abs(v)
        if p < scale:
            m >>= scale - p
        else:
            m <<= p - scale
        if m == 0:
            s = 0
        return cls(s, m, p)

    @classmethod
    def from_int(cls, n: int, p: int = 64) -> FixedReal:
        return cls.from_scaled(n << p, p)

    @classmethod
    def from_fraction(cls, fr: Fraction | int, p: int) -> FixedReal:
        fr = Fraction(fr)
        return cls.from_scaled(tdiv(fr.numerator << p, fr.denominator), p)

    @classmethod
    def zero(cls, p: int = 64) -> FixedReal:
        return cls(0, 0, p)

    # -- views ------------------------------------------------------------

    def scaled(self, q: int) -> int:
        """Signed integer approximation of value * 2^q (truncated)."""
        m = self.mantissa
        if q >= self.frac_bits:
            m <<= q - self.frac_bits
        else:
            m >>= self.frac_bits - q
        return self.sign * m

    def to_fraction(self) -> Fraction:
        return Fraction(self.sign * self.mantissa, 1 << self.frac_bits)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> FixedReal:
        return FixedReal(-self.sign, self.mantissa, self.frac_bits)

    def __abs__(self) -> FixedReal:
        return FixedReal(abs(self.sign), self.mantissa, self.frac_bits)

    def hex_str(self) -> str:
        """Compact exact rendering, e.g. '-0x1a2bp-140'."""
        if self.sign == 0:
            return "0x0p0"
        s = "-" if self.sign < 0 else ""
        return f"{s}0x{self.mantissa:x}p-{self.frac_bits}"

    def decimal(self, digits: int) -> str:
        """Truncated decimal rendering with `digits` fractional digits."""
        m = self.mantissa
        p = self.frac_bits
        ipart = m >> p
        frac = m - (ipart << p)
        fdigits = (frac * 10**digits) >> p
        s = "-" if self.sign < 0 else ""
        if digits == 0:
            return f"{s}{ipart}"
        return f"{s}{ipart}.{fdigits:0{digits}d}"

    def compare_abs(self, other: FixedReal) -> int:
        q = max(self.frac_bits, other.frac_bits)
        a, b = abs(self.scaled(q)), abs(other.scaled(q))
        return (a > b) - (a < b)

    def abs_le_pow2(self, e: int) -> bool:
        """|value| <= 2^e, exactly."""
        # mantissa * 2^(-p) <= 2^e  <=>  mantissa <= 2^(e+p)
        ep = e + self.frac_bits
        if ep < 0:
            return self.mantissa == 0
        return self.mantissa <= (1 << ep)


# -- integer kernels (values scaled by 2^q) -------------------------------


def phi_scaled(q: int) -> int:
    """floor(phi * 2^q)."""
    return ((1 << q) + isqrt(5 << (2 * q))) >> 1


@lru_cache(maxsize=None)
def _pi_scaled_cached(q: int) -> int:
    # Machin: pi = 16*arctan(1/5) - 4*arctan(1/239); independent of the
    # formula catalog this module serves as oracle for.
    qq = q + 16
    v = 16 * _atan_scaled((1 << qq) // 5, qq) - 4 * _atan_scaled((1 << qq) // 239, qq)
    return v >> 16


def _atan_scaled(v: int, q: int) -> int:
    """floor-ish arctan of v*2^(-q), at scale q; error a few ulp."""
    one = 1 << q
    neg = v < 0
    v = abs(v)
    if v > one:
        r = (_pi_scaled_cached(q) >> 1) - _atan_scaled((one * one) // v, q)
        return -r if neg else r
    # argument halving: x <- x / (1 + sqrt(1 + x^2)) until |x| < 1/4
    h = 0
    while v > (one >> 2):
        s = isqrt(one * one + v * v)
        v = (v << q) // (one + s)
        h += 1
    # Taylor series; |x| < 1/4 so terms shrink by >= 16x every step
    v2 = (v * v) >> q
    term = v
    acc = v
    n = 3
    sgn = -1
    while True:
        term = (term * v2) >> q
        if term < n:
            break
        acc += sgn * (term // n)
        sgn = -sgn
        n += 2
    r = acc << h
    return -r if neg else r


@lru_cache(maxsize=None)
def _ln2_scaled_cached(q: int) -> int:
    # ln 2 = 2 * atanh(1/3)
    return 2 * _atanh_scaled((1 << q) // 3, q)


def _atanh_scaled(z: int, q: int) -> int:
    """atanh of z*2^(-q), |z| well inside (0, 1)."""
    z2 = (z * z) >> q
    term = z
    acc = z
    n = 3
    while True:
        term = (term * z2) >> q
        if term < n:
            break
        acc += term // n
        n += 2
    return acc


def _log_scaled(v: int, q: int) -> int:
    """ln of v*2^(-q), v > 0, at scale q."""
    one = 1 << q
    e = v.bit_length() - 1 - q
    m = v >> e if e >= 0 else v << -e  # m in [1, 2)
    z = ((m - one) << q) // (m + one)
    return 2 * _atanh_scaled(z, q) + e * _ln2_scaled_cached(q)


# -- public operations ----------------------------------------------------


def fx_add(x: FixedReal, y: FixedReal, p: int) -> FixedReal:
    q = max(x.frac_bits, y.frac_bits, p + GUARD)
    return FixedReal.from_scaled(x.scaled(q) + y.scaled(q), q, p)


def fx_sub(x: FixedReal, y: FixedReal, p: int) -> FixedReal:
    q = max(x.frac_bits, y.frac_bits, p + GUARD)
    return FixedReal.from_scaled(x.scaled(q) - y.scaled(q), q, p)


def fx_mul(x: FixedReal, y: FixedReal, p: int) -> FixedReal:
    q = p + GUARD
    return FixedReal.from_scaled((x.scaled(q) * y.scaled(q)) >> q, q, p)


def fx_div(x: FixedReal, y: FixedReal, p: int) -> FixedReal:
    if y.is_zero():
        raise ZeroDivisionError("FixedReal division by zero")
    q = p + GUARD
    return FixedReal.from_scaled(tdiv(x.scaled(2 * q), y.scaled(q)), q, p)


def fx_sqrt(x: FixedReal, p: int) -> FixedReal:
    if x.sign < 0:
        raise OutOfDomain("fx_sqrt of negative value")
    q = p + GUARD
    return FixedReal.from_scaled(isqrt(x.scaled(q) << q), q, p)


def fx_arctan(x: FixedReal, p: int) -> FixedReal:
    q = p + GUARD
    return FixedReal.from_scaled(_atan_scaled(x.scaled(q), q), q, p)


def fx_log(x: FixedReal, p: int) -> FixedReal:
    if x.sign <= 0:
        raise OutOfDomain("fx_log of non-positive value")
    q = p + GUARD
    return FixedReal.from_scaled(_log_scaled(x.scaled(q), q), q, p)


def fx_pi(p: int) -> FixedReal:
    q = p + GUARD
    return FixedReal.from_scaled(_pi_scaled_cached(q), q, p)


def require_precision(x: FixedReal, p_min: int) -> None:
    if x.frac_bits < p_min:
        raise PrecisionTooLow(f"need at least {p_min} fractional bits, have {x.frac_bits}")
