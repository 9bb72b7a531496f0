"""Exact arithmetic in Z[phi] and Q(phi), plus Fibonacci/Lucas generators.

phi = (1 + sqrt(5))/2 satisfies phi^2 = 1 + phi, so Z[phi] is closed under
multiplication with (a1 + b1*phi)(a2 + b2*phi) = (a1*a2 + b1*b2) +
(a1*b2 + a2*b1 + b1*b2)*phi.  sqrt(5) lives here as 2*phi - 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DegenerateArgument


def _fib_pair(n: int) -> tuple[int, int]:
    """(F_n, F_{n+1}) by fast doubling; n >= 0."""
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


def fib(n: int) -> int:
    """Fibonacci F_n for any integer n; F_{-n} = (-1)^(n+1) * F_n."""
    if n < 0:
        f = _fib_pair(-n)[0]
        return f if n & 1 else -f
    return _fib_pair(n)[0]


def lucas(n: int) -> int:
    """Lucas L_n = F_{n-1} + F_{n+1} for any integer n."""
    return fib(n - 1) + fib(n + 1)


@dataclass(frozen=True)
class ZPhi:
    """a + b*phi with integer a, b."""

    a: int
    b: int

    def __add__(self, other: ZPhi) -> ZPhi:
        return ZPhi(self.a + other.a, self.b + other.b)

    def __sub__(self, other: ZPhi) -> ZPhi:
        return ZPhi(self.a - other.a, self.b - other.b)

    def __neg__(self) -> ZPhi:
        return ZPhi(-self.a, -self.b)

    def __mul__(self, other: ZPhi | int) -> ZPhi:
        if isinstance(other, int):
            return ZPhi(self.a * other, self.b * other)
        # reduce by phi^2 = 1 + phi
        return ZPhi(
            self.a * other.a + self.b * other.b,
            self.a * other.b + self.b * other.a + self.b * other.b,
        )

    def __rmul__(self, other: int) -> ZPhi:
        return self * other

    def conj(self) -> ZPhi:
        """Galois conjugate: phi -> 1 - phi."""
        return ZPhi(self.a + self.b, -self.b)

    def norm(self) -> int:
        """Field norm a^2 + a*b - b^2; multiplicative."""
        return self.a * self.a + self.a * self.b - self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        return f"{self.a}{self.b:+}*phi"


class QPhi:
    """Element of Q(phi) as (a + b*phi)/den, gcd-reduced with den > 0."""

    __slots__ = ("num", "den")

    def __init__(self, num: ZPhi | int | Fraction = 0, den: int = 1):
        if isinstance(num, int):
            num = ZPhi(num, 0)
        elif isinstance(num, Fraction):
            den = den * num.denominator
            num = ZPhi(num.numerator, 0)
        if den == 0:
            raise ZeroDivisionError("QPhi denominator is zero")
        if den < 0:
            num, den = -num, -den
        g = gcd(num.a, num.b, den)
        if g > 1:
            num = ZPhi(num.a // g, num.b // g)
            den //= g
        self.num = num
        self.den = den

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "QPhi":
        if isinstance(x, QPhi):
            return x
        if isinstance(x, (int, Fraction)):
            return QPhi(x)
        if isinstance(x, ZPhi):
            return QPhi(x)
        raise TypeError(f"cannot coerce {type(x)!r} to QPhi")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "QPhi":
        o = self._coerce(other)
        return QPhi(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "QPhi":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QPhi":
        return (-self) + other

    def __neg__(self) -> "QPhi":
        return QPhi(-self.num, self.den)

    def __mul__(self, other) -> "QPhi":
        o = self._coerce(other)
        return QPhi(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "QPhi":
        """(a + b*phi)^(-1) = (a + b - b*phi) / N(a + b*phi), scaled by den."""
        n = self.num.norm()
        if n == 0:
            raise DegenerateArgument("division by zero QPhi value")
        return QPhi(self.num.conj() * self.den, n)

    def __truediv__(self, other) -> "QPhi":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "QPhi":
        return self._coerce(other) * self.inverse()

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def scaled(self, q: int) -> int:
        """floor(value * 2^q), accurate to ~2 ulp at scale q."""
        from .bigfixed import phi_scaled

        # guard must cover cancellation between huge a and b of opposite sign
        extra = 64 + max(self.num.a.bit_length(), self.num.b.bit_length())
        big = (self.num.a << (q + extra)) + self.num.b * phi_scaled(q + extra)
        return (big // self.den) >> extra

    def sign(self) -> int:
        """Sign via the real embedding at escalating precision."""
        if self.num.is_zero():
            return 0
        q = 64
        while True:
            v = self.scaled(q)
            if abs(v) > 4:
                return 1 if v > 0 else -1
            q *= 2

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    # -- embedding --------------------------------------------------------

    def embed(self, p: int):
        """FixedReal approximation with |error| <= 2^(-p)."""
        from .bigfixed import FixedReal

        q = p + 32
        return FixedReal.from_scaled(self.scaled(q), q, p)

    def as_fraction(self) -> Fraction:
        """Exact rational value; requires the phi coefficient to be zero."""
        if self.num.b != 0:
            raise ValueError("QPhi value is irrational")
        return Fraction(self.num.a, self.den)

    def is_rational(self) -> bool:
        return self.num.b == 0

    def __repr__(self) -> str:
        return f"QPhi({self.num.a}{self.num.b:+}*phi)/{self.den}"


PHI = QPhi(ZPhi(0, 1))
SQRT5 = QPhi(ZPhi(-1, 2))  # Eq-style: sqrt(5) = 2*phi - 1
ONE = QPhi(1)


def phi_pow(n: int) -> QPhi:
    """Exact phi^n; always has den = 1 since phi is a unit (phi^n = F_{n-1} + F_n*phi)."""
    return QPhi(ZPhi(fib(n - 1), fib(n)))


def arctan_arg_combine(x: QPhi, y: QPhi, mode: str) -> QPhi:
    """Argument of arctan(x) +/- arctan(y): (x +- y)/(1 -+ x*y).

    Returns only the combined argument; any pi branch constant is the
    caller's responsibility.  Raises DegenerateArgument when the combined
    angle is exactly +-pi/2 (zero denominator).
    """
    if mode == "sum":
        den = ONE - x * y
        num = x + y
    elif mode == "diff":
        den = ONE + x * y
        num = x - y
    else:
        raise ValueError(f"mode must be 'sum' or 'diff', got {mode!r}")
    if den.is_zero():
        raise DegenerateArgument("combined angle is +-pi/2")
    return num / den
