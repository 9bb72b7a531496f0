"""Golden-base positional encoding.

Digits are 0/1 over powers of phi, produced greedily from the most
significant power down.  Greedy choice is canonical here: subtracting
phi^m leaves a remainder below phi^(m-1), so two adjacent 1s can never
appear and the expansion is the lexicographically largest one.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bigfixed import FixedReal, phi_scaled
from .errors import MalformedDigits, OutOfDomain, PrecisionTooLow
from .golden import QPhi, phi_pow


@dataclass(frozen=True)
class GoldenDigits:
    """0/1 digits, most significant first; frac_digits sit after the point.

    uncertain is set when a truncated input was too close to a digit
    boundary for the trailing digits to be trusted.
    """

    int_digits: tuple[int, ...]
    frac_digits: tuple[int, ...]
    uncertain: bool = False

    def __post_init__(self):
        joined = list(self.int_digits) + list(self.frac_digits)
        if any(d not in (0, 1) for d in joined):
            raise MalformedDigits("digits must be 0 or 1")
        if any(a == b == 1 for a, b in zip(joined, joined[1:])):
            raise MalformedDigits("adjacent 1s are not canonical")
        if not self.int_digits:
            object.__setattr__(self, "int_digits", (0,))

    def render(self, group: int = 0) -> str:
        def fmt(ds):
            s = "".join(str(d) for d in ds)
            if group > 0:
                s = " ".join(s[i:i + group] for i in range(0, len(s), group))
            return s

        return f"{fmt(self.int_digits)}.{fmt(self.frac_digits)}"

    @classmethod
    def parse(cls, text: str) -> "GoldenDigits":
        text = text.replace(" ", "").replace("_", "")
        head, dot, tail = text.partition(".")
        if not head and not tail:
            raise MalformedDigits("empty digit string")
        try:
            ints = tuple(int(c) for c in head) if head else (0,)
            fracs = tuple(int(c) for c in tail)
        except ValueError:
            raise MalformedDigits(f"bad digit in {text!r}") from None
        return cls(ints, fracs)


def from_golden_base(digits: GoldenDigits) -> QPhi:
    """Exact value of a digit string as an element of Q(phi)."""
    total = QPhi(0)
    top = len(digits.int_digits) - 1
    for i, d in enumerate(digits.int_digits):
        if d:
            total = total + phi_pow(top - i)
    for j, d in enumerate(digits.frac_digits, start=1):
        if d:
            total = total + phi_pow(-j)
    return total


def to_golden_base_exact(x: QPhi, max_frac: int = 512) -> GoldenDigits:
    """Greedy expansion of a non-negative Q(phi) element.

    Terminates for values whose expansion is finite; raises
    PrecisionTooLow when max_frac digits do not exhaust the remainder.
    """
    sign = x.sign()
    if sign < 0:
        raise OutOfDomain("golden-base expansion needs a non-negative value")
    if sign == 0:
        return GoldenDigits((0,), ())
    # highest power not exceeding x
    m = 0
    while phi_pow(m + 1) <= x:
        m += 1
    while phi_pow(m) > x:
        m -= 1
        if m < -max_frac:
            return GoldenDigits((0,), (0,) * max_frac, uncertain=True)
    digits: dict[int, int] = {}
    r = x
    i = m
    while not r.num.is_zero():
        if i < -max_frac:
            raise PrecisionTooLow(f"no terminating expansion within {max_frac} digits")
        if phi_pow(i) <= r:
            digits[i] = 1
            r = r - phi_pow(i)
        i -= 1
    top = max(m, 0)
    lo = min(min(digits), 0)
    ints = tuple(digits.get(e, 0) for e in range(top, -1, -1))
    fracs = tuple(digits.get(e, 0) for e in range(-1, lo - 1, -1))
    return GoldenDigits(ints, fracs)


def to_golden_base(x: FixedReal, n_frac: int) -> GoldenDigits:
    """Greedy expansion of a truncated real to n_frac fractional digits.

    Needs roughly 0.7 bits per digit; refuse inputs without margin so
    that all emitted digits are meaningful.
    """
    if x.sign < 0:
        raise OutOfDomain("golden-base expansion needs a non-negative value")
    p = x.frac_bits
    if p < n_frac * 7 // 10 + 64:
        raise PrecisionTooLow(f"{p} fractional bits cannot support {n_frac} golden digits")
    q = p + 64
    v = x.scaled(q)
    if v == 0:
        return GoldenDigits((0,), (0,) * n_frac)
    one = 1 << q
    phi1 = phi_scaled(q)

    def pw(e: int) -> int:
        # exact golden power at scale q: phi^e = F_(e-1) + F_e * phi
        from .golden import fib

        return (fib(e - 1) << q) + fib(e) * phi1

    m = 0
    while pw(m + 1) <= v:
        m += 1
    digits: dict[int, int] = {}
    r = v
    uncertain = False
    slack = 1 << (q - p + 16)  # truncation slop of the input at scale q
    for e in range(m, -n_frac - 1, -1):
        w = pw(e)
        if r >= w:
            if digits.get(e + 1) == 1:
                # only reachable within rounding slop of a boundary
                uncertain = True
                continue
            digits[e] = 1
            r -= w
        elif w - r <= slack:
            # a hair below the power: trailing digits are unreliable
            uncertain = True
    ints = tuple(digits.get(e, 0) for e in range(max(m, 0), -1, -1))
    fracs = tuple(digits.get(e, 0) for e in range(-1, -n_frac - 1, -1))
    return GoldenDigits(ints, fracs, uncertain=uncertain)
