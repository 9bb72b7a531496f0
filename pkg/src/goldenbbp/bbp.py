"""P(s, b, l, A) series: evaluation, digit extraction, rebasing and combination.

A formula is prefactor * sum_{k>=0} base^(-k) * sum_{j=1..l} a_j/(k*l+j)^s.
Bases and coefficients are exact scalars from Q(phi) optionally carrying a
square root of 2, 3, 5 or 15, so every catalog entry embeds exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, isqrt

from . import expr
from .bigfixed import GUARD, FixedReal, tdiv
from .errors import DigitBoundaryRisk, IneligibleFormula
from .golden import QPhi, ZPhi, phi_pow

_SQUAREFREE = (1, 2, 3, 5, 15)


def _split_square(n: int) -> tuple[int, int]:
    """n = s^2 * r with r square-free; returns (s, r). n > 0 and small here."""
    s = 1
    r = n
    d = 2
    while d * d <= r:
        while r % (d * d) == 0:
            r //= d * d
            s *= d
        d += 1
    return s, r


@dataclass(frozen=True)
class RealScalar:
    """Exact scalar qphi * sqrt(root); root square-free in {1, 2, 3, 5, 15}."""

    qphi: QPhi
    root: int = 1

    @classmethod
    def make(cls, qphi, root: int = 1) -> RealScalar:
        if not isinstance(qphi, QPhi):
            qphi = QPhi(Fraction(qphi))
        if root <= 0:
            raise ValueError("root must be positive")
        s, r = _split_square(root)
        if s != 1:
            qphi = qphi * s
        if qphi.is_zero():
            r = 1
        return cls(qphi, r)

    @classmethod
    def from_rational(cls, value) -> RealScalar:
        return cls.make(QPhi(Fraction(value)))

    @classmethod
    def phi_power(cls, n: int) -> RealScalar:
        return cls.make(phi_pow(n))

    def __mul__(self, other: RealScalar) -> RealScalar:
        if not isinstance(other, RealScalar):
            other = RealScalar.from_rational(other)
        return RealScalar.make(self.qphi * other.qphi, self.root * other.root)

    __rmul__ = __mul__

    def __neg__(self) -> RealScalar:
        return RealScalar(-self.qphi, self.root)

    def __add__(self, other: RealScalar) -> RealScalar:
        if not isinstance(other, RealScalar):
            other = RealScalar.from_rational(other)
        if self.qphi.is_zero():
            return other
        if other.qphi.is_zero():
            return self
        if self.root != other.root:
            raise ValueError("cannot add scalars with different square-root parts")
        return RealScalar.make(self.qphi + other.qphi, self.root)

    def __sub__(self, other: RealScalar) -> RealScalar:
        return self + (-other)

    def inverse(self) -> RealScalar:
        # 1/(q*sqrt(r)) = sqrt(r)/(q*r)
        return RealScalar.make(self.qphi.inverse() * Fraction(1, self.root), self.root)

    def __pow__(self, n: int) -> RealScalar:
        if n < 0:
            return self.inverse() ** (-n)
        out = RealScalar.from_rational(1)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.qphi.is_zero()

    def is_rational(self) -> bool:
        return self.qphi.is_rational() and self.root == 1

    def as_fraction(self) -> Fraction:
        if self.root != 1:
            raise ValueError("scalar carries a square root")
        return self.qphi.as_fraction()

    def is_integer(self) -> bool:
        return self.is_rational() and self.qphi.den == 1

    def sign(self) -> int:
        return self.qphi.sign()

    def scaled(self, q: int) -> int:
        v = self.qphi.scaled(q + 32)
        if self.root != 1:
            v = (v * isqrt(self.root << (2 * (q + 32)))) >> (q + 32)
        return v >> 32

    def embed(self, p: int) -> FixedReal:
        q = p + 32
        return FixedReal.from_scaled(self.scaled(q), q, p)

    def to_expr(self) -> expr.Node:
        factors: list[expr.Node] = []
        if self.root != 1:
            factors.append(expr.Sqrt(self.root))
        q = self.qphi
        if q.num.b == 0:
            scal = Fraction(q.num.a, q.den)
        elif q.num.a == 0:
            scal = Fraction(q.num.b, q.den)
            factors.append(expr.PhiPow(expr.aff(1)))
        else:
            # phi^n detection: F_{n-1} + F_n phi up to rational scale
            scal = Fraction(1, q.den)
            factors.append(_phi_part_to_expr(q.num))
        node: expr.Node
        if not factors:
            node = expr.Rat(scal)
        else:
            base = factors[0] if len(factors) == 1 else expr.Prod(tuple(factors))
            node = base if scal == 1 else expr.Mul(scal, base)
        return node

    @classmethod
    def parse(cls, text: str) -> RealScalar:
        """Product grammar: [-] factor (* factor)*; factor = INT[/INT] | phi[^[-]INT] | sqrtN."""
        text = text.strip()
        neg = text.startswith("-")
        if neg:
            text = text[1:]
        out = cls.from_rational(1)
        for tok in text.split("*"):
            tok = tok.strip()
            if tok.startswith("sqrt"):
                out = out * cls.make(QPhi(1), int(tok[4:]))
            elif tok.startswith("phi"):
                e = 1 if tok == "phi" else int(tok[4:]) if tok[3] == "^" else None
                if e is None:
                    raise ValueError(f"bad scalar token {tok!r}")
                out = out * cls.phi_power(e)
            else:
                out = out * cls.from_rational(Fraction(tok))
        return -out if neg else out

    def __str__(self) -> str:
        parts = []
        q = self.qphi
        if q.num.b == 0:
            fr = Fraction(q.num.a, q.den)
            if fr != 1 or self.root == 1:
                parts.append(str(fr))
        else:
            hit = _phi_exponent(q.num)
            if hit is not None:
                c, n = hit
                fr = Fraction(c, q.den)
                if fr != 1:
                    parts.append(str(fr))
                parts.append(f"phi^{n}")
            else:
                parts.append(f"({q.num.a}{q.num.b:+}phi)/{q.den}")
        if self.root != 1:
            parts.append(f"sqrt{self.root}")
        return "*".join(parts) if parts else "1"


def _phi_exponent(z: ZPhi) -> tuple[int, int] | None:
    """If a + b*phi equals c * phi^n for integers c, n, return (c, n).

    Best effort over |n| <= 64, largest |n| first so c * phi^n with the
    smallest scalar wins; display and expression building only.
    """
    from .golden import fib

    if z.b == 0:
        return None
    for n in sorted(range(-64, 65), key=abs, reverse=True):
        fn = fib(n)
        if fn == 0 or z.b % fn:
            continue
        c = z.b // fn
        if c != 0 and z.a == c * fib(n - 1):
            return c, n
    return None


def _phi_part_to_expr(z: ZPhi) -> expr.Node:
    hit = _phi_exponent(z)
    if hit is not None:
        c, n = hit
        node = expr.PhiPow(expr.aff(n))
        return node if c == 1 else expr.Mul(c, node)
    # general a + b*phi
    return expr.Sum((expr.Rat(z.a), expr.Mul(z.b, expr.PhiPow(expr.aff(1)))))


@dataclass(frozen=True)
class BBPFormula:
    """One P(s, base, l, A) series with prefactor and claimed left-hand value."""

    name: str
    s: int
    base: RealScalar
    l: int
    a: tuple[RealScalar, ...]
    prefactor: RealScalar
    lhs: expr.Node | None = None
    anchor: str = ""

    def __post_init__(self):
        if len(self.a) != self.l:
            raise ValueError("coefficient vector length must equal l")


@dataclass(frozen=True)
class DigitWindow:
    digits: tuple[int, ...]
    base: int
    position: int
    boundary_risk: bool = False


def _mulshift(a: int, b: int, q: int) -> int:
    """(a * b) >> q truncating toward zero."""
    r = (abs(a) * abs(b)) >> q
    return -r if (a < 0) != (b < 0) else r


def bbp_eval(f: BBPFormula, p: int) -> FixedReal:
    """Evaluate the series with tail bound <= 2^(-p-2); total error <= 2^(-p)."""
    q = p + GUARD
    one = 1 << q
    b = f.base.scaled(q)
    if abs(b) <= one:
        raise ValueError(f"|base| must exceed 1, got scaled {b}")
    inv_b = tdiv(one * one, b)
    a_scaled = [c.scaled(q) for c in f.a]
    c_abs = sum(abs(c) for c in a_scaled) + 1
    # stop when |pow| * C pushes the remaining tail below the target
    cutoff = 1 << (q - p - 8)
    acc = 0
    pw = one
    k = 0
    while (abs(pw) * c_abs) >> q > cutoff or k == 0:
        kl = k * f.l
        inner = 0
        for j in range(1, f.l + 1):
            c = a_scaled[j - 1]
            if c:
                inner += tdiv(c, (kl + j) ** f.s)
        acc += _mulshift(pw, inner, q)
        pw = _mulshift(pw, inv_b, q)
        k += 1
    res = _mulshift(f.prefactor.scaled(q), acc, q)
    return FixedReal.from_scaled(res, q, p)


def digit_eligibility(f: BBPFormula) -> tuple[bool, str]:
    """Digit extraction needs s=1, integer base >= 2, integer A, and a
    prefactor denominator dividing a power of the base."""
    if f.s != 1:
        return False, "degree s must be 1"
    if not f.base.is_integer():
        return False, "base is not an integer"
    b = f.base.as_fraction().numerator
    if b < 2:
        return False, "base must be an integer >= 2"
    if not all(c.is_integer() for c in f.a):
        return False, "coefficients are not all integers"
    if not f.prefactor.is_rational():
        return False, "prefactor is not rational"
    den = f.prefactor.as_fraction().denominator
    d = den
    for _ in range(64):
        if d == 1:
            break
        g = gcd(d, b)
        if g == 1:
            return False, "prefactor denominator does not divide a base power"
        d //= g
    else:
        return False, "prefactor denominator does not divide a base power"
    return True, ""


def _prefactor_shift(f: BBPFormula, b: int) -> tuple[int, int]:
    """Smallest t with den | b^t, and M = num * b^t / den."""
    fr = f.prefactor.as_fraction()
    t = 0
    bp = 1
    while bp % fr.denominator != 0:
        bp *= b
        t += 1
    return t, fr.numerator * bp // fr.denominator


def _digits_once(f: BBPFormula, d: int, m: int, guard: int) -> tuple[tuple[int, ...], bool]:
    b = f.base.as_fraction().numerator
    l = f.l
    t, big_m = _prefactor_shift(f, b)
    d_eff = d - t
    bits_per = max((b - 1).bit_length(), 1)
    g = guard + m * bits_per
    mask = (1 << g) - 1
    cj = [c.as_fraction().numerator * big_m for c in f.a]
    acc = 0
    # modular part: k <= d_eff, term b^(d_eff - k) mod (kl + j)
    for k in range(0, d_eff + 1):
        kl = k * l
        e = d_eff - k
        for j in range(1, l + 1):
            c = cj[j - 1]
            if c == 0:
                continue
            den = kl + j
            r = (c * pow(b, e, den)) % den
            acc = (acc + ((r << g) // den)) & mask
    # direct tail: k > d_eff (and k >= 0), term b^(d_eff - k) < 1
    k = max(d_eff + 1, 0)
    bpow = b ** (k - d_eff)
    maxc = max((abs(c) for c in cj), default=0)
    while maxc and (maxc << g) // bpow > 0:
        kl = k * l
        for j in range(1, l + 1):
            c = cj[j - 1]
            if c == 0:
                continue
            acc = (acc + (c << g) // ((kl + j) * bpow)) & mask
        k += 1
        bpow *= b
    digits = []
    v = acc
    for _ in range(m):
        v *= b
        digits.append(v >> g)
        v &= mask
    margin = 1 << (g - 48)
    risk = v < margin or v > mask - margin
    return tuple(digits), risk


def bbp_digits(f: BBPFormula, d: int, m: int) -> DigitWindow:
    """Base-b digits d+1 .. d+m of the fractional part of the formula value.

    Retries once at doubled guard precision if the accumulator lands within
    2^(-48) of a digit boundary, then raises DigitBoundaryRisk.
    """
    ok, reason = digit_eligibility(f)
    if not ok:
        raise IneligibleFormula(f"{f.name}: {reason}")
    if d < 0 or m < 1:
        raise ValueError("need d >= 0 and m >= 1")
    b = f.base.as_fraction().numerator
    digits, risk = _digits_once(f, d, m, GUARD)
    if risk:
        digits, risk = _digits_once(f, d, m, 2 * GUARD)
        if risk:
            raise DigitBoundaryRisk(
                f"{f.name}: digit window at position {d} is uncertified after retry"
            )
    return DigitWindow(digits, b, d, risk)


def digits_from_value(x: FixedReal, base: int, d: int, m: int) -> tuple[int, ...]:
    """Digits d+1 .. d+m of frac(x) in the given radix, read from a full value.

    Requires x to carry at least (d+m+2)*log2(base) + 32 fractional bits.
    """
    need = (d + m + 2) * max((base - 1).bit_length(), 1) + 32
    if x.frac_bits < need:
        raise ValueError(f"value precision {x.frac_bits} too low, need {need}")
    q = x.frac_bits
    mask = (1 << q) - 1
    frac = (x.scaled(q) & mask) if x.sign >= 0 else ((x.scaled(q)) & mask)
    w = (frac * base**d) & mask
    out = []
    for _ in range(m):
        w *= base
        out.append(w >> q)
        w &= mask
    return tuple(out)


# -- mechanical constructions ----------------------------------------------


def general_arctan_formula(kind: str, u: RealScalar | int | Fraction) -> BBPFormula:
    """The three general-base arctangent series, instantiated at u."""
    if not isinstance(u, RealScalar):
        u = RealScalar.from_rational(u)
    zero = RealScalar.from_rational(0)
    if kind == "recip-u":
        base = u**4
        f = BBPFormula(
            name=f"arctan-recip({u})",
            s=1,
            base=base,
            l=4,
            a=(u**2, zero, RealScalar.from_rational(-1), zero),
            prefactor=u**-3,
            lhs=expr.Arctan(u.inverse().to_expr()),
        )
    elif kind in ("recip-2u-minus-1", "recip-2u-plus-1"):
        sgn = 1 if kind == "recip-2u-minus-1" else -1
        base = RealScalar.from_rational(16) * u**8
        arg = (u * 2 - RealScalar.from_rational(sgn)).inverse()
        f = BBPFormula(
            name=f"arctan-{kind}({u})",
            s=1,
            base=base,
            l=8,
            a=(
                RealScalar.from_rational(8) * u**6,
                RealScalar.from_rational(8 * sgn) * u**5,
                RealScalar.from_rational(4) * u**4,
                zero,
                RealScalar.from_rational(-2) * u**2,
                RealScalar.from_rational(-2 * sgn) * u,
                RealScalar.from_rational(-1),
                zero,
            ),
            prefactor=RealScalar.from_rational(Fraction(1, 16)) * u**-7,
            lhs=expr.Arctan(arg.to_expr()),
        )
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if abs(f.base.scaled(64)) <= (1 << 64):
        raise ValueError("resulting |base| must exceed 1")
    return f


def rebase(f: BBPFormula, r: int) -> BBPFormula:
    """Equivalent series in base^r with length l*r.

    Term k of the original maps to term k//r, offset k%r, of the new one:
    slot t*l + j gets a_j * base^(r-1-t), and the prefactor absorbs
    base^-(r-1).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1:
        return f
    new_a = []
    for tt in range(r):
        step = f.base ** (r - 1 - tt)
        new_a.extend(aj * step for aj in f.a)
    new_pref = f.prefactor * f.base ** (-(r - 1))
    if new_pref.sign() < 0:
        # negative base to an odd power flips the global sign
        new_pref = -new_pref
        new_a = [-c for c in new_a]
    return replace(
        f,
        name=f"{f.name}@base^{r}",
        base=f.base**r,
        l=f.l * r,
        a=tuple(new_a),
        prefactor=new_pref,
    )


def stretch(f: BBPFormula, m: int) -> BBPFormula:
    """Same base, length l*m: a_j/(kl+j)^s = m^s*a_j/(k*lm + jm)^s."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return f
    zero = RealScalar.from_rational(0)
    new_a = [zero] * (f.l * m)
    for j, aj in enumerate(f.a, start=1):
        new_a[j * m - 1] = aj * RealScalar.from_rational(m**f.s)
    return replace(f, name=f"{f.name}x{m}", l=f.l * m, a=tuple(new_a))


def scale(f: BBPFormula, c) -> BBPFormula:
    """Multiply the formula (and its claimed value) by an exact scalar."""
    if not isinstance(c, RealScalar):
        c = RealScalar.from_rational(c)
    lhs = None
    if f.lhs is not None:
        lhs = expr.Prod((c.to_expr(), f.lhs))
    return replace(f, name=f"{f.name}*{c}", prefactor=f.prefactor * c, lhs=lhs)


def linear_combine(terms: list[tuple[Fraction, BBPFormula]], name: str = "combo") -> BBPFormula:
    """Rational linear combination of formulas sharing (s, base, l)."""
    if not terms:
        raise ValueError("need at least one term")
    _, f0 = terms[0]
    for _, f in terms:
        if (f.s, f.base, f.l) != (f0.s, f0.base, f0.l):
            raise ValueError("formulas must share identical s, base and l")
    zero = RealScalar.from_rational(0)
    acc = [zero] * f0.l
    lhs_terms = []
    for c, f in terms:
        w = f.prefactor * RealScalar.from_rational(c)
        for j in range(f0.l):
            acc[j] = acc[j] + f.a[j] * w
        if f.lhs is not None:
            lhs_terms.append(expr.Mul(Fraction(c), f.lhs))
    out = BBPFormula(
        name=name,
        s=f0.s,
        base=f0.base,
        l=f0.l,
        a=tuple(acc),
        prefactor=RealScalar.from_rational(1),
        lhs=expr.Sum(tuple(lhs_terms)) if lhs_terms else None,
    )
    return normalized(out)


def normalized(f: BBPFormula) -> BBPFormula:
    """Canonical form: positive prefactor; for all-rational coefficient
    vectors, integer entries with gcd 1 and the content in the prefactor."""
    a = f.a
    pref = f.prefactor
    if all(c.is_rational() for c in a) and pref.is_rational():
        fracs = [c.as_fraction() * pref.as_fraction() for c in a]
        nums = [fr.numerator for fr in fracs if fr != 0]
        if nums:
            g = 0
            for n in nums:
                g = gcd(g, abs(n))
            lcm = 1
            for fr in fracs:
                if fr != 0:
                    lcm = lcm * fr.denominator // gcd(lcm, fr.denominator)
            content = Fraction(g, lcm)
            a = tuple(RealScalar.from_rational(fr / content) for fr in fracs)
            pref = RealScalar.from_rational(content)
    if pref.sign() < 0:
        pref = -pref
        a = tuple(-c for c in a)
    return replace(f, a=a, prefactor=pref)
