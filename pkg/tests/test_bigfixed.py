from fractions import Fraction

import pytest

from goldenbbp.bigfixed import (
    FixedReal,
    fx_add,
    fx_arctan,
    fx_div,
    fx_log,
    fx_mul,
    fx_pi,
    fx_sqrt,
    fx_sub,
)
from goldenbbp.errors import OutOfDomain
from goldenbbp.golden import SQRT5

PI_50 = Fraction(
    "3.14159265358979323846264338327950288419716939937510")
LOG2_50 = Fraction(
    "0.69314718055994530941723212145817656807550013436026")


def taylor_arctan(x: Fraction, terms: int) -> Fraction:
    # independent oracle: exact rational partial sum
    total = Fraction(0)
    xx = x
    for k in range(terms):
        total += xx / (2 * k + 1) if k % 2 == 0 else -xx / (2 * k + 1)
        xx *= x * x
    return total


def residual(a: FixedReal, b: Fraction, p: int) -> FixedReal:
    return abs(fx_sub(a, FixedReal.from_fraction(b, p), p))


def test_from_fraction_truncates_toward_zero():
    v = FixedReal.from_fraction(Fraction(1, 3), 8)
    assert v.mantissa == 85  # floor(256/3)
    w = FixedReal.from_fraction(Fraction(-1, 3), 8)
    assert w.sign == -1 and w.mantissa == 85


def test_decimal_rendering_truncates():
    v = FixedReal.from_fraction(Fraction(2, 3), 64)
    assert v.decimal(6) == "0.666666"
    assert FixedReal.from_int(-3, 16).decimal(2) == "-3.00"


def test_hex_str_round_trip_shape():
    v = FixedReal.from_fraction(Fraction(5, 4), 8)
    assert v.hex_str() == "0x140p-8"


def test_arctan_against_rational_taylor():
    # |x| < 1 so the exact alternating series converges; 220 terms of
    # x = 1/2 leave a tail below 2^-220
    x = Fraction(1, 2)
    oracle = taylor_arctan(x, 220)
    got = fx_arctan(FixedReal.from_fraction(x, 200), 200)
    assert residual(got, oracle, 200).abs_le_pow2(-190)


def test_arctan_reciprocal_range_reduction():
    # arctan(x) + arctan(1/x) = pi/2 for x > 0
    p = 160
    x = FixedReal.from_fraction(Fraction(7, 2), p)
    s = fx_add(fx_arctan(x, p), fx_arctan(fx_div(FixedReal.from_int(1, p), x, p), p), p)
    half_pi = fx_mul(fx_pi(p), FixedReal.from_fraction(Fraction(1, 2), p), p)
    assert abs(fx_sub(s, half_pi, p)).abs_le_pow2(-150)


def test_pi_against_known_digits():
    assert residual(fx_pi(160), PI_50, 160).abs_le_pow2(-155)
    assert fx_pi(128).decimal(38) == "3.14159265358979323846264338327950288419"


def test_log_against_known_digits():
    v = fx_log(FixedReal.from_int(2, 160), 160)
    assert residual(v, LOG2_50, 160).abs_le_pow2(-155)


def test_log_multiplicative():
    p = 160
    l6 = fx_log(FixedReal.from_int(6, p), p)
    l2 = fx_log(FixedReal.from_int(2, p), p)
    l3 = fx_log(FixedReal.from_int(3, p), p)
    assert abs(fx_sub(l6, fx_add(l2, l3, p), p)).abs_le_pow2(-150)


def test_log_rejects_nonpositive():
    with pytest.raises(OutOfDomain):
        fx_log(FixedReal.zero(64), 64)


def test_sqrt_matches_exact_embedding():
    p = 192
    s = fx_sqrt(FixedReal.from_int(5, p), p)
    assert abs(fx_sub(s, SQRT5.embed(p), p)).abs_le_pow2(-185)


def test_sqrt_rejects_negative():
    with pytest.raises(OutOfDomain):
        fx_sqrt(FixedReal.from_int(-1, 64), 64)


def test_compare_abs_and_bounds():
    a = FixedReal.from_fraction(Fraction(1, 8), 64)
    b = FixedReal.from_fraction(Fraction(1, 4), 64)
    assert a.compare_abs(b) < 0
    assert a.abs_le_pow2(-3)
    assert not a.abs_le_pow2(-4)
