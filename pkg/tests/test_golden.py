import random
from fractions import Fraction

import pytest

from goldenbbp.errors import DegenerateArgument
from goldenbbp.golden import QPhi, SQRT5, ZPhi, arctan_arg_combine, fib, lucas, phi_pow


def fib_by_recurrence(n):
    # independent oracle: plain two-term recurrence, extended to negatives
    if n >= 0:
        a, b = 0, 1
        for _ in range(n):
            a, b = b, a + b
        return a
    v = fib_by_recurrence(-n)
    return v if n % 2 else -v


def test_fib_small_values():
    assert [fib(n) for n in range(11)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    assert fib(-3) == 2
    assert fib(-4) == -3


def test_lucas_small_values():
    assert [lucas(n) for n in range(8)] == [2, 1, 3, 4, 7, 11, 18, 29]
    assert lucas(-2) == 3


def test_fib_matches_recurrence():
    for n in range(-1000, 1001):
        assert fib(n) == fib_by_recurrence(n), n


def test_lucas_identity():
    for n in range(-200, 201):
        assert lucas(n) == fib(n - 1) + fib(n + 1)


def test_zphi_multiplication_reduces_phi_squared():
    phi = ZPhi(0, 1)
    assert phi * phi == ZPhi(1, 1)
    assert (phi * phi) * phi == ZPhi(1, 2)


def test_zphi_norm_and_conjugate():
    x = ZPhi(3, -2)
    assert x.norm() == 3 * 3 + 3 * (-2) - (-2) ** 2
    assert x * x.conj() == ZPhi(x.norm(), 0)


def test_norm_multiplicativity_randomized():
    rng = random.Random(12345)
    for _ in range(10_000):
        x = ZPhi(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        y = ZPhi(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        assert (x * y).norm() == x.norm() * y.norm()


def test_phi_power_coefficients():
    for n in range(-50, 51):
        assert phi_pow(n) == QPhi(ZPhi(fib(n - 1), fib(n)))


def test_phi_power_homomorphism_randomized():
    rng = random.Random(99)
    for _ in range(10_000):
        m = rng.randint(-300, 300)
        n = rng.randint(-300, 300)
        assert phi_pow(m) * phi_pow(n) == phi_pow(m + n)


def test_qphi_field_operations():
    x = QPhi(ZPhi(2, 3), 5)
    assert x * x.inverse() == QPhi(1)
    assert x - x == QPhi(0)
    assert QPhi(Fraction(3, 4)) + QPhi(Fraction(1, 4)) == QPhi(1)


def test_sqrt5_squares_to_five():
    assert SQRT5 * SQRT5 == QPhi(5)
    assert SQRT5 == phi_pow(1) * 2 - QPhi(1)


def test_qphi_comparisons():
    assert phi_pow(1) > QPhi(1)
    assert phi_pow(-2) < QPhi(Fraction(1, 2))
    assert QPhi(0).sign() == 0
    assert (phi_pow(3) - phi_pow(3)).sign() == 0


def test_qphi_embed_matches_float():
    v = phi_pow(1).embed(64)
    assert abs(float(v) - (1 + 5**0.5) / 2) < 1e-15


def test_arctan_combine_sum_and_diff():
    x = QPhi(Fraction(1, 2))
    y = QPhi(Fraction(1, 3))
    assert arctan_arg_combine(x, y, "sum") == QPhi(1)
    # arctan(1/2) - arctan(1/3) = arctan(1/7)
    assert arctan_arg_combine(x, y, "diff") == QPhi(Fraction(1, 7))


def test_arctan_combine_degenerate():
    one = QPhi(1)
    with pytest.raises(DegenerateArgument):
        arctan_arg_combine(one, one, "sum")
