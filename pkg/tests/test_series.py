"""Truncated series arithmetic against a naive oracle, plus frozen expansions."""

import random
from fractions import Fraction

import pytest

from quotdt.errors import NonIntegralError
from quotdt.series import Series, dt_closed_formula, macmahon, series_pow


def naive_mul(a: tuple, b: tuple) -> tuple:
    n = len(a) - 1
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            out[i + j] += a[i] * b[j]
    return tuple(out)


def random_series(rng: random.Random, order: int = 6) -> Series:
    return Series(
        Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order + 1)
    )


def test_mul_matches_naive():
    rng = random.Random(6021)
    for _ in range(200):
        a, b = random_series(rng), random_series(rng)
        assert (a * b).coeffs == naive_mul(a.coeffs, b.coeffs)


def test_inverse_is_two_sided():
    rng = random.Random(77)
    for _ in range(100):
        a = random_series(rng)
        if not a.coeffs[0]:
            continue
        assert (a * a.inverse()).coeffs == Series.one(a.order).coeffs
    with pytest.raises(ZeroDivisionError):
        Series((0, 1, 2)).inverse()


def test_pow_matches_repeated_mul():
    rng = random.Random(13)
    a = random_series(rng)
    assert a ** 4 == a * a * a * a
    b = random_series(rng)
    assert (b ** -3) * (b ** 3) == Series.one(b.order)


def test_macmahon_coefficients():
    assert macmahon(8).integer_coeffs() == (1, 1, 3, 6, 13, 24, 48, 86, 160)


def test_macmahon_power_coefficients():
    # fixed point counts of P^3: coefficient of q^n in M(q)^4
    assert series_pow(macmahon(4), 4).integer_coeffs() == (1, 4, 18, 64, 215)
    assert series_pow(macmahon(2), -1).integer_coeffs() == (1, -1, -2)


def test_closed_formula_values():
    assert dt_closed_formula(1, -20, 3).integer_coeffs() == (1, 20, 150, 400)
    assert dt_closed_formula(1, -18, 2).integer_coeffs() == (1, 18, 117)
    assert dt_closed_formula(1, -16, 2).integer_coeffs() == (1, 16, 88)
    assert dt_closed_formula(2, -20, 2).integer_coeffs() == (1, -40, 700)
    with pytest.raises(ValueError):
        dt_closed_formula(0, -20, 2)


def test_closed_formula_sign_convention():
    # odd rank flips the sign of q before exponentiating
    m = macmahon(3)
    assert dt_closed_formula(1, -1, 3) == (m.substitute_signed(-1)) ** -1
    assert dt_closed_formula(2, -1, 3) == m ** -2


def test_substitute_signed():
    s = Series((1, 2, 3, 4))
    assert s.substitute_signed(-1).coeffs == (1, -2, 3, -4)
    assert s.substitute_signed(1) is s
    with pytest.raises(ValueError):
        s.substitute_signed(2)


def test_integer_coeffs_raises_on_fractions():
    with pytest.raises(NonIntegralError):
        Series((1, Fraction(1, 2))).integer_coeffs()


def test_order_mismatch_rejected():
    with pytest.raises(ValueError):
        Series((1, 2)) + Series((1, 2, 3))


def test_monomial_and_coeff():
    s = Series.monomial(2, 4, coeff=7)
    assert s.coeff(2) == 7
    assert s.order == 4
    assert s.coeff(0) == 0
    with pytest.raises(ValueError):
        Series.monomial(5, 4)
