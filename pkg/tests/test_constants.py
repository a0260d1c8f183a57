import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from anyonbounds.constants import (
    FractionClass, bezout_odd_even, c_alpha_limit, c_alpha_n, c_alpha_profile,
    c_beta_n, calpha_scan, classify, diophantine_witness, odd_numerator_witness,
    parse_statistics, positivity_threshold, reduce_and_classify, scan_to_csv,
)


def brute_c(alpha: Fraction, n: int) -> Fraction:
    """Independent oracle: scan q around each (2p+1) alpha / 2."""
    best = None
    for p in range(n - 1):
        x = (2 * p + 1) * alpha
        for q in range(math.floor(x / 2) - 2, math.floor(x / 2) + 3):
            d = abs(x - 2 * q)
            best = d if best is None else min(best, d)
    return best


fractions = st.builds(Fraction, st.integers(-200, 200), st.integers(1, 60))


@pytest.mark.parametrize("p,q,expected", [
    (1, 3, (Fraction(1, 3), FractionClass.ODD_NUMERATOR)),
    (2, 6, (Fraction(1, 3), FractionClass.ODD_NUMERATOR)),
    (2, 3, (Fraction(2, 3), FractionClass.EVEN_NUMERATOR)),
])
def test_reduce_and_classify(p, q, expected):
    assert reduce_and_classify(p, q) == expected


def test_reduce_rejects_bad_denominators():
    with pytest.raises(ZeroDivisionError):
        reduce_and_classify(1, 0)
    with pytest.raises(ValueError):
        reduce_and_classify(1, -3)


def test_parse_statistics():
    assert parse_statistics("2/6") == Fraction(1, 3)
    assert parse_statistics("1") == Fraction(1)
    assert isinstance(parse_statistics("0.25"), float)
    assert classify(0.25) is FractionClass.IRRATIONAL_OR_UNCLASSIFIED


def test_c_alpha_n_examples():
    assert c_alpha_n(1, 17) == 1
    assert c_alpha_n(0, 5) == 0
    assert c_alpha_n(Fraction(1, 3), 2) == Fraction(1, 3)


def test_c_alpha_n_rejects_single_particle():
    with pytest.raises(ValueError):
        c_alpha_n(Fraction(1, 3), 1)


def test_limits_and_thresholds():
    assert c_alpha_limit(Fraction(1, 3)) == (Fraction(1, 3), FractionClass.ODD_NUMERATOR)
    assert c_alpha_limit(Fraction(2, 3)) == (0, FractionClass.EVEN_NUMERATOR)
    assert c_alpha_limit(1) == (1, FractionClass.ODD_NUMERATOR)
    assert positivity_threshold(Fraction(2, 5)) == 4
    assert positivity_threshold(Fraction(2, 3)) == 3
    assert positivity_threshold(Fraction(4, 7)) == 5
    with pytest.raises(ValueError):
        positivity_threshold(Fraction(1, 3))
    with pytest.raises(TypeError):
        c_alpha_limit(0.5)


def test_threshold_matches_brute_force_scan():
    vals = [brute_c(Fraction(4, 7), n) for n in range(2, 11)]
    assert vals.index(0) + 2 == 5


def test_bezout_examples():
    assert bezout_odd_even(3, 2) == (3, -4)
    assert bezout_odd_even(1, 2) == (1, 0)
    x, y = bezout_odd_even(5, 3)
    assert 5 * x + 3 * y == 1 and x % 2 == 1 and y % 2 == 0
    for bad in [(2, 3), (3, 0), (3, 6)]:
        with pytest.raises(ValueError):
            bezout_odd_even(*bad)


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_bezout_fuzz(a, b):
    a = 2 * a + 1
    if b == 0 or math.gcd(a, b) != 1:
        return
    x, y = bezout_odd_even(a, b)
    assert a * x + b * y == 1 and x % 2 == 1 and y % 2 == 0


def test_c_beta_examples():
    assert c_beta_n(0, 4) == 1
    assert c_beta_n(1, 2) == 0
    assert c_beta_n(Fraction(1, 2), 2) == Fraction(1, 2)


def test_diophantine_witness():
    phi = 0.6180339887
    p, q = diophantine_witness(phi, 0.01, 100)
    assert abs((2 * p + 1) * phi - 2 * q) < 0.01
    assert diophantine_witness(0.5, 1e-12, 10) is None
    assert diophantine_witness(2 / 3, 1e-9, 10) == (1, 1)


def test_scan():
    rows = calpha_scan(2, [0, 0.5, 1])
    assert [float(c) for _, c in rows] == [0, 0.5, 1]
    assert calpha_scan(100, [Fraction(1, 3)])[0][1] == Fraction(1, 3)
    assert calpha_scan(3, [Fraction(2, 3)])[0][1] == 0
    assert scan_to_csv(rows).splitlines()[0] == "alpha,c_alpha_n"


@settings(max_examples=200)
@given(fractions, st.integers(2, 40))
def test_matches_brute_force(alpha, n):
    assert c_alpha_n(alpha, n) == brute_c(alpha, n)


@settings(max_examples=200)
@given(fractions, st.integers(2, 60))
def test_bounds_monotone_periodic_symmetric(alpha, n):
    c = c_alpha_n(alpha, n)
    assert 0 <= c <= 1
    assert c_alpha_n(alpha, n + 1) <= c
    assert c_alpha_n(alpha + 2, n) == c
    assert c_alpha_n(-alpha, n) == c


@given(fractions, st.integers(2, 60))
def test_beta_is_shifted_alpha(beta, n):
    assert c_beta_n(beta, n) == c_alpha_n(beta + 1, n)


@given(st.integers(1, 300), st.integers(0, 600), st.integers(2, 1000))
def test_exact_and_float_agree(nu, mu, n):
    a = Fraction(mu % (2 * nu), nu)
    assert abs(float(c_alpha_n(a, n)) - c_alpha_n(float(a), n)) <= 1e-12


@given(fractions.filter(lambda a: a.numerator % 2 == 1))
def test_witness_attains_one_over_nu(alpha):
    p, q = odd_numerator_witness(alpha)
    assert p >= 0
    assert abs((2 * p + 1) * alpha - 2 * q) == Fraction(1, alpha.denominator)


@given(fractions, st.integers(2, 120))
def test_profile_matches_pointwise(alpha, n_max):
    prof = c_alpha_profile(alpha, n_max)
    assert prof == [c_alpha_n(alpha, n) for n in range(2, n_max + 1)]
