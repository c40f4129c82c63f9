from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from sparselim.highprec import (
    MINUS_INFINITY,
    HighPrecisionValue,
    exp_value,
    ln2_fixed,
    log_rational,
)

ORACLE_PREC = 600


def mp_of(x):
    q = x.to_fraction() if isinstance(x, HighPrecisionValue) else Fraction(x)
    return mpmath.mpf(q.numerator) / q.denominator


def rel_err(approx, exact):
    with mpmath.workprec(ORACLE_PREC):
        a = mp_of(approx)
        return abs(a - exact) / abs(exact) if exact != 0 else abs(a)


positive_rationals = st.builds(
    Fraction,
    st.integers(1, 10**60),
    st.integers(1, 10**60),
)


@given(positive_rationals, st.sampled_from([1, 3, 4096, 40000]), st.sampled_from([64, 128, 200]))
def test_log_matches_mpmath(q, scale, bits):
    with mpmath.workprec(ORACLE_PREC):
        exact = scale * mpmath.log(mp_of(q))
        if q == 1:
            assert log_rational(q, bits, scale).is_zero()
            return
        assert rel_err(log_rational(q, bits, scale), exact) <= mpmath.mpf(2) ** (-bits + 1)


@pytest.mark.parametrize("gap_bits", [10, 100, 400, 3000])
def test_log_near_one_keeps_relative_precision(gap_bits):
    q = 1 + Fraction(1, 2**gap_bits)
    with mpmath.workprec(gap_bits + ORACLE_PREC):
        exact = mpmath.log1p(mpmath.mpf(2) ** -gap_bits)
        assert rel_err(log_rational(q), exact) <= mpmath.mpf(2) ** -127


def test_ln2_constant():
    with mpmath.workprec(ORACLE_PREC):
        assert abs(mpmath.mpf(ln2_fixed(300)) / mpmath.mpf(2) ** 300 - mpmath.log(2)) < mpmath.mpf(2) ** -298


@given(st.fractions(min_value=-2000, max_value=2000, max_denominator=10**6))
def test_exp_matches_mpmath(x):
    with mpmath.workprec(ORACLE_PREC):
        exact = mpmath.exp(mp_of(x))
        assert rel_err(exp_value(x), exact) <= mpmath.mpf(2) ** -127


def test_log_rejects_nonpositive():
    with pytest.raises(ValueError):
        log_rational(0)
    with pytest.raises(ValueError):
        log_rational(Fraction(-1, 3))


def test_from_fraction_rounds_to_nearest():
    v = HighPrecisionValue.from_fraction(Fraction(1, 3), 64)
    assert v.mantissa.bit_length() == 64
    assert abs(v.to_fraction() - Fraction(1, 3)) <= Fraction(1, 3) / 2**64
    assert HighPrecisionValue.from_fraction(Fraction(-5, 4)).to_fraction() == Fraction(-5, 4)
    assert HighPrecisionValue.from_fraction(0).is_zero()


def test_minimum_precision():
    with pytest.raises(ValueError):
        HighPrecisionValue(1, 1, 0, 32)


def test_decimal_digits():
    v = HighPrecisionValue.from_fraction(Fraction(2, 3), 128)
    s = v.to_decimal()
    assert v.decimal_digits == 39
    assert s.startswith("0.666666") and len(s.rstrip("0").split(".")[1]) <= 39
    assert HighPrecisionValue.zero().to_decimal() == "0"
    assert str(MINUS_INFINITY) == "-inf"


def test_comparisons():
    a = log_rational(Fraction(80, 81), 128, 100)
    assert a < -1 and a > Fraction(-5, 4) and abs(a) >= 1 and -a <= 2
