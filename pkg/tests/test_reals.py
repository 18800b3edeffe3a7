from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from recurlab.reals import (
    AlphaForm,
    DomainError,
    EnclosedReal,
    InsufficientPrecision,
    MobiusReal,
    QuadraticReal,
    RationalReal,
    as_real,
)

mpmath.mp.dps = 60

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def quad_mp(x: QuadraticReal):
    return mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.d)


def test_rational_real_compare_and_floor():
    x = RationalReal("7/3")
    assert x.compare(2) == 1 and x.compare(Fraction(7, 3)) == 0 and x.compare(3) == -1
    assert x.floor() == 2
    assert RationalReal(-1.5).floor() == -2
    assert as_real("5/8") == RationalReal(Fraction(5, 8))


def test_quadratic_normalises_square_factors():
    x = QuadraticReal(0, 1, 8)
    assert (x.b, x.d) == (2, 2)
    assert QuadraticReal(1, 1, 4).rational == 3


def test_quadratic_field_arithmetic_is_exact():
    r2 = QuadraticReal(0, 1, 2)
    assert r2 * r2 == 2
    g = QuadraticReal(Fraction(-1, 2), Fraction(1, 2), 5)
    assert 1 / g - 1 == g
    assert g * g.conjugate() == -1


def test_quadratic_mixing_fields_raises():
    with pytest.raises(DomainError):
        QuadraticReal(0, 1, 2) + QuadraticReal(0, 1, 3)


@given(fractions, fractions.filter(lambda b: b != 0), st.sampled_from([2, 3, 5, 6, 7, 10, 13]), fractions)
@settings(max_examples=200, deadline=None)
def test_quadratic_compare_matches_mpmath(a, b, d, q):
    x = QuadraticReal(a, b, d)
    expected = mpmath.sign(quad_mp(x) - mpmath.mpf(q.numerator) / q.denominator)
    assert x.compare(q) == int(expected)


@given(fractions, fractions.filter(lambda b: b != 0), st.sampled_from([2, 3, 5]), st.integers(8, 300))
@settings(max_examples=100, deadline=None)
def test_quadratic_enclosure_contains_value_and_has_requested_width(a, b, d, bits):
    x = QuadraticReal(a, b, d)
    lo, hi = x.enclosure(bits)
    assert lo < hi
    assert hi - lo <= Fraction(1, 1 << bits)
    mpmath.mp.prec = bits + 64
    v = quad_mp(x)
    assert mpmath.mpf(lo.numerator) / lo.denominator <= v <= mpmath.mpf(hi.numerator) / hi.denominator
    mpmath.mp.dps = 60


def test_enclosed_real_refinement_is_nested_and_shrinking():
    x = EnclosedReal.from_interval_function(lambda iv: iv.sqrt(2) - 1)
    prev = None
    for bits in (32, 64, 128, 256, 512):
        lo, hi = x.enclosure(bits)
        assert lo < hi
        if prev is not None:
            assert prev[0] <= lo and hi <= prev[1] and hi - lo < prev[1] - prev[0]
        prev = (lo, hi)
    assert x.compare(Fraction(41421356, 100000000)) == 1
    assert x.floor() == 0


def test_enclosed_real_agrees_with_quadratic():
    q = QuadraticReal(-1, 1, 2)
    e = EnclosedReal.from_interval_function(lambda iv: iv.sqrt(2) - 1)
    for c in (Fraction(2, 5), Fraction(5, 12), Fraction(12, 29), Fraction(29, 70), Fraction(70, 169)):
        assert q.compare(c) == e.compare(c)


def test_enclosed_real_cannot_decide_equality():
    third = EnclosedReal.from_interval_function(lambda iv: iv.mpf(1) / 3, max_bits=512)
    with pytest.raises(InsufficientPrecision):
        third.compare(Fraction(1, 3))


def test_alpha_form_arithmetic_and_equality():
    g = QuadraticReal(Fraction(-1, 2), Fraction(1, 2), 5)
    x = AlphaForm(1, -2, g)
    y = AlphaForm(Fraction(1, 2), 3, g)
    assert x + y == AlphaForm(Fraction(3, 2), 1, g)
    assert (x - x) == 0 and (x - x).sign() == 0
    assert 2 * y == AlphaForm(1, 6, g)
    assert hash(AlphaForm(1, 2, g)) == hash(AlphaForm(1, 2, g))
    # 1 - 2g = 2 - sqrt5 < 0
    assert x.sign() == -1
    assert AlphaForm(0, 7, g).frac() == AlphaForm(-4, 7, g)


def test_alpha_form_folds_rational_alpha():
    half = RationalReal(Fraction(1, 2))
    x = AlphaForm(1, 4, half)
    assert x.rational == 3 and x == 3


def test_alpha_forms_over_different_alphas_do_not_mix():
    a, b = QuadraticReal(0, 1, 2), QuadraticReal(0, 1, 2)
    with pytest.raises(DomainError):
        AlphaForm(0, 1, a) + AlphaForm(0, 1, b)


@given(fractions, fractions, st.fractions(min_value=-3, max_value=3, max_denominator=7))
@settings(max_examples=200, deadline=None)
def test_alpha_form_sign_matches_mpmath(u, v, q):
    alpha = QuadraticReal(Fraction(-1, 2), Fraction(1, 2), 5)
    x = AlphaForm(u, v, alpha)
    expected = mpmath.sign(mpmath.mpf(u.numerator) / u.denominator + mpmath.mpf(v.numerator) / v.denominator * quad_mp(alpha) - mpmath.mpf(q.numerator) / q.denominator)
    assert x.compare(q) == int(expected)


def test_alpha_form_sign_near_cancellation_is_exact():
    # 6765 g - 4181 is about 6.6e-5 above zero; 10946 g - 6765 is below
    g = QuadraticReal(Fraction(-1, 2), Fraction(1, 2), 5)
    assert AlphaForm(-4181, 6765, g).sign() == -1 * AlphaForm(-6765, 10946, g).sign()
    big = AlphaForm(-165580141, 267914296, g)
    assert big.sign() == int(mpmath.sign(267914296 * quad_mp(g) - 165580141))


def test_mobius_real_compare():
    g = QuadraticReal(Fraction(-1, 2), Fraction(1, 2), 5)
    # (1 - g)/g = g for the golden mean
    m = MobiusReal(1, -1, 0, 1, g)
    assert m.compare(Fraction(618, 1000)) == 1 and m.compare(Fraction(619, 1000)) == -1
    with pytest.raises(ZeroDivisionError):
        MobiusReal(1, 0, 0, 0, g)
