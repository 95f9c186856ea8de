import pickle
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from beattysums.exact import (AffineForm, MixedRadicandError, QuadraticReal, SurdSum,
                              floor_mul_sqrt, qr_affine, qr_floor, qr_frac, qr_inverse,
                              squarefree_decomposition, surd_sign, to_fixed)

getcontext().prec = 80


def dec(p, q, d, r):
    """Independent 80-digit evaluation of (p + q*sqrt(d))/r."""
    return (Decimal(p) + Decimal(q) * Decimal(d).sqrt()) / Decimal(r)


def floor_dec(x: Decimal) -> int:
    return int(x.to_integral_value(rounding="ROUND_FLOOR"))


quads = st.tuples(st.integers(-10**6, 10**6), st.integers(-10**4, 10**4),
                  st.sampled_from([2, 3, 5, 6, 7, 10, 13]), st.integers(1, 10**4))


def test_floors_of_standard_values():
    assert qr_floor(QuadraticReal.sqrt(2) * 3) == 4
    assert qr_floor(QuadraticReal.golden()) == 1
    assert qr_frac(QuadraticReal.sqrt(2) * 2) == QuadraticReal.sqrt(8) - 2
    assert qr_inverse(QuadraticReal.golden()) == QuadraticReal(-1, 1, 5, 2)


def test_squarefree_parts():
    assert squarefree_decomposition(12) == (2, 3)
    assert squarefree_decomposition(1) == (1, 1)
    assert QuadraticReal.sqrt(8) == QuadraticReal(0, 2, 2, 1)
    assert QuadraticReal.sqrt(9) == 3


def test_floor_mul_sqrt_small():
    assert [floor_mul_sqrt(q, 2) for q in (1, 2, 3, -1, -3)] == [1, 2, 4, -2, -5]


def test_surd_sign_cases():
    assert surd_sign(3, -2, 2) == 1    # 3 - 2.83
    assert surd_sign(2, -2, 2) == -1
    assert surd_sign(0, 0, 2) == 0
    assert surd_sign(-1, 1, 5) == 1


@settings(max_examples=300)
@given(quads)
def test_floor_matches_decimal(t):
    p, q, d, r = t
    x = QuadraticReal(p, q, d, r)
    assert x.floor() == floor_dec(dec(p, q, d, r))
    assert x.ceil() == -((-x).floor())
    f = x.frac()
    assert 0 <= f < 1


@settings(max_examples=200)
@given(quads, quads)
def test_ordering_matches_decimal(a, b):
    d = a[2]
    x = QuadraticReal(a[0], a[1], d, a[3])
    y = QuadraticReal(b[0], b[1], d, b[3])
    dx, dy = dec(a[0], a[1], d, a[3]), dec(b[0], b[1], d, b[3])
    assert (x < y) == (dx < dy)
    assert (x == y) == (dx == dy)


@settings(max_examples=200)
@given(quads)
def test_inverse_round_trip(t):
    x = QuadraticReal(*t)
    if x == 0:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
        return
    assert x * x.inverse() == 1


def test_mixed_fields_are_rejected_by_quadratic_ops():
    with pytest.raises(MixedRadicandError):
        QuadraticReal.sqrt(2) + QuadraticReal.sqrt(3)
    with pytest.raises(MixedRadicandError):
        qr_affine(QuadraticReal.sqrt(2), 1, QuadraticReal.sqrt(3))


def test_mixed_comparison_falls_back_to_surds():
    assert QuadraticReal.sqrt(2) < QuadraticReal.sqrt(3)
    assert QuadraticReal.sqrt(3) - 1 > QuadraticReal(0, 1, 2, 2)


def test_surd_sum_exact_zero_and_products():
    s = SurdSum.of(QuadraticReal.sqrt(2)) * SurdSum.of(QuadraticReal.sqrt(6))
    assert s.as_quadratic() == QuadraticReal.sqrt(12)
    z = SurdSum.of(QuadraticReal.sqrt(2)) + SurdSum.of(QuadraticReal.sqrt(3)) \
        - SurdSum.of(QuadraticReal.sqrt(3)) - SurdSum.of(QuadraticReal.sqrt(2))
    assert z.is_zero()
    assert z.sign() == 0


@settings(max_examples=150)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 30))
def test_surd_sum_floor_matches_decimal(a, b, c, r):
    s = (SurdSum.of(QuadraticReal(0, b, 2, r)) + SurdSum.of(QuadraticReal(0, c, 3, r))
         + SurdSum.of(Fraction(a, r)))
    ref = (Decimal(a) + Decimal(b) * Decimal(2).sqrt() + Decimal(c) * Decimal(3).sqrt()) / r
    assert s.floor() == floor_dec(ref)
    assert s.sign() == (ref > 0) - (ref < 0)


def test_near_cancellation_is_resolved():
    # 99/70 is a convergent of sqrt(2); the difference is about 7e-5
    x = QuadraticReal.sqrt(2) - Fraction(99, 70)
    assert x.sign() == -1
    # 3363^2 * 2 = 4756^2 + 2, so 3363*sqrt(2) sits just above 4756
    y = QuadraticReal.sqrt(2) * 3363 - 4756
    assert y.floor() == 0 and y.sign() == 1
    assert (-y).floor() == -1


def test_to_fixed_error_and_float():
    x = QuadraticReal.sqrt(2)
    fx = to_fixed(x, 192)
    ref = Decimal(2).sqrt()
    assert abs(Decimal(fx.significand) / Decimal(2) ** 192 - ref) < Decimal(2) ** -192
    assert float(x) == 2 ** 0.5
    with pytest.raises(ValueError):
        to_fixed(x, 32)


def test_pickle_round_trip():
    x = QuadraticReal(1, 3, 5, 7)
    assert pickle.loads(pickle.dumps(x)) == x


@settings(max_examples=100)
@given(st.integers(-10**6, 10**6))
def test_affine_form_single_field(m):
    form = AffineForm(QuadraticReal.sqrt(2), Fraction(1, 3))
    ref = Decimal(m) * Decimal(2).sqrt() + Decimal(1) / 3
    assert form.floor(m) == floor_dec(ref)
    fl = form.floor(m)
    assert form.cmp(m, fl) >= 0 and form.cmp(m, fl + 1) < 0


@settings(max_examples=100)
@given(st.integers(-10**6, 10**6))
def test_affine_form_mixed_fields(m):
    form = AffineForm(QuadraticReal.sqrt(3), QuadraticReal(0, 1, 2, 2))
    ref = Decimal(m) * Decimal(3).sqrt() + Decimal(2).sqrt() / 2
    assert form.floor(m) == floor_dec(ref)
    frac = form.frac_scaled(m, 64)
    exact_frac = ref - floor_dec(ref)
    assert abs(Decimal(frac) / Decimal(2) ** 64 - exact_frac) < Decimal(2) ** -63


def test_affine_exact_integer_values():
    form = AffineForm(QuadraticReal.sqrt(2), -QuadraticReal.sqrt(2))
    assert form.floor(1) == 0 and form.cmp(1, 0) == 0
