from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from beattysums.beatty import BeattyParams
from beattysums.characters import quadratic_character
from beattysums.exact import QuadraticReal
from beattysums.smoothing import (PiecewiseIndicator, boundary_count_V, build_psi_delta,
                                  psi_closed, psi_closed_array, psi_delta_eval,
                                  psi_fourier_array, scan_boundary, smoothed_charsum)

SQRT2 = QuadraticReal.sqrt(2)
GAMMA = QuadraticReal(0, 1, 2, 2)


def test_plateau_values():
    d = Fraction(1, 100)
    psi = PiecewiseIndicator(GAMMA)
    assert psi_closed(GAMMA, d, Fraction(1, 2)) == 1
    assert psi_closed(GAMMA, d, d) == 1
    assert psi_closed(GAMMA, d, GAMMA - d) == 1
    assert psi_closed(GAMMA, d, GAMMA + d) == 0
    assert psi_closed(GAMMA, d, Fraction(9, 10)) == 0 == psi(Fraction(9, 10))
    mid = psi_closed(GAMMA, d, GAMMA + d / 2)
    assert 0 < mid < 1
    assert psi_closed(GAMMA, d, 0) == Fraction(1, 2)
    assert psi_closed(GAMMA, d, GAMMA) == Fraction(1, 2)


@settings(max_examples=200)
@given(st.fractions(-3, 3), st.sampled_from([Fraction(1, 10), Fraction(1, 37), Fraction(1, 1000)]))
def test_closed_form_is_periodic_and_bounded(x, d):
    v = psi_closed(GAMMA, d, x)
    assert 0 <= v <= 1
    assert v == psi_closed(GAMMA, d, x + 1)
    f = x - (x.numerator // x.denominator)
    if d <= f <= GAMMA - d or GAMMA + d <= f <= 1 - d:
        assert v == PiecewiseIndicator(GAMMA)(x)


def test_input_validation():
    with pytest.raises(ValueError):
        build_psi_delta(GAMMA, Fraction(1, 5), 10)       # Delta >= 1/8
    with pytest.raises(ValueError):
        build_psi_delta(Fraction(1, 10), Fraction(1, 10), 10)  # 2*Delta > gamma
    with pytest.raises(ValueError):
        build_psi_delta(SQRT2, Fraction(1, 100), 10)     # gamma outside (0, 1)
    with pytest.raises(ValueError):
        build_psi_delta(GAMMA, Fraction(1, 100), 0)


def test_coefficients():
    S = build_psi_delta(GAMMA, Fraction(1, 100), 2000)
    assert S.constant == GAMMA
    assert np.allclose(S.h, np.conj(S.g))
    assert S.coefficient_constant() <= 1 / np.pi + 1e-12
    # j=1 coefficient of the raw indicator times the kernel factor
    c1 = (1 - np.exp(-2j * np.pi * float(GAMMA))) / (2j * np.pi) * np.sinc(0.01) ** 2
    assert S.g[0] == pytest.approx(c1)


def test_fourier_series_converges_to_closed_form():
    xs = np.linspace(0, 1, 2001)
    errs = []
    for J in (100, 1000, 10000):
        S = build_psi_delta(GAMMA, Fraction(1, 100), J)
        err = np.max(np.abs(psi_fourier_array(S, xs) - psi_closed_array(S, xs)))
        assert err <= S.truncation_bound + 1e-9
        errs.append(err)
    assert errs == sorted(errs, reverse=True)


def test_eval_modes_agree():
    S = build_psi_delta(GAMMA, Fraction(1, 50), 5000)
    for x in (Fraction(1, 3), 0.7, Fraction(69, 100)):
        closed = float(psi_delta_eval(S, x, "closed"))
        assert psi_delta_eval(S, x, "fourier") == pytest.approx(closed, abs=1e-6)
    with pytest.raises(ValueError):
        psi_delta_eval(S, 0.5, "spline")


def test_boundary_count_examples():
    p = BeattyParams(SQRT2, 0)
    assert boundary_count_V(p, 5, Fraction(1, 100)) == 0
    assert boundary_count_V(p, 0, Fraction(1, 100)) == 0
    # I = [0, D) u (g-D, g+D) u (1-D, 1) has measure 4*Delta
    N, d = 20000, Fraction(14, 100)
    V = boundary_count_V(p, N, d)
    L = p.M(N) - p.M0
    assert abs(V / L - 4 * float(d)) < 0.01


def test_scan_classification_against_floats():
    p = BeattyParams(QuadraticReal.golden(), Fraction(1, 3))
    scan = scan_boundary(p, 300, Fraction(1, 40))
    g = float(p.gamma)
    y = g * scan.ms.astype(float) + float(p.delta)
    f = y - np.floor(y)
    assert np.array_equal(scan.psi, (f > 0) & (f <= g))
    assert np.allclose(scan.frac[scan.in_I], f[scan.in_I], atol=1e-12)


def test_tiny_delta_gives_exact_sum():
    p = BeattyParams(SQRT2, 0)
    chi = quadratic_character(7)
    rep = smoothed_charsum(p, chi, 5, Fraction(1, 10**6), 10, fourier=False)
    assert rep.boundary_count == 0
    assert rep.smoothed == rep.direct == 2


def test_smoothed_report_k101():
    p = BeattyParams(SQRT2, 0)
    chi = quadratic_character(101)
    N = 1000
    delta = Fraction(N ** -0.45).limit_denominator(10**6)
    rep = smoothed_charsum(p, chi, N, delta, 2000)
    assert rep.sandwich_ok
    assert abs(rep.direct - rep.smoothed) <= rep.boundary_count
    assert abs(rep.fourier - rep.smoothed) <= rep.fourier_truncation_bound + rep.phase_error
    rat = smoothed_charsum(p, chi, N, delta, 200, substitution="rational")
    assert rat.r == 71
    assert rat.substitution_bound > 0
