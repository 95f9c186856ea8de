"""Smoothed interval indicator psi_Delta and the smoothed character sum.

psi is the 1-periodic indicator of (0, gamma].  psi_Delta is psi convolved
with the unit-mass triangle kernel of half-width Delta, so its Fourier
coefficients are the indicator's coefficients times sinc^2(pi*j*Delta):

    c_j = (1 - e(-j*gamma)) / (2*pi*i*j) * sinc^2(pi*j*Delta),   c_0 = gamma,

g_j = c_j multiplies e(jx), h_j = c_{-j} = conj(c_j) multiplies e(-jx), and
|c_j| <= min(1/(pi j), 1/(pi^3 j^3 Delta^2)) <= min(1/j, 1/(j^2 Delta)) / pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .beatty import BeattyParams
from .characters import DirichletCharacter, roots_of_unity
from .exact import AffineForm, ExactReal, exact, to_fixed, xadd
from .sums import (RootCounts, TWO_PI, as_fixed, charsum_S_counts, csum, phase_error_bound,
                   phases_u64, unit_phases)


@dataclass(frozen=True)
class PiecewiseIndicator:
    """psi(x) = 1 on (0, gamma], 0 on (gamma, 1], period 1."""

    gamma: ExactReal

    def __call__(self, x) -> int:
        f = x - math.floor(x)
        return 1 if 0 < f <= self.gamma else 0


@dataclass(frozen=True, eq=False)
class SmoothedIndicator:
    gamma: ExactReal
    delta: Fraction
    J: int
    g: np.ndarray = field(repr=False)  # g[j-1] for j = 1..J
    h: np.ndarray = field(repr=False)

    @property
    def constant(self) -> ExactReal:
        return self.gamma

    @property
    def truncation_bound(self) -> float:
        """sup_x |psi_Delta(x) - truncated series| <= 2 sum_{j>J} |c_j|."""
        d = float(self.delta)
        return 1.0 / (math.pi**3 * d * d * self.J * self.J)

    def coefficient_constant(self) -> float:
        """Smallest C with max(|g_j|, |h_j|) <= C min(1/j, 1/(j^2 Delta)), j <= J."""
        j = np.arange(1, self.J + 1)
        d = float(self.delta)
        env = np.minimum(1.0 / j, 1.0 / (j * j * d))
        return float(np.max(np.maximum(np.abs(self.g), np.abs(self.h)) / env))


def _check_delta(gamma, delta) -> None:
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie in (0, 1)")
    if not 0 < delta < Fraction(1, 8):
        raise ValueError("Delta must lie in (0, 1/8)")
    if 2 * delta > gamma or 2 * delta > 1 - gamma:
        raise ValueError("Delta must not exceed min(gamma, 1 - gamma)/2")


def build_psi_delta(gamma, delta, J: int) -> SmoothedIndicator:
    gamma = exact(gamma)
    delta = Fraction(delta)
    _check_delta(gamma, delta)
    if J < 1:
        raise ValueError("J must be positive")
    j = np.arange(1, J + 1, dtype=np.int64)
    e_minus = np.conj(unit_phases(to_fixed(gamma), j))
    sinc = np.sinc(j * float(delta))  # numpy sinc is sin(pi x)/(pi x)
    g = (1 - e_minus) / (TWO_PI * 1j * j) * sinc * sinc
    g.setflags(write=False)
    h = np.conj(g)
    h.setflags(write=False)
    return SmoothedIndicator(gamma, delta, J, g, h)


def _ramp(u, d):
    """CDF of the triangle kernel of half-width d at u."""
    if u <= -d:
        return 0
    if u >= d:
        return 1
    if u <= 0:
        return (u + d) * (u + d) / (2 * d * d)
    return 1 - (d - u) * (d - u) / (2 * d * d)


def psi_closed(gamma, d, x):
    """psi_Delta(x) from the piecewise closed form; exact for exact inputs."""
    f = x - math.floor(x)
    total = 0
    for n in (-1, 0, 1):
        total += _ramp(f - n, d) - _ramp(f - n - gamma, d)
    return total


def psi_closed_array(S: SmoothedIndicator, xs) -> np.ndarray:
    x = np.asarray(xs, dtype=np.float64)
    f = x - np.floor(x)
    d, gam = float(S.delta), float(S.gamma)

    def ramp(u):
        return np.where(u <= -d, 0.0, np.where(u >= d, 1.0, np.where(
            u <= 0, (u + d) ** 2 / (2 * d * d), 1 - (d - u) ** 2 / (2 * d * d))))

    return sum(ramp(f - n) - ramp(f - n - gam) for n in (-1, 0, 1))


def psi_fourier_array(S: SmoothedIndicator, xs, chunk: int = 256) -> np.ndarray:
    """gamma + 2 Re sum_{j<=J} g_j e(jx), evaluated in blocks of points."""
    x = np.asarray(xs, dtype=np.float64)
    x = x - np.floor(x)
    j = np.arange(1, S.J + 1, dtype=np.float64)
    out = np.empty_like(x)
    gr, gi = S.g.real, S.g.imag
    for s in range(0, x.size, chunk):
        ang = TWO_PI * np.outer(x[s:s + chunk], j)
        out[s:s + chunk] = float(S.gamma) + 2 * (np.cos(ang) @ gr - np.sin(ang) @ gi)
    return out


def psi_delta_eval(S: SmoothedIndicator, x, mode: str = "closed"):
    if mode == "closed":
        if isinstance(x, float):
            return float(psi_closed_array(S, [x])[0])
        return psi_closed(S.gamma, S.delta, exact(x) if not isinstance(x, Fraction) else x)
    if mode == "fourier":
        return float(psi_fourier_array(S, [float(x)])[0])
    raise ValueError(f"unknown mode {mode!r}")


# --- boundary set and the smoothed sum ---------------------------------------

@dataclass(frozen=True)
class BoundaryScan:
    """Per-m data for M0 < m <= M: psi exact, in-I flag, {gamma m + delta}."""

    ms: np.ndarray
    psi: np.ndarray
    in_I: np.ndarray
    frac: np.ndarray  # float64, filled only where in_I


def scan_boundary(params: BeattyParams, N: int, delta) -> BoundaryScan:
    """Classify every m in (M0, M] against I = [0,D) u (g-D, g+D) u (1-D, 1)."""
    if params.alpha <= 1:
        raise ValueError("needs alpha > 1")
    delta = Fraction(delta)
    if N <= 0:
        e = np.zeros(0, dtype=np.int64)
        return BoundaryScan(e, e.astype(bool), e.astype(bool), e.astype(float))
    gamma = params.gamma
    y = AffineForm(gamma, params.delta)
    cut = {c: y.shifted(v) for c, v in
           (("lo", delta), ("g-", xadd(gamma, -delta)), ("g", gamma),
            ("g+", xadd(gamma, delta)), ("hi", 1 - delta))}
    M0, M = params.M0, params.M(N)
    ms = np.arange(M0 + 1, M + 1, dtype=np.int64)
    psi = np.zeros(ms.size, dtype=bool)
    in_I = np.zeros(ms.size, dtype=bool)
    frac = np.zeros(ms.size)
    for i, m in enumerate(range(M0 + 1, M + 1)):
        fl = y.floor(m)
        inside = (cut["lo"].cmp(m, fl) < 0
                  or (cut["g-"].cmp(m, fl) > 0 and cut["g+"].cmp(m, fl) < 0)
                  or cut["hi"].cmp(m, fl) > 0)
        psi[i] = y.cmp(m, fl) > 0 and cut["g"].cmp(m, fl) <= 0
        if inside:
            in_I[i] = True
            frac[i] = y.frac_scaled(m, 64) * 2.0**-64
    return BoundaryScan(ms, psi, in_I, frac)


def boundary_count_V(params: BeattyParams, N: int, delta) -> int:
    """Number of M0 < m <= M with {gamma m + delta} in I, decided exactly."""
    return int(scan_boundary(params, N, delta).in_I.sum())


@dataclass
class ApproxReport:
    k: int
    N: int
    M0: int
    M: int
    delta: Fraction
    J: int
    substitution: str
    r: int | None
    direct: complex
    smoothed: complex  # sum chi(m) psi_Delta({gamma m + delta}), closed form
    plateau_part: complex
    boundary_part: complex
    boundary_count: int
    fourier: complex | None = None
    fourier_truncation_bound: float | None = None
    substitution_bound: float | None = None
    phase_error: float | None = None
    sandwich_ok: bool = False

    @property
    def gap(self) -> float:
        return abs(self.direct - self.smoothed)


def smoothed_charsum(params: BeattyParams, chi: DirichletCharacter, N: int, delta, J: int,
                     substitution: str = "exact", fourier: bool = True,
                     chunk: int = 64) -> ApproxReport:
    """All pieces of the smoothed approximation to S_k(alpha, beta, chi; N).

    The closed-form smoothed sum uses psi exactly off I (where psi_Delta = psi)
    and the float closed form of psi_Delta on I.  The Fourier side is
    gamma*U(0) + sum_{j<=J} [g_j e(delta j) U(gamma j) + h_j e(-delta j) U(-gamma j)],
    optionally with U(gamma j) replaced by U(r j / k), r = floor(gamma k).
    """
    if substitution not in ("exact", "rational"):
        raise ValueError("substitution must be 'exact' or 'rational'")
    S = build_psi_delta(params.gamma, delta, J)
    scan = scan_boundary(params, N, S.delta)
    direct = charsum_S_counts(params, chi, N).value
    plateau = RootCounts.of(chi, scan.ms[scan.psi & ~scan.in_I]).value
    chis = chi.complex_table[np.mod(scan.ms, chi.modulus)]
    edge = scan.in_I
    boundary_part = csum(chis[edge] * psi_closed_array(S, scan.frac[edge])) if edge.any() else 0j
    smoothed = plateau + boundary_part
    V = int(edge.sum())
    k = chi.modulus
    rep = ApproxReport(k, N, params.M0, params.M(N) if N > 0 else params.M0, S.delta, J,
                       substitution, None, direct, smoothed, plateau, boundary_part, V)
    rep.sandwich_ok = abs(direct - smoothed) <= V
    if not fourier or scan.ms.size == 0:
        return rep

    ms = scan.ms
    gam_fx = to_fixed(params.gamma)
    del_fx = as_fixed(params.delta)
    js = np.arange(1, J + 1, dtype=np.int64)
    ed = unit_phases(del_fx, js)
    r = None
    if substitution == "rational":
        r = (params.gamma * k).floor()
        roots = roots_of_unity(k)
        mk = np.mod(ms, k)
    total = float(S.gamma) * csum(chis)
    for s in range(0, J, chunk):
        jj = js[s:s + chunk]
        if substitution == "exact":
            E = np.exp(TWO_PI * 1j * (phases_u64(gam_fx, np.outer(jj, ms)) >> np.uint64(11))
                       .astype(np.float64) * 2.0**-53)
        else:
            E = roots[(np.outer(np.mod(jj * r, k), mk)) % k]
        U_plus = E @ chis
        U_minus = np.conj(E) @ chis
        total += csum(S.g[s:s + chunk] * ed[s:s + chunk] * U_plus
                      + S.h[s:s + chunk] * np.conj(ed[s:s + chunk]) * U_minus)
    rep.fourier = total
    rep.r = r
    L = ms.size
    rep.fourier_truncation_bound = L * S.truncation_bound
    rep.phase_error = phase_error_bound(L, J * int(np.abs(ms).max())) * 2 * float(
        np.abs(S.g).sum())
    if substitution == "rational":
        abs_m = float(np.abs(ms).sum())
        rep.substitution_bound = float(np.sum(2 * np.abs(S.g) * TWO_PI * js * abs_m / k))
    return rep
