"""Continued fractions, empirical irrationality type, and 1-d discrepancy."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import AffineForm, QuadraticReal, exact


@dataclass(frozen=True)
class ContinuedFraction:
    quotients: tuple[int, ...]
    p: tuple[int, ...]
    q: tuple[int, ...]
    preperiod: int | None = None
    period: int | None = None
    value: QuadraticReal | None = field(default=None, compare=False)

    @classmethod
    def from_quotients(cls, quotients, value=None, preperiod=None, period=None):
        ps, qs = [], []
        p1, p2, q1, q2 = 1, 0, 0, 1
        for a in quotients:
            p1, p2 = a * p1 + p2, p1
            q1, q2 = a * q1 + q2, q1
            ps.append(p1)
            qs.append(q1)
        return cls(tuple(quotients), tuple(ps), tuple(qs), preperiod, period, value)

    def __len__(self):
        return len(self.quotients)

    def convergent(self, i: int) -> Fraction:
        return Fraction(self.p[i], self.q[i])


def cfrac_expand(x, levels: int) -> ContinuedFraction:
    """Partial quotients of an exact real via x -> 1/{x}.

    Complete quotients of a quadratic surd eventually repeat; the first
    repeat fixes (preperiod, period).
    """
    x = exact(x)
    start = x
    seen: dict[QuadraticReal, int] = {}
    quotients: list[int] = []
    pre = per = None
    for i in range(levels):
        if per is None:
            if x in seen:
                pre, per = seen[x], i - seen[x]
            else:
                seen[x] = i
        a = x.floor()
        quotients.append(a)
        f = x - a
        if f == 0:
            break
        x = f.inverse()
    return ContinuedFraction.from_quotients(quotients, start, pre, per)


@dataclass(frozen=True)
class TypeEstimate:
    tau: float
    levels: tuple[tuple[int, float], ...]  # (q_i, ||alpha q_i||)
    ratios: tuple[tuple[int, float], ...]  # (i, log q_{i+1} / log q_i)
    first_level: int
    method: str = "max log(q[i+1])/log(q[i]) over the last quarter of the expansion"


def estimate_type(cf: ContinuedFraction, first_level: int | None = None) -> TypeEstimate:
    """Finite-data proxy for the type tau = limsup log q_{i+1} / log q_i.

    Only the tail i >= max(5, 3*len/4) is used: the ratio behaves like 1 + c/i
    for bounded quotients, so early levels overstate tau.  A finite expansion
    can only bound the limsup from below.
    """
    n = len(cf)
    if n < 5:
        raise ValueError("estimate_type needs at least 5 convergents")
    i_min = first_level if first_level is not None else max(5, 3 * n // 4)
    i_min = min(i_min, n - 2)
    target = cf.value if cf.value is not None else cf.convergent(n - 1)
    levels = []
    for qi, pi in zip(cf.q, cf.p):
        levels.append((qi, abs(float(target * qi - pi)) if qi else float("nan")))
    ratios = []
    for i in range(i_min, n - 1):
        if cf.q[i] >= 2:
            ratios.append((i, math.log(cf.q[i + 1]) / math.log(cf.q[i])))
    if not ratios:
        raise ValueError("no usable convergent levels")
    tau = max(r for _, r in ratios)
    return TypeEstimate(tau, tuple(levels), tuple(ratios), i_min)


# --- discrepancy ------------------------------------------------------------

def beatty_frac_fixed(alpha, beta, M: int, bits: int = 192) -> list[int]:
    """floor({alpha*m + beta} * 2**bits) for m = 1..M, exact."""
    if M < 1:
        raise ValueError("M must be positive")
    form = AffineForm(alpha, beta)
    return [form.frac_scaled(m, bits) for m in range(1, M + 1)]


def beatty_frac_points(alpha, beta, M: int, bits: int = 192) -> np.ndarray:
    """The points {alpha*m + beta}, m = 1..M, in index order, as float64."""
    shift = bits - 53
    fixed = beatty_frac_fixed(alpha, beta, M, bits)
    return np.array([v >> shift for v in fixed], dtype=np.float64) * 2.0**-53


@dataclass(frozen=True)
class DiscrepancyReport:
    M: int
    D: float
    witness: tuple[float, float]  # endpoints (c, d) of a near-extremal interval


def discrepancy(points) -> DiscrepancyReport:
    """Extreme discrepancy over open subintervals (c, d) of [0, 1).

    With sorted points x_1 <= ... <= x_M and u_i = i/M - x_i this is
    1/M + max u - min u.  Points sitting exactly at 0 never lie in an open
    subinterval of [0, 1); they are dropped from the counts (weight 1/M kept)
    and the boundary terms u_0 = 0, u_{M'+1} = (M'+1)/M - 1 take over.
    """
    x = np.sort(np.asarray(points, dtype=np.float64))
    M = len(x)
    if M == 0:
        raise ValueError("empty point set")
    if x[0] < 0 or x[-1] >= 1:
        raise ValueError("points must lie in [0, 1)")
    zeros = int(np.searchsorted(x, 0.0, side="right"))
    if zeros == 0:
        u = np.arange(1, M + 1) / M - x
        i, j = int(np.argmin(u)), int(np.argmax(u))
        D = 1.0 / M + u[j] - u[i]
        lo, hi = sorted((x[i], x[j]))
        return DiscrepancyReport(M, float(D), (float(lo), float(hi)))
    y = x[zeros:]
    Mp = len(y)
    # u over indices 0..Mp+1, the ends being the sentinels 0 and 1
    u = np.empty(Mp + 2)
    u[0] = 0.0
    u[1:-1] = np.arange(1, Mp + 1) / M - y
    u[-1] = (Mp + 1) / M - 1.0
    pos = np.concatenate(([0.0], y, [1.0]))
    best, wit = -np.inf, (0.0, 1.0)
    # intervals slightly larger than [x_i, x_j] (i <= j, real points): 1/M + u_j - u_i
    if Mp:
        inner = u[1:-1]
        run_min = np.minimum.accumulate(inner)
        gain = inner - run_min
        j = int(np.argmax(gain))
        i = int(np.argmin(inner[: j + 1]))
        best, wit = gain[j], (float(y[i]), float(y[j]))
    # open intervals (x_i, x_j), i < j, sentinels allowed: 1/M + u_i - u_j
    run_max = np.maximum.accumulate(u[:-1])
    gain = run_max - u[1:]
    j = int(np.argmax(gain))
    if gain[j] > best:
        i = int(np.argmax(u[: j + 1]))
        best, wit = gain[j], (float(pos[i]), float(pos[j + 1]))
    return DiscrepancyReport(M, float(1.0 / M + best), wit)


@dataclass(frozen=True)
class ShiftRow:
    beta: str
    M: int
    D_beta: float
    D_zero: float
    ratio: float
    scaled: float  # M^(1/tau) * D_beta
    violation: bool


def check_discrepancy_lemmas(alpha, betas, Ms, tau: float | None = None,
                             slack: float = 1e-9) -> list[ShiftRow]:
    """Tabulate D_{alpha,beta}(M) against 2*D_{alpha,0}(M) on a grid.

    `betas` maps labels to exact shifts (or is a sequence of exact shifts).
    """
    alpha = exact(alpha)
    if alpha.is_rational:
        raise ValueError("alpha must be irrational")
    if tau is None:
        tau = estimate_type(cfrac_expand(alpha, 30)).tau
    if not isinstance(betas, dict):
        betas = {str(b): b for b in betas}
    Ms = sorted(Ms)
    top = Ms[-1]
    base = beatty_frac_points(alpha, 0, top)
    D0 = {M: discrepancy(base[:M]).D for M in Ms}
    rows = []
    for label, beta in betas.items():
        pts = base if exact(beta) == 0 else beatty_frac_points(alpha, beta, top)
        for M in Ms:
            D = discrepancy(pts[:M]).D
            rows.append(ShiftRow(label, M, D, D0[M], D / D0[M], M ** (1 / tau) * D,
                                 D > 2 * D0[M] + slack))
    return rows
