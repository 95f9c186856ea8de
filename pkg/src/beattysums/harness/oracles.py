"""Brute-force oracles, kept independent of the paths they check."""

from __future__ import annotations

import numpy as np

from ..beatty import BeattyParams


def brute_force_membership(alpha, beta, m_max: int) -> dict[int, int]:
    """{m: n} for every Beatty term m = floor(alpha*n + beta) with m <= m_max, n >= 1.

    Scans n upward with exact floors until the terms pass m_max.
    """
    params = BeattyParams(alpha, beta)
    if params.alpha <= 1:
        raise ValueError("brute_force_membership needs alpha > 1")
    table: dict[int, int] = {}
    n = 1
    while True:
        m = params.term(n)
        if m > m_max:
            return table
        table[m] = n
        n += 1


def brute_force_discrepancy(points, max_points: int = 500) -> float:
    """sup |V(I)/M - |I|| over open (c, d) in [0, 1), by enumeration.

    Candidate endpoints are 0, 1 and every sample point; at a sample point the
    endpoint may sit just inside or just outside it (one-sided limits, only
    where the widened interval stays inside [0, 1)).  All O(M^2) endpoint
    pairs are enumerated.
    """
    xs = np.sort(np.asarray(points, dtype=np.float64))
    M = xs.size
    if M == 0:
        raise ValueError("empty point set")
    if M > max_points:
        raise ValueError(f"brute force limited to {max_points} points")
    ends = np.unique(np.concatenate(([0.0, 1.0], xs)))
    below = np.searchsorted(xs, ends, side="left")   # points < e
    upto = np.searchsorted(xs, ends, side="right")   # points <= e
    # left end c: count points > c, or >= c when c > 0
    lo_variants = [upto, np.where(ends > 0, below, upto)]
    # right end d: count points < d, or <= d when d < 1
    hi_variants = [below, np.where(ends < 1, upto, below)]
    length = ends[None, :] - ends[:, None]
    valid = length >= 0
    best = 0.0
    for lo in lo_variants:
        for hi in hi_variants:
            count = np.maximum(hi[None, :] - lo[:, None], 0)
            dev = np.abs(count / M - length)
            best = max(best, float(dev[valid].max()))
    return best


def jacobi_symbol(m: int, k: int) -> int:
    """(m | k) for odd k >= 1 by binary quadratic reciprocity."""
    if k < 1 or k % 2 == 0:
        raise ValueError("jacobi_symbol needs odd k >= 1")
    m %= k
    result = 1
    while m:
        while m % 2 == 0:
            m //= 2
            if k % 8 in (3, 5):
                result = -result
        m, k = k, m
        if m % 4 == 3 and k % 4 == 3:
            result = -result
        m %= k
    return result if k == 1 else 0


def legendre_table(p: int) -> np.ndarray:
    return np.array([jacobi_symbol(m, p) for m in range(p)], dtype=np.int64)
