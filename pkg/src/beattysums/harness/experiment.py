"""Burgess-interval experiments and decay-exponent fits."""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..beatty import BeattyParams
from ..characters import (DirichletCharacter, build_group, burgess_threshold, character_from_index,
                          is_prime, modulus_class, quadratic_character)
from ..smoothing import smoothed_charsum
from ..sums import charsum_S, expsum_U_rational
from .config import ExperimentConfig, parse_real

MIN_FIT_POINTS = 4


@dataclass
class ResultRow:
    k: int
    cls: str
    chi_id: str
    beta: str
    N: int
    abs_S_over_N: float | None = None
    abs_U_over_N: float | None = None
    wall_ms: float | None = None


@dataclass
class DecayFitReport:
    quantity: str                  # 'rho' (from |S|/N vs k) or 'eta' (from |U|/N vs N)
    fitted: bool
    slope: float | None = None
    intercept: float | None = None
    exponent: float | None = None  # -slope
    points: int = 0
    residual_std: float | None = None
    max_abs_residual: float | None = None
    grid: list = field(default_factory=list)      # (x, max ratio) pairs used
    decade_means: dict = field(default_factory=dict)
    note: str = ""


def next_prime(n: int) -> int:
    while not is_prime(n):
        n += 1
    return n


def prev_prime(n: int) -> int:
    while n > 2 and not is_prime(n):
        n -= 1
    return n


def log_spaced_primes(lo: int, hi: int, count: int) -> list[int]:
    """Primes near `count` log-spaced targets in [lo, hi] (distinct, ascending)."""
    if count < 1:
        return []
    targets = [lo] if count == 1 else [lo * (hi / lo) ** (i / (count - 1)) for i in range(count)]
    out: list[int] = []
    for t in targets:
        p = next_prime(int(round(t)))
        if p > hi:
            p = prev_prime(hi)
        if p not in out:
            out.append(p)
    return sorted(out)


def moduli_for(config: ExperimentConfig) -> list[int]:
    ks = list(config.moduli or [])
    if config.prime_range is not None:
        lo, hi, count = config.prime_range
        ks += log_spaced_primes(lo, hi, count)
    if not ks:
        raise ValueError("empty modulus grid")
    return ks


def select_characters(k: int, policy: str, sample: int, rng: random.Random) -> list[DirichletCharacter]:
    group = build_group(k)
    phi = group.phi
    if phi < 2:
        raise ValueError(f"modulus {k} has no non-principal characters")
    if policy == "all":
        return [character_from_index(group, i) for i in range(1, phi)]
    if policy == "quadratic" and k % 2 and is_prime(k):
        return [quadratic_character(k)]
    # random policy, or quadratic where no Legendre symbol exists
    picks = rng.sample(range(1, phi), min(sample, phi - 1))
    return [character_from_index(group, i) for i in sorted(picks)]


def n_for(config: ExperimentConfig, k: int) -> int:
    if config.n_policy == "burgess":
        return math.ceil(burgess_threshold(k, config.eps))
    return int(config.n_policy)


def _delta_for(config: ExperimentConfig, N: int, gamma) -> Fraction | None:
    if config.delta is None:
        return None
    if config.delta == "auto":
        d = N ** ((0.1 - 1) / 2)  # Delta = N^((eta-1)/2) with eta = 1/10
    else:
        d = float(config.delta)
    cap = min(float(gamma), 1 - float(gamma)) / 2
    d = min(d, cap * 0.999, 0.124)
    return Fraction(d).limit_denominator(10**6)


def _charsum_for_k(args) -> tuple[list[ResultRow], int]:
    config, k = args
    rng = random.Random(config.seed * 1_000_003 + k)
    alpha = parse_real(config.alpha)
    N = n_for(config, k)
    cls = modulus_class(k)
    rows, sandwich_failures = [], 0
    for chi in select_characters(k, config.chi_policy, config.chi_sample, rng):
        for b in config.beta_grid:
            params = BeattyParams(alpha, parse_real(b))
            t0 = time.perf_counter()
            S = charsum_S(params, chi, N)
            wall = (time.perf_counter() - t0) * 1e3
            rows.append(ResultRow(k, cls, chi.label, b, N, abs(S) / N,
                                  None, wall if config.record_timings else None))
            if params.alpha > 1:
                delta = _delta_for(config, N, params.gamma)
                if delta is not None:
                    rep = smoothed_charsum(params, chi, N, delta, config.fourier_j or 1,
                                           fourier=config.fourier_j is not None)
                    sandwich_failures += not rep.sandwich_ok
    return rows, sandwich_failures


def _expsum_for_k(args) -> tuple[list[ResultRow], int]:
    config, k = args
    rng = random.Random(config.seed * 1_000_003 + k)
    N = n_for(config, k)
    cls = modulus_class(k)
    rows = []
    for chi in select_characters(k, config.chi_policy, config.chi_sample, rng):
        a_values = rng.sample(range(1, k), min(config.a_samples, k - 1))
        t0 = time.perf_counter()
        best = max(abs(expsum_U_rational(chi, a, k, 0, N)) for a in a_values) / N
        wall = (time.perf_counter() - t0) * 1e3
        rows.append(ResultRow(k, cls, chi.label, "", N, None, best,
                              wall if config.record_timings else None))
    return rows, 0


def _map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def fit_decay(xs, ys, quantity: str) -> DecayFitReport:
    """OLS of log(y) on log(x); the decay exponent is minus the slope."""
    grid = [(int(x), float(y)) for x, y in zip(xs, ys)]
    pos = [(x, y) for x, y in grid if y > 0]
    rep = DecayFitReport(quantity, False, grid=grid, points=len(pos))
    if len(pos) < MIN_FIT_POINTS:
        rep.note = f"fit refused: {len(pos)} usable points (< {MIN_FIT_POINTS})"
        return rep
    lx = np.log([x for x, _ in pos])
    ly = np.log([y for _, y in pos])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    rep.fitted = True
    rep.slope, rep.intercept, rep.exponent = float(slope), float(intercept), float(-slope)
    rep.residual_std = float(np.std(resid, ddof=2)) if len(pos) > 2 else 0.0
    rep.max_abs_residual = float(np.max(np.abs(resid)))
    rep.note = "no reference exponent exists; sign and spread only"
    return rep


def decade_means(grid) -> dict[int, float]:
    buckets: dict[int, list[float]] = {}
    for x, y in grid:
        buckets.setdefault(int(math.floor(math.log10(x))), []).append(y)
    return {d: float(np.mean(v)) for d, v in sorted(buckets.items())}


def max_by(rows: list[ResultRow], key: str, attr: str) -> tuple[list[int], list[float]]:
    best: dict[int, float] = {}
    xs: dict[int, int] = {}
    for r in rows:
        v = getattr(r, attr)
        x = getattr(r, key)
        best[r.k] = max(best.get(r.k, 0.0), v)
        xs[r.k] = x
    ks = sorted(best)
    return [xs[k] for k in ks], [best[k] for k in ks]


@dataclass
class ExperimentResult:
    rows: list[ResultRow]
    report: DecayFitReport
    sandwich_failures: int = 0


def run_burgess_experiment(config: ExperimentConfig) -> ExperimentResult:
    """max over chi, beta of |S_k|/N at N = ceil(B_eps(k)); fit rho from the k-trend."""
    ks = moduli_for(config)
    results = _map(_charsum_for_k, [(config, k) for k in ks], config.threads)
    rows = [r for chunk, _ in results for r in chunk]
    failures = sum(f for _, f in results)
    xs, ys = max_by(rows, "k", "abs_S_over_N")
    report = fit_decay(xs, ys, "rho")
    report.decade_means = decade_means(report.grid)
    return ExperimentResult(rows, report, failures)


def run_expsum_experiment(config: ExperimentConfig) -> ExperimentResult:
    """max over sampled a of |U_k(a/k, chi; 0, N)|/N; fit eta from the N-trend."""
    ks = moduli_for(config)
    results = _map(_expsum_for_k, [(config, k) for k in ks], config.threads)
    rows = [r for chunk, _ in results for r in chunk]
    xs, ys = max_by(rows, "N", "abs_U_over_N")
    # several k can share one N; keep the worst ratio per N
    per_N: dict[int, float] = {}
    for x, y in zip(xs, ys):
        per_N[x] = max(per_N.get(x, 0.0), y)
    report = fit_decay(list(per_N), list(per_N.values()), "eta")
    report.decade_means = decade_means(report.grid)
    return ExperimentResult(rows, report)


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    if config.kind == "charsum":
        return run_burgess_experiment(config)
    return run_expsum_experiment(config)
