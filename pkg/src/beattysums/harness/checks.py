"""The acceptance suite: one function per criterion, shared by `verify` and pytest."""

from __future__ import annotations

import math
import random
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..beatty import (BeattyParams, block_length, is_member, split_blocks, split_long_range,
                      split_small_alpha)
from ..characters import build_group, burgess_threshold, character_from_index, quadratic_character
from ..diophantine import (cfrac_expand, check_discrepancy_lemmas, discrepancy,
                           estimate_type)
from ..exact import QuadraticReal
from ..smoothing import (PiecewiseIndicator, build_psi_delta, psi_closed, psi_closed_array,
                         psi_fourier_array, smoothed_charsum)
from ..sums import (charsum_S_counts, charsum_via_membership_counts, expsum_U_rational,
                    rational_substitution_gap, split_charsum_counts)
from .config import DEFAULT_BETA_GRID, ExperimentConfig, parse_real
from .oracles import brute_force_discrepancy, brute_force_membership

SQRT2 = QuadraticReal.sqrt(2)
SQRT3 = QuadraticReal.sqrt(3)
GOLDEN = QuadraticReal.golden()
STANDARD_ALPHAS = {"sqrt:2": SQRT2, "sqrt:3": SQRT3, "golden": GOLDEN}


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    budget: float | None = None

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(number: int, name: str, budget: float):
    def wrap(fn):
        def run(**kw) -> CheckResult:
            t0 = time.perf_counter()
            passed, detail = fn(**kw)
            dt = time.perf_counter() - t0
            if budget is not None and dt > budget:
                passed, detail = False, f"{detail}; over time budget {budget:.0f}s"
            return CheckResult(number, name, passed, detail, dt, budget)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


# --- shared instance grid ----------------------------------------------------------

def charsum_grid() -> list[tuple]:
    """(params, chi, N) instances with alpha > 1 and N <= 1e4, deterministic."""
    rng = random.Random(20240601)
    alphas = [SQRT2, SQRT3, GOLDEN, QuadraticReal(1, 1, 2, 1), QuadraticReal(0, 3, 5, 2)]
    moduli = [7, 12, 32, 45, 101, 1009]
    Ns = [1, 10, 137, 1000, 10_000]
    out = []
    for i in range(60):
        k = moduli[i % len(moduli)]
        group = build_group(k)
        chi = character_from_index(group, rng.randrange(1, group.phi))
        alpha = alphas[i % len(alphas)]
        beta = parse_real(DEFAULT_BETA_GRID[(i // 2) % len(DEFAULT_BETA_GRID)])
        out.append((BeattyParams(alpha, beta), chi, Ns[(i // 3) % len(Ns)]))
    return out


# --- criteria ------------------------------------------------------------------------

@_timed(1, "membership equivalence", 30)
def check_membership(m_max: int = 10**5):
    betas = {"0": 0, "1/3": Fraction(1, 3), "sqrt2/2": QuadraticReal(0, 1, 2, 2)}
    mismatches = 0
    for alpha in STANDARD_ALPHAS.values():
        for beta in betas.values():
            params = BeattyParams(alpha, beta)
            table = brute_force_membership(alpha, beta, m_max)
            mismatches += sum(is_member(params, m) != table.get(m) for m in range(-3, m_max + 1))
    return mismatches == 0, f"9 (alpha, beta) pairs, m <= {m_max}, {mismatches} mismatches"


@_timed(2, "indicator identity", 60)
def check_indicator_identity():
    grid = charsum_grid()
    bad = [i for i, (p, chi, N) in enumerate(grid)
           if charsum_S_counts(p, chi, N) != charsum_via_membership_counts(p, chi, N)]
    return not bad and len(grid) >= 50, f"{len(grid)} instances, mismatching: {bad}"


@_timed(3, "range decompositions", 60)
def check_decompositions():
    small = [QuadraticReal(0, 1, 2, 2), GOLDEN - 1, SQRT2 - 1, QuadraticReal(0, 1, 3, 3),
             QuadraticReal(0, 1, 7, 10)]
    rng = random.Random(7)
    bad_small = bad_block = n_small = n_block = 0
    for i in range(24):
        alpha = small[i % len(small)]
        beta = parse_real(DEFAULT_BETA_GRID[i % len(DEFAULT_BETA_GRID)])
        params = BeattyParams(alpha, beta)
        N = rng.randrange(1, 3000)
        chi = quadratic_character(101)
        split = split_small_alpha(params, N)
        n_small += 1
        if (sorted(split.indices()) != list(range(1, N + 1))
                or split_charsum_counts(split, chi) != charsum_S_counts(params, chi, N)):
            bad_small += 1
    for i in range(24):
        k = [101, 1009, 10007, 100003][i % 4]
        alpha = [SQRT2, SQRT3, GOLDEN, small[0]][i % 4]
        params = BeattyParams(alpha, parse_real(DEFAULT_BETA_GRID[i % len(DEFAULT_BETA_GRID)]))
        N = math.isqrt(k) + 1 + rng.randrange(0, 5000)
        chi = quadratic_character(k)
        split = split_long_range(params, N, k)
        n_block += 1
        if (split.indices() != list(range(1, N + 1))
                or any(part.count > block_length(k) for part in split)
                or split_charsum_counts(split, chi) != charsum_S_counts(params, chi, N)):
            bad_block += 1
    # the block length example at the threshold itself, via the unguarded splitter
    params = BeattyParams(SQRT2, 0)
    N0 = block_length(101)
    chi = quadratic_character(101)
    edge = split_blocks(params, N0, N0)
    if len(edge) != 1 or split_charsum_counts(edge, chi) != charsum_S_counts(params, chi, N0):
        bad_block += 1
    ok = not bad_small and not bad_block and n_small >= 20 and n_block >= 20
    return ok, (f"alpha<1 split: {n_small} instances, {bad_small} bad; "
                f"block split: {n_block + 1} instances, {bad_block} bad")


@_timed(4, "smoothed indicator properties", 30)
def check_psi_properties():
    gamma = QuadraticReal(0, 1, 2, 2)  # 1/sqrt(2)
    psi = PiecewiseIndicator(gamma)
    rng = random.Random(3)
    notes, ok = [], True
    for delta in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
        S = build_psi_delta(gamma, delta, 10**4)
        # plateau: [delta, gamma - delta] u [gamma + delta, 1 - delta], exact rationals
        lo1, hi1 = delta, gamma - delta
        lo2, hi2 = gamma + delta, 1 - delta
        bad = 0
        n_points = 10**4 // 3 + 1
        for i in range(n_points):
            if i % 2 == 0:
                a, b = lo1, Fraction(math.floor(float(hi1) * 10**9), 10**9)
            else:
                a, b = Fraction(math.ceil(float(lo2) * 10**9), 10**9), hi2
            x = a + (b - a) * Fraction(rng.randrange(0, 10**6 + 1), 10**6)
            if i < 4:
                x = [lo1, hi1, lo2, hi2][i]
            if psi_closed(gamma, delta, x) != psi(x):
                bad += 1
        xs = np.linspace(-1, 2, 30001)
        vals = psi_closed_array(S, xs)
        in_range = bool(vals.min() >= -1e-15 and vals.max() <= 1 + 1e-15)
        C = S.coefficient_constant()
        const_ok = S.constant == gamma
        ok &= bad == 0 and in_range and C <= 2 and const_ok
        notes.append(f"Delta={delta}: plateau misses {bad}/{n_points}, range ok {in_range}, C={C:.3f}")
    return ok, "; ".join(notes)


@_timed(5, "sandwich bound", 60)
def check_sandwich():
    failures, count = [], 0
    for i, (params, chi, N) in enumerate(charsum_grid()):
        g = params.gamma
        delta = Fraction(1, 50)
        while 2 * delta > g or 2 * delta > 1 - g:
            delta /= 2
        rep = smoothed_charsum(params, chi, N, delta, 1, fourier=False)
        count += 1
        if not rep.sandwich_ok:
            failures.append(i)
    return not failures, f"{count} instances, failures: {failures}"


@_timed(6, "Fourier truncation", 30)
def check_fourier_truncation():
    gamma = QuadraticReal(0, 1, 2, 2)
    delta, J = Fraction(1, 100), 10**4
    S = build_psi_delta(gamma, delta, J)
    xs = np.random.default_rng(11).random(10**4)
    err = float(np.max(np.abs(psi_closed_array(S, xs) - psi_fourier_array(S, xs))))
    bound = 2 / (J * float(delta)) + 1e-9
    return err <= bound, f"max deviation {err:.3e} vs bound {bound:.3e}"


@_timed(7, "rational substitution", 60)
def check_rational_substitution():
    params = BeattyParams(SQRT2, 0)
    worst, bad = 0.0, 0
    for k in (101, 1009, 10007):
        chi = quadratic_character(k)
        N = math.ceil(burgess_threshold(k, 0.05)) * 10
        M0, M = params.M0, params.M(N)
        for j in range(1, 21):
            gap = rational_substitution_gap(chi, params.gamma, j, k, M0, M, N)
            worst = max(worst, gap.gap / gap.bound)
            bad += not gap.ok
    return bad == 0, f"60 (k, j) pairs, {bad} violations, worst gap/bound {worst:.3f}"


@_timed(8, "discrepancy oracle and shift inequality", 120)
def check_discrepancy():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for i in range(100):
        M = int(rng.integers(1, 501))
        pts = rng.random(M)
        if i % 10 == 0:
            pts[: M // 3] = np.round(pts[: M // 3] * 8) / 8 % 1.0  # ties and zeros
        worst = max(worst, abs(discrepancy(pts).D - brute_force_discrepancy(pts)))
    betas = {b: parse_real(b) for b in DEFAULT_BETA_GRID}
    violations = 0
    for alpha in STANDARD_ALPHAS.values():
        rows = check_discrepancy_lemmas(alpha, betas, [10**3, 10**4, 10**5])
        violations += sum(r.violation for r in rows)
    ok = worst <= 1e-12 and violations == 0
    return ok, f"oracle max diff {worst:.2e}; {violations} shift-inequality violations on 72 rows"


@_timed(9, "irrationality type", 10)
def check_type():
    notes, ok = [], True
    for name, alpha in (("sqrt2", SQRT2), ("golden", GOLDEN)):
        taus = [estimate_type(cfrac_expand(x, 30)).tau for x in (alpha, alpha.inverse(), alpha * 2)]
        spread = max(taus) - min(taus)
        ok &= 0.95 <= taus[0] <= 1.1 and spread <= 0.1
        notes.append(f"{name}: tau {taus[0]:.3f}, inverse {taus[1]:.3f}, double {taus[2]:.3f}")
    return ok, "; ".join(notes)


@_timed(10, "Gauss sum control", 10)
def check_gauss():
    notes, ok = [], True
    for p in (7, 11, 101, 1009):
        U = expsum_U_rational(quadratic_character(p), 1, p, 0, p)
        good = abs(abs(U) - math.sqrt(p)) <= 1e-6
        if p % 4 == 3:
            good &= abs(U.real) <= 1e-6
        ok &= good
        notes.append(f"p={p}: {U.real:+.6f}{U.imag:+.6f}i")
    return ok, "; ".join(notes)


def default_trend_config(**overrides) -> ExperimentConfig:
    base = dict(kind="charsum", prime_range=[1000, 100_000, 12], eps=0.05, alpha="sqrt:2",
                chi_policy="quadratic", seed=0)
    base.update(overrides)
    return ExperimentConfig(**base)


@_timed(11, "empirical decay trend", 600)
def check_trend():
    from .experiment import run_burgess_experiment
    rep = run_burgess_experiment(default_trend_config()).report
    means = rep.decade_means
    decades = sorted(means)
    first, last = means[decades[0]], means[decades[-1]]
    drop = 1 - last / first
    monotone = all(means[b] <= 1.1 * means[a] for a, b in zip(decades, decades[1:]))
    ok = rep.fitted and rep.exponent > 0 and drop >= 0.2
    return ok, (f"rho_est {rep.exponent:.4f}, decade means "
                + ", ".join(f"1e{d}: {means[d]:.3f}" for d in decades)
                + f", drop {100 * drop:.1f}% (need >= 20%), monotone within 10%: {monotone}")


@_timed(12, "determinism", 120)
def check_determinism():
    import json
    from .cli import main
    cfg = default_trend_config(prime_range=[1000, 20_000, 6], chi_policy="random", chi_sample=2,
                               delta="auto")
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "config.json"
        outs = []
        for run in range(2):
            out = Path(tmp) / f"run{run}.csv"
            data = cfg.to_dict() | {"output": str(out)}
            path.write_text(json.dumps(data))
            main(["experiment", "run", str(path), "--quiet"])
            outs.append(out.read_bytes())
    same = outs[0] == outs[1]
    rows = outs[0].count(b"\n") - 1
    return same, f"two runs, {rows} rows, identical: {same}"


ALL_CHECKS = [check_membership, check_indicator_identity, check_decompositions,
              check_psi_properties, check_sandwich, check_fourier_truncation,
              check_rational_substitution, check_discrepancy, check_type, check_gauss,
              check_trend, check_determinism]


def run_all(selected: list[int] | None = None) -> list[CheckResult]:
    out = []
    for i, check in enumerate(ALL_CHECKS, start=1):
        if selected and i not in selected:
            continue
        out.append(check())
    return out
