"""Character sums over Beatty sequences and hybrid exponential sums.

Character values are accumulated exactly as histograms of root-of-unity
exponents (`RootCounts`) and only turned into a complex number at the end.
Exponential phases e(t*m) are reduced mod 1 in fixed point; the vectorised
reduction keeps the top 128 fractional bits of t and works in uint64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .beatty import BeattyParams, member_indices
from .characters import DirichletCharacter, root_sum_is_zero, roots_of_unity
from .exact import FixedPointReal, QuadraticReal, SurdSum, to_fixed

TWO_PI = 2 * math.pi
_MASK64 = (1 << 64) - 1


def csum(values) -> complex:
    """Correctly rounded complex sum (math.fsum on both parts)."""
    v = np.asarray(values, dtype=np.complex128)
    return complex(math.fsum(v.real), math.fsum(v.imag))


@dataclass(frozen=True, eq=False)
class RootCounts:
    """sum_j counts[j] * e(j / order): an exact sum of roots of unity."""

    counts: np.ndarray
    order: int

    @classmethod
    def of(cls, chi: DirichletCharacter, ms) -> "RootCounts":
        ex = chi.values(ms)
        ex = ex[ex >= 0]
        return cls(np.bincount(ex, minlength=chi.order).astype(np.int64), chi.order)

    @property
    def value(self) -> complex:
        roots = roots_of_unity(self.order)
        return csum(self.counts * roots)

    @property
    def terms(self) -> int:
        return int(self.counts.sum())

    def __add__(self, other: "RootCounts") -> "RootCounts":
        if other.order != self.order:
            raise ValueError("root orders differ")
        return RootCounts(self.counts + other.counts, self.order)

    def __eq__(self, other):
        if not isinstance(other, RootCounts):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self.counts, other.counts))

    def is_zero(self) -> bool:
        return root_sum_is_zero(self.counts, self.order)

    def equals_value(self, other: "RootCounts") -> bool:
        """Exact equality of the two complex values (not just the histograms)."""
        return RootCounts(self.counts - other.counts, self.order).is_zero()


# --- S_k -----------------------------------------------------------------

def charsum_S_counts(params: BeattyParams, chi: DirichletCharacter, N: int) -> RootCounts:
    if N < 0:
        raise ValueError("N must be non-negative")
    return RootCounts.of(chi, np.array(params.terms(N), dtype=np.int64))


def charsum_S(params: BeattyParams, chi: DirichletCharacter, N: int) -> complex:
    """sum_{n <= N} chi(floor(alpha*n + beta))."""
    return charsum_S_counts(params, chi, N).value


def charsum_via_membership_counts(params: BeattyParams, chi: DirichletCharacter,
                                  N: int) -> RootCounts:
    if params.alpha <= 1:
        raise ValueError("membership route needs alpha > 1")
    if N <= 0:
        return RootCounts(np.zeros(chi.order, dtype=np.int64), chi.order)
    ms = [m for m, _ in member_indices(params, params.M0, params.M(N))]
    return RootCounts.of(chi, np.array(ms, dtype=np.int64))


def charsum_via_membership(params: BeattyParams, chi: DirichletCharacter, N: int) -> complex:
    """sum_{M0 < m <= M} chi(m) psi(gamma*m + delta) with psi decided exactly."""
    return charsum_via_membership_counts(params, chi, N).value


def split_charsum_counts(split, chi: DirichletCharacter) -> RootCounts:
    """Sum of S_k over the parts of a RangeSplit."""
    total = RootCounts(np.zeros(chi.order, dtype=np.int64), chi.order)
    for part in split:
        total = total + charsum_S_counts(part.params, chi, part.count)
    return total


# --- phases ----------------------------------------------------------------

def as_fixed(t, bits: int = 192) -> FixedPointReal:
    if isinstance(t, FixedPointReal):
        return t if t.fraction_bits == bits else to_fixed(t, bits)
    if isinstance(t, (QuadraticReal, SurdSum, int, Fraction, float)):
        return to_fixed(t, bits)
    raise TypeError(f"unsupported phase type {type(t).__name__}")


def phases_u64(t: FixedPointReal, n) -> np.ndarray:
    """frac(t*n) * 2**64 as uint64 for an int64 array n.

    Absolute error per entry is below 2 units of 2**-64 plus |n| * 2**-128.
    """
    n = np.asarray(n, dtype=np.int64)
    neg = n < 0
    a = np.abs(n)
    bits = t.fraction_bits
    G = t.frac_significand()
    G = G >> (bits - 128) if bits >= 128 else G << (128 - bits)
    g1, g2 = G >> 64, G & _MASK64
    if a.size and int(a.max()) >= 1 << 32:
        out = np.array([(int(x) * g1 + ((int(x) * g2) >> 64)) & _MASK64 for x in a.ravel()],
                       dtype=np.uint64).reshape(a.shape)
    else:
        au = a.astype(np.uint64)
        g2h, g2l = np.uint64(g2 >> 32), np.uint64(g2 & 0xFFFFFFFF)
        with np.errstate(over="ignore"):
            carry = (au * g2h + ((au * g2l) >> np.uint64(32))) >> np.uint64(32)
            out = au * np.uint64(g1) + carry
    with np.errstate(over="ignore"):
        out = np.where(neg, np.uint64(0) - out, out)
    return out


def unit_phases(t: FixedPointReal, n) -> np.ndarray:
    """e(t*n) for an integer array n."""
    u = phases_u64(t, n)
    x = (u >> np.uint64(11)).astype(np.float64) * 2.0**-53
    return np.exp(TWO_PI * 1j * x)


def exact_phase(t: FixedPointReal, n: int) -> complex:
    """e(t*n) from the full-precision fixed-point product (reference path)."""
    bits = t.fraction_bits
    f = (t.significand * n) & ((1 << bits) - 1)
    x = float(Fraction(f, 1 << bits))
    return complex(math.cos(TWO_PI * x), math.sin(TWO_PI * x))


def phase_error_bound(terms: int, n_max: int) -> float:
    """Bound on |sum of e(t m) computed - exact| from phase reduction alone."""
    per_phase = 2.0**-53 + 2.0**-62 + n_max * 2.0**-128
    return terms * TWO_PI * per_phase + terms * 2.0**-50


# --- U_k and V -------------------------------------------------------------

def expsum_U(chi: DirichletCharacter, t, M0: int, M: int) -> complex:
    """sum_{M0 < m <= M} chi(m) e(t*m)."""
    if M0 > M:
        raise ValueError("need M0 <= M")
    if M0 == M:
        return 0j
    m = np.arange(M0 + 1, M + 1, dtype=np.int64)
    vals = chi.complex_table[np.mod(m, chi.modulus)]
    return csum(vals * unit_phases(as_fixed(t), m))


def expsum_U_rational(chi: DirichletCharacter, a: int, k: int, M0: int, M: int) -> complex:
    """U_k(a/k) with the phase a*m mod k computed exactly."""
    if M0 > M:
        raise ValueError("need M0 <= M")
    if M0 == M:
        return 0j
    m = np.arange(M0 + 1, M + 1, dtype=np.int64)
    idx = (np.mod(m, k) * (a % k)) % k
    roots = roots_of_unity(k)
    return csum(chi.complex_table[np.mod(m, chi.modulus)] * roots[idx])


@dataclass(frozen=True)
class SubstitutionGap:
    j: int
    r: int
    U_gamma: complex
    U_rational: complex
    gap: float
    bound: float  # 4*pi*N^2*|j|/k
    rigorous_bound: float  # 2*pi*|j|*sum|m|/k
    ok: bool


def rational_substitution_gap(chi: DirichletCharacter, gamma, j: int, k: int,
                              M0: int, M: int, N: int | None = None) -> SubstitutionGap:
    """Compare U_k(gamma*j) with U_k(r*j/k), r = floor(gamma*k).

    N defaults to M - M0.  The stated bound 4*pi*N^2*|j|/k assumes M <= 2N.
    """
    if j == 0:
        raise ValueError("j must be non-zero")
    gamma = QuadraticReal.coerce(gamma) if not isinstance(gamma, SurdSum) else gamma
    r = (gamma * k).floor()
    N = M - M0 if N is None else N
    U1 = expsum_U(chi, to_fixed(gamma * j), M0, M)
    U2 = expsum_U_rational(chi, r * j, k, M0, M)
    gap = abs(U1 - U2)
    bound = 4 * math.pi * N * N * abs(j) / k
    abs_m = sum(abs(m) for m in range(M0 + 1, M + 1))
    rigorous = TWO_PI * abs(j) * abs_m / k + phase_error_bound(M - M0, abs(j) * max(abs(M0), abs(M)))
    return SubstitutionGap(j, r, U1, U2, gap, bound, rigorous, gap <= bound and gap <= rigorous)


def _segment_primes(lo: int, hi: int) -> np.ndarray:
    """Boolean table: is m prime, for lo < m <= hi."""
    size = hi - lo
    is_p = np.ones(size, dtype=bool)
    ms = np.arange(lo + 1, hi + 1)
    is_p &= ms >= 2
    root = math.isqrt(hi)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for p in range(2, math.isqrt(root) + 1):
        if base[p]:
            base[p * p::p] = False
    for p in np.flatnonzero(base):
        p = int(p)
        start = max(p * p, ((lo + 1 + p - 1) // p) * p)
        if start <= hi:
            is_p[start - lo - 1::p] = False
    return is_p


def _segment_smooth(lo: int, hi: int, y: int) -> np.ndarray:
    """Boolean table: is m y-smooth (all prime factors <= y), for lo < m <= hi."""
    ms = np.arange(lo + 1, hi + 1, dtype=np.int64)
    rest = np.abs(ms)
    small = np.flatnonzero(_segment_primes(0, y)) + 1 if y >= 2 else np.array([], dtype=np.int64)
    for p in small:
        p = int(p)
        pe = p
        while pe <= max(hi, 1):
            start = ((lo + 1 + pe - 1) // pe) * pe
            if start <= hi:
                sl = slice(start - lo - 1, None, pe)
                rest[sl] //= p
            pe *= p
    return (rest == 1) & (ms >= 1)


def indicator_table(f: str, M0: int, M: int) -> np.ndarray:
    """Values of an arithmetic indicator on (M0, M]: 'prime', 'one', 'smooth:<y>'."""
    if M > 10**8:
        raise ValueError("indicator tables are limited to M <= 1e8")
    if f == "one":
        return np.ones(M - M0, dtype=bool)
    if f == "prime":
        return _segment_primes(M0, M)
    if f.startswith("smooth:"):
        return _segment_smooth(M0, M, int(f.split(":", 1)[1]))
    raise ValueError(f"unsupported indicator {f!r}")


def genfunc_sum_V(f: str, t, M0: int, M: int) -> complex:
    """sum_{M0 < m <= M} f(m) e(t*m) for a sieve-backed indicator f."""
    if M0 > M:
        raise ValueError("need M0 <= M")
    table = indicator_table(f, M0, M)
    m = np.arange(M0 + 1, M + 1, dtype=np.int64)[table]
    if m.size == 0:
        return 0j
    return csum(unit_phases(as_fixed(t), m))
