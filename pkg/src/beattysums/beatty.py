"""Beatty sequences floor(alpha*n + beta), membership, and range splits."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .exact import AffineForm, ExactReal, QuadraticReal, exact, xadd, xmul


@dataclass(frozen=True, eq=False)
class BeattyParams:
    alpha: ExactReal
    beta: ExactReal = QuadraticReal(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", exact(self.alpha))
        object.__setattr__(self, "beta", exact(self.beta))
        if not isinstance(self.alpha, QuadraticReal):
            raise ValueError("alpha must lie in a single quadratic field")
        if self.alpha.sign() <= 0:
            raise ValueError("alpha must be positive")

    @cached_property
    def gamma(self) -> QuadraticReal:
        return self.alpha.inverse()

    @cached_property
    def delta(self) -> ExactReal:
        return xmul(self.gamma, xadd(1, xmul(self.beta, -1)))

    @cached_property
    def a(self) -> int:
        return self.gamma.ceil()

    @cached_property
    def terms_form(self) -> AffineForm:
        return AffineForm(self.alpha, self.beta)

    @cached_property
    def membership_forms(self) -> tuple[AffineForm, AffineForm]:
        # y(m) = gamma*m + delta = gamma*(m - beta + 1), and y(m) - gamma
        y = AffineForm(self.gamma, self.delta)
        return y, y.shifted(self.gamma)

    @property
    def M0(self) -> int:
        return xadd(xadd(self.alpha, self.beta), -1).floor()

    def M(self, N: int) -> int:
        return self.terms_form.floor(N)

    def term(self, n: int) -> int:
        return self.terms_form.floor(n)

    def terms(self, N: int, start: int = 1) -> list[int]:
        f = self.terms_form.floor
        return [f(n) for n in range(start, N + 1)]

    def shifted(self, offset) -> "BeattyParams":
        """Parameters for the index shift n -> n + offset (beta + alpha*offset)."""
        return BeattyParams(self.alpha, xadd(self.beta, xmul(self.alpha, offset)))

    def __repr__(self):
        return f"BeattyParams(alpha={self.alpha}, beta={self.beta})"


def beatty_term(params: BeattyParams, n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return params.term(n)


def is_member(params: BeattyParams, m: int) -> int | None:
    """The n >= 1 with floor(alpha*n + beta) = m, or None.

    Uses 0 < {y} <= gamma with y = gamma*(m - beta + 1); when it holds the
    index is n = floor(y).
    """
    if params.alpha <= 1:
        raise ValueError("membership test needs alpha > 1")
    y, y_minus_gamma = params.membership_forms
    n = y.floor(m)
    if y.cmp(m, n) > 0 and y_minus_gamma.cmp(m, n) <= 0 and n >= 1:
        return n
    return None


def member_indices(params: BeattyParams, lo: int, hi: int) -> list[tuple[int, int]]:
    """All (m, n) with lo < m <= hi and m = floor(alpha*n + beta), n >= 1."""
    if params.alpha <= 1:
        raise ValueError("membership test needs alpha > 1")
    y, y_minus_gamma = params.membership_forms
    out = []
    for m in range(lo + 1, hi + 1):
        n = y.floor(m)
        if n >= 1 and y.cmp(m, n) > 0 and y_minus_gamma.cmp(m, n) <= 0:
            out.append((m, n))
    return out


@dataclass(frozen=True)
class SubRange:
    """Indices n = stride*i + offset for i = 1..count, with their own params."""

    params: BeattyParams
    count: int
    stride: int = 1
    offset: int = 0

    def indices(self) -> range:
        return range(self.stride + self.offset, self.stride * self.count + self.offset + 1, self.stride)


@dataclass(frozen=True)
class RangeSplit:
    parts: tuple[SubRange, ...]

    def indices(self) -> list[int]:
        return [n for part in self.parts for n in part.indices()]

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def split_small_alpha(params: BeattyParams, N: int) -> RangeSplit:
    """Write n = a*m + j (a = ceil(1/alpha)) to reach slope alpha*a >= 1.

    Class j = 0 uses m >= 1; classes j >= 1 include m = 0, so their params are
    shifted back one step: floor(alpha*a*(i-1) + alpha*j + beta) for i >= 1.
    """
    if params.alpha >= 1:
        raise ValueError("split_small_alpha needs alpha < 1")
    if N <= 0:
        return RangeSplit(())
    a = params.a
    slope = xmul(params.alpha, a)
    parts = []
    for j in range(a):
        if j == 0:
            count, offset = N // a, 0
        else:
            count, offset = ((N - j) // a + 1 if j <= N else 0), j - a
        beta = xadd(params.beta, xmul(params.alpha, offset))
        parts.append(SubRange(BeattyParams(slope, beta), count, a, offset))
    return RangeSplit(tuple(parts))


def split_blocks(params: BeattyParams, N: int, block: int) -> RangeSplit:
    """Consecutive blocks of length `block` plus a shorter tail (possibly empty)."""
    if block < 1:
        raise ValueError("block length must be positive")
    t = N // block
    parts = [SubRange(params.shifted(j * block), block, 1, j * block) for j in range(t)]
    if N - t * block:
        parts.append(SubRange(params.shifted(t * block), N - t * block, 1, t * block))
    return RangeSplit(tuple(parts))


def block_length(k: int) -> int:
    """N0 = floor(k^(9/20)), computed exactly as the integer 20th root of k^9."""
    target = k**9
    n = int(round(k ** 0.45))
    while n**20 > target:
        n -= 1
    while (n + 1) ** 20 <= target:
        n += 1
    return n


def split_long_range(params: BeattyParams, N: int, k: int) -> RangeSplit:
    if N * N <= k:
        raise ValueError("split_long_range needs N > sqrt(k)")
    return split_blocks(params, N, block_length(k))
