import math
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from beattysums.beatty import (BeattyParams, beatty_term, block_length, is_member,
                               member_indices, split_blocks, split_long_range,
                               split_small_alpha)
from beattysums.exact import QuadraticReal
from beattysums.harness.oracles import brute_force_membership

getcontext().prec = 60
SQRT2 = QuadraticReal.sqrt(2)
GOLDEN = QuadraticReal.golden()


def test_terms_of_sqrt2():
    p = BeattyParams(SQRT2, 0)
    assert p.terms(5) == [1, 2, 4, 5, 7]
    assert beatty_term(p, 3) == 4
    assert beatty_term(BeattyParams(GOLDEN, Fraction(1, 2)), 3) == 5
    with pytest.raises(ValueError):
        beatty_term(p, 0)


def test_rejects_bad_alpha():
    with pytest.raises(ValueError):
        BeattyParams(0, 0)
    with pytest.raises(ValueError):
        BeattyParams(-SQRT2, 0)
    with pytest.raises(ValueError):
        is_member(BeattyParams(QuadraticReal(0, 1, 2, 2), 0), 3)


@settings(max_examples=100)
@given(st.integers(1, 10**6), st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(-7, 5)]))
def test_terms_match_decimal_floor(n, beta):
    p = BeattyParams(QuadraticReal.sqrt(3), beta)
    ref = Decimal(n) * Decimal(3).sqrt() + Decimal(beta.numerator) / beta.denominator
    assert p.term(n) == int(ref.to_integral_value(rounding="ROUND_FLOOR"))


def test_membership_examples():
    p = BeattyParams(SQRT2, 0)
    assert is_member(p, 3) is None
    assert is_member(p, 4) == 3
    assert is_member(p, 0) is None
    assert brute_force_membership(SQRT2, 0, 7) == {1: 1, 2: 2, 4: 3, 5: 4, 7: 5}
    assert brute_force_membership(SQRT2, 0, 0) == {}


@pytest.mark.parametrize("alpha,beta", [
    (SQRT2, 0), (GOLDEN, Fraction(1, 3)), (QuadraticReal.sqrt(3), QuadraticReal(0, 1, 2, 2)),
    (QuadraticReal(1, 1, 2, 1), Fraction(-6, 5)), (QuadraticReal(0, 7, 3, 2), Fraction(5, 2)),
])
def test_member_indices_match_brute_force(alpha, beta):
    p = BeattyParams(alpha, beta)
    table = brute_force_membership(alpha, beta, 3000)
    got = dict(member_indices(p, -10, 3000))
    assert got == table
    assert all(is_member(p, m) == table.get(m) for m in range(-10, 3001))


def test_m0_and_range():
    p = BeattyParams(SQRT2, 0)
    assert p.M0 == 0 and p.M(5) == 7
    q = BeattyParams(SQRT2, Fraction(-6, 5))
    assert q.M0 == math.floor(2 ** 0.5 - 1.2 - 1)


def test_small_alpha_split_examples():
    p = BeattyParams(QuadraticReal(0, 1, 2, 2), 0)
    split = split_small_alpha(p, 5)
    assert len(split) == 2 and sorted(split.indices()) == [1, 2, 3, 4, 5]
    tiny = QuadraticReal(0, 1, 2, 10**6) + Fraction(1, 3)
    split3 = split_small_alpha(BeattyParams(tiny, 0), 9)
    assert len(split3) == 3 and sum(part.count for part in split3) == 9
    assert len(split_small_alpha(p, 0)) == 0
    with pytest.raises(ValueError):
        split_small_alpha(BeattyParams(SQRT2, 0), 5)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([QuadraticReal(0, 1, 2, 2), GOLDEN - 1, QuadraticReal(0, 1, 5, 7)]),
       st.sampled_from([Fraction(0), Fraction(1, 7), Fraction(-6, 5), QuadraticReal(0, 1, 2, 2)]),
       st.integers(0, 400))
def test_small_alpha_split_terms_match(alpha, beta, N):
    p = BeattyParams(alpha, beta)
    by_index = {}
    for part in split_small_alpha(p, N):
        for i, n in enumerate(part.indices(), start=1):
            by_index[n] = part.params.term(i)
    assert by_index == {n: p.term(n) for n in range(1, N + 1)}


def test_block_length_examples():
    assert block_length(10**4) == 63
    assert block_length(101) == 7
    for k in (2, 1000, 12345, 99991, 10**6):
        n = block_length(k)
        assert n ** 20 <= k ** 9 < (n + 1) ** 20


def test_long_range_split_examples():
    p = BeattyParams(SQRT2, 0)
    s = split_long_range(p, 150, 10**4)
    assert [part.count for part in s] == [63, 63, 24]
    s = split_long_range(p, 11, 101)
    assert [part.count for part in s] == [7, 4]
    with pytest.raises(ValueError):
        split_long_range(p, 10, 101)
    # N equal to the block length: one block, no tail
    assert [part.count for part in split_blocks(p, 7, 7)] == [7]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 500), st.integers(1, 60))
def test_block_split_terms_match(N, block):
    p = BeattyParams(GOLDEN, Fraction(1, 3))
    got = {}
    for part in split_blocks(p, N, block):
        for i, n in enumerate(part.indices(), start=1):
            got[n] = part.params.term(i)
    assert got == {n: p.term(n) for n in range(1, N + 1)}
