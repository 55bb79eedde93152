import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nofbench.cylinders import Rectangle
from nofbench.discrepancy import (
    bhk_bound,
    disc_point,
    disc_rect_exact,
    disc_rect_sampled,
    format_trend,
    tmp_trend,
)
from nofbench.errors import LimitExceeded, PreconditionError
from nofbench.functions import BaseFunction, gen_latin, gen_random, gen_trace

from oracles import brute_disc

LATIN2 = gen_latin(2)


def zeros(n, N):
    return BaseFunction(2, n, N, (0,) * (n * n))


def test_disc_point_examples():
    assert disc_point(zeros(4, 2), Rectangle.full(4), 0) == Fraction(1, 2)
    assert disc_point(LATIN2, Rectangle.full(2), 0) == 0
    assert disc_point(LATIN2, Rectangle.of([0], [0]), 0) == Fraction(1, 8)
    with pytest.raises(PreconditionError):
        disc_point(LATIN2, Rectangle.full(2), 2)


@pytest.mark.parametrize("n,N", [(1, 2), (3, 2), (4, 3), (5, 5)])
def test_exact_constant(n, N):
    res = disc_rect_exact(zeros(n, N))
    assert res.value == 1 - Fraction(1, N)
    assert (res.rect, res.color) == (Rectangle.full(n), 0)


def test_exact_latin2():
    res = disc_rect_exact(LATIN2)
    assert res.value == Fraction(1, 8)
    assert (res.rect, res.color) == (Rectangle.of([0], [0]), 0)


def test_exact_matches_brute_force_n5():
    A = gen_random(2, 5, 3, seed=4)
    assert disc_rect_exact(A).value == brute_disc(A)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(1, 4), st.integers(0, 10**9))
def test_exact_properties(n, N, seed):
    A = gen_random(2, n, N, seed)
    res = disc_rect_exact(A)
    assert res.value == brute_disc(A)
    assert disc_point(A, res.rect, res.color) == res.value
    assert 0 <= res.value <= 1
    for y in range(N):
        assert res.value >= disc_point(A, Rectangle.full(n), y)


def test_exact_limit():
    with pytest.raises(LimitExceeded):
        disc_rect_exact(gen_random(2, 21, 2, 0))


def test_sampled_examples():
    assert disc_rect_sampled(zeros(6, 3), 5, seed=0).value == Fraction(2, 3)
    assert disc_rect_sampled(LATIN2, 100, seed=0).value == Fraction(1, 8)


@pytest.mark.parametrize("seed", range(5))
def test_sampled_below_exact(seed):
    A = gen_random(2, 8, 3, seed)
    s = disc_rect_sampled(A, 200, seed)
    assert not s.exact
    assert s.value <= disc_rect_exact(A).value
    assert disc_point(A, s.rect, s.color) == s.value
    assert s == disc_rect_sampled(A, 200, seed)


def test_bhk_bound():
    assert bhk_bound(Fraction(1, 8), 0, 2) == 2
    assert bhk_bound(Fraction(1, 2), 0, 2) == 0
    assert bhk_bound(Fraction(1, 8), 1, 2) is None
    assert bhk_bound(Fraction(0), 0, 2) is None


def test_trace_and_table_disc():
    # AND table: the full square deviates by |3 - 2| / 4 for value 0
    assert disc_rect_exact(gen_trace(2, 1, 2)).value == Fraction(1, 4)


def test_trend_rows():
    rows = tmp_trend([2, 3], [1], k=2)
    first = rows[0]
    assert (first.q, first.d, first.k, first.exact) == (2, 1, 2, True)
    assert first.neg_log_disc == 2.0
    assert first.predictor == 1 / 16
    assert rows[1].q == 3 and math.isfinite(rows[1].neg_log_disc)
    assert "-log2 disc" in format_trend(rows)
