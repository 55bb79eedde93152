import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nofbench.errors import PreconditionError, StructuralError, UnsupportedDimension
from nofbench.functions import BaseFunction, gen_latin, gen_random
from nofbench.stars import (
    Coloring,
    chi_star_exact,
    color_greedy,
    enumerate_stars,
    parse_coloring,
    peel,
    serialize_coloring,
    verify_star_free,
)

from oracles import brute_chi, naive_stars

DIAGONAL = Coloring(2, 2, (0, 1, 1, 0))


def constant(n, N=2, v=0):
    return BaseFunction(2, n, N, (v,) * (n * n))


def as_tuples(stars):
    return [(s.base[0], s.base[1], s.row_partner[0], s.col_partner[1]) for s in stars]


def test_constant_has_no_stars():
    assert enumerate_stars(constant(3)) == []


def test_latin2_has_one_star_per_entry():
    found = enumerate_stars(gen_latin(2))
    assert [s.base for s in found] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    s = found[0]
    assert (s.row_partner, s.col_partner, s.shared_value, s.base_value) == ((1, 0), (0, 1), 1, 0)


@pytest.mark.parametrize("seed", range(5))
def test_stars_match_naive_n4(seed):
    A = gen_random(2, 4, 3, seed)
    assert as_tuples(enumerate_stars(A)) == naive_stars(A)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 4), st.integers(0, 10**9))
def test_stars_match_naive_property(n, N, seed):
    A = gen_random(2, n, N, seed)
    stars = enumerate_stars(A)
    assert as_tuples(stars) == naive_stars(A)
    for s in stars:
        (x, y), (xp, _), (_, yp) = s.entries
        assert x != xp and y != yp
        assert A(xp, y) == A(x, yp) == s.shared_value != A(x, y) == s.base_value


def test_stars_need_two_dims():
    with pytest.raises(UnsupportedDimension):
        enumerate_stars(BaseFunction(3, 2, 2, (0,) * 8))


def test_verify_star_free_examples():
    assert verify_star_free(constant(3), Coloring(3, 1, (0,) * 9)) is None
    bad = verify_star_free(gen_latin(2), Coloring(2, 1, (0,) * 4))
    assert bad is not None and bad.base == (0, 0)
    assert verify_star_free(gen_latin(2), DIAGONAL) is None


def test_verify_size_mismatch():
    with pytest.raises(StructuralError):
        verify_star_free(gen_latin(3), DIAGONAL)


def test_greedy_examples():
    assert color_greedy(constant(4)).colors_used == 1
    c = color_greedy(gen_latin(2))
    assert c.colors_used <= 3
    assert verify_star_free(gen_latin(2), c) is None


def test_chi_examples():
    assert chi_star_exact(constant(3)).value == 1
    res = chi_star_exact(gen_latin(2))
    assert res.value == 2
    assert verify_star_free(gen_latin(2), res.coloring) is None


@pytest.mark.parametrize("seed", range(4))
def test_chi_matches_exhaustive_n3(seed):
    A = gen_random(2, 3, 2, seed)
    want_L, want_witness = brute_chi(A)
    res = chi_star_exact(A)
    assert res.value == want_L
    assert res.coloring.assignment == want_witness


def test_chi_reports_exceeded_limit():
    res = chi_star_exact(gen_latin(2), max_colors=1)
    assert res.exceeded and res.value is None


@pytest.mark.parametrize("seed", range(6))
def test_chi_invariances_and_greedy_upper_bound(seed):
    A = gen_random(2, 4, 3, seed)
    chi = chi_star_exact(A).value
    assert chi <= color_greedy(A).colors_used
    perm = np.array([2, 0, 1])
    relabeled = BaseFunction(2, 4, 3, tuple(int(v) for v in perm[np.array(A.values)]))
    assert chi_star_exact(relabeled).value == chi
    assert chi_star_exact(BaseFunction.from_array(A.table.T, 3)).value == chi


def test_peel_latin2_diagonal():
    trace = peel(gen_latin(2), DIAGONAL)
    assert trace.iterations == 2
    first, second = trace.steps
    assert (first.value, first.color) == (0, 0)
    assert (first.hull_rows, first.hull_cols) == ((0, 1), (0, 1))
    assert (second.value, second.color, second.used_values) == (1, 1, (0,))


def test_peel_constant_single_iteration():
    trace = peel(constant(3), Coloring(3, 1, (0,) * 9))
    assert trace.iterations == 1
    step = trace.steps[0]
    assert len(step.support) == 9 and (step.hull_rows, step.hull_cols) == ((0, 1, 2), (0, 1, 2))


def test_peel_rejects_non_star_free():
    with pytest.raises(PreconditionError):
        peel(gen_latin(2), Coloring(2, 1, (0,) * 4))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 12), st.integers(1, 4), st.integers(0, 10**9))
def test_peel_trace_invariants(n, N, seed):
    A = gen_random(2, n, N, seed)
    coloring = color_greedy(A)
    trace = peel(A, coloring)
    assert trace.steps[0].rows == tuple(range(n)) and trace.steps[0].cols == tuple(range(n))
    for prev, nxt in zip(trace.steps, trace.steps[1:]):
        assert (nxt.rows, nxt.cols) == (prev.hull_rows, prev.hull_cols)
        assert set(nxt.used_values) == set(prev.used_values) | {prev.value}
    assert len({s.color for s in trace.steps}) == trace.iterations <= coloring.colors_used


def test_coloring_file_round_trip():
    c = Coloring(2, 2, (0, 1, 1, 0))
    data = serialize_coloring(c)
    assert data == b"nofcol 1\n2 2\n0 1 1 0\n"
    assert parse_coloring(data) == c
