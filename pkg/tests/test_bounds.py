import math
from fractions import Fraction

import pytest

from nofbench.bounds import (
    FORMULA_NAMES,
    binary_oneway_lower,
    bound_evaluators,
    det_graph_lower,
    det_graph_upper,
    gt_oneway_lower,
    loglog_n,
    nondet_graph_lower,
    weak_disc_lower,
)


def test_det_graph_lower_example():
    assert det_graph_lower(12, 3, 4, 1) == 1
    assert det_graph_lower(5, 3, 4, 10) == -3
    assert det_graph_upper(7) == 8


def test_loglog_n_identity():
    assert abs(loglog_n(4, 3, 1) - (5 + 3 * math.log2(3))) <= 1e-9
    assert loglog_n(0, 3, 1) is None


def test_oneway_bounds():
    assert gt_oneway_lower(8, 16) == 2
    assert gt_oneway_lower(100, 16) == 4
    assert gt_oneway_lower(3, 1) is None
    assert binary_oneway_lower(6, 3) == 2
    assert binary_oneway_lower(6, 0) is None


def test_nondet_and_weak_disc():
    assert nondet_graph_lower(10, 4, 3, 100) == 6
    assert weak_disc_lower(2, 4, 2) is None  # log of zero
    assert weak_disc_lower(2**20 + 2, 4, 2) == 2


def test_evaluators_skip_missing_inputs():
    out = bound_evaluators(dh=12, k=3, N=4, b=1)
    assert out["det_graph_lower"] == 1
    assert "nondet_graph_lower" not in out and "bhk" not in out
    assert set(out) <= set(FORMULA_NAMES)


def test_evaluators_named():
    out = bound_evaluators(["bhk", "det_sim_bound"], disc=Fraction(1, 8), b=0, N=2, k=3, c_n=2)
    assert out == {"bhk": 2, "det_sim_bound": 10}
    with pytest.raises(KeyError):
        bound_evaluators(["loglog_n"], N=4)


def test_evaluators_reject_negative():
    with pytest.raises(ValueError):
        bound_evaluators(dh=-1)
