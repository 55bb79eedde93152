"""Closed-form bounds relating graph functions, lifts and communication with help.

Pure arithmetic on supplied measure values; all logarithms are base 2. A
formula whose logarithm argument is not positive evaluates to ``None``.

Naming: ``dh`` is deterministic complexity with help D^h_{k-1,b}(A), ``nh`` the
nondeterministic counterpart N^h_{k-1,b}(A), ``N`` the number of values of A and
``k`` the number of players of the lifted function.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cylinders import det_sim_bound
from .discrepancy import bhk_bound


def _log2(x) -> float | None:
    return math.log2(x) if x > 0 else None


def det_graph_lower(dh, k, N, b):
    """Lower bound on D_k(Lift(A)): min(dh - (k-1) N, b)."""
    return min(dh - (k - 1) * N, b)


def det_graph_upper(dh):
    """Upper bound on D_k(Lift(A)): dh + 1."""
    return dh + 1


def nondet_graph_lower(nh, N, k, b):
    """Lower bound on N^1_k(Lift(A)): min(nh - log N - k + 1, b)."""
    logN = _log2(N)
    if logN is None:
        return None
    return min(nh - logN - k + 1, b)


def nondet_graph_upper(nh):
    return nh + 1


def loglog_n(N, k, c):
    """log log n reachable by trace functions: log N + k + 3 log k + 2 log c."""
    parts = [_log2(N), _log2(k), _log2(c)]
    if None in parts:
        return None
    logN, logk, logc = parts
    return logN + k + 3 * logk + 2 * logc


def gt_oneway_lower(dh, N):
    """One-way bound for the greater-than lift: min(dh / log N, log N), dh at b = log N - 1."""
    logN = _log2(N)
    if not logN:
        return None
    return min(dh / logN, logN)


def binary_oneway_lower(dh, b):
    """One-way bound for the binary lift: min(dh / b, b)."""
    if b <= 0:
        return None
    return min(dh / b, b)


def weak_disc_lower(dh, N, k):
    """min(log(dh - log N) - log k - k, log N), dh at b = log N - 1."""
    logN = _log2(N)
    if logN is None:
        return None
    inner = _log2(dh - logN)
    logk = _log2(k)
    if inner is None or logk is None:
        return None
    return min(inner - logk - k, logN)


_FORMULAS = {
    "det_graph_lower": (det_graph_lower, ("dh", "k", "N", "b")),
    "det_graph_upper": (det_graph_upper, ("dh",)),
    "nondet_graph_lower": (nondet_graph_lower, ("nh", "N", "k", "b")),
    "nondet_graph_upper": (nondet_graph_upper, ("nh",)),
    "loglog_n": (loglog_n, ("N", "k", "c")),
    "gt_oneway_lower": (gt_oneway_lower, ("dh", "N")),
    "binary_oneway_lower": (binary_oneway_lower, ("dh", "b")),
    "weak_disc_lower": (weak_disc_lower, ("dh", "N", "k")),
    "det_sim_bound": (det_sim_bound, ("k", "c_n")),
    "bhk": (bhk_bound, ("disc", "b", "N")),
}

FORMULA_NAMES = tuple(_FORMULAS)


def bound_evaluators(names=None, **inputs) -> dict:
    """Evaluate every named formula whose inputs are all supplied.

    With ``names`` given, exactly those formulas are evaluated and a missing
    input raises ``KeyError``. Values are ``None`` where the formula is
    inapplicable.
    """
    for key, v in inputs.items():
        if v is not None and v < 0:
            raise ValueError(f"input {key}={v} must be non-negative")
    if "disc" in inputs and inputs["disc"] is not None:
        inputs["disc"] = Fraction(inputs["disc"])
    wanted = FORMULA_NAMES if names is None else tuple(names)
    out = {}
    for name in wanted:
        fn, args = _FORMULAS[name]
        if names is None and any(inputs.get(a) is None for a in args):
            continue
        out[name] = fn(*(inputs[a] for a in args))
    return out
