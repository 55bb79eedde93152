"""Multicolor discrepancy of 2-D base functions over combinatorial rectangles.

disc(A, S, y) = | |A^-1(y) ∩ S| - |S|/N | / n^2, maximized over rectangles S and
colors y. All comparisons use integers scaled by ``N * n^2``; results are
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cylinders import Rectangle
from .errors import LimitExceeded, PreconditionError, UnsupportedDimension
from .functions import BaseFunction, gen_trace

EXACT_DISC_SIDE = 20
_CHUNK = 1 << 14


@dataclass(frozen=True)
class DiscResult:
    value: Fraction
    rect: Rectangle
    color: int
    family: str  # "rectangles" (exact) or "sampled"

    @property
    def exact(self) -> bool:
        return self.family == "rectangles"


def _scaled_dev(A: BaseFunction, R: Rectangle, y: int) -> int:
    """N * |count_y(R) - |R|/N|, an integer."""
    T = A.table
    block = T[np.ix_(R.row_set, R.col_set)]
    return abs(A.colors * int((block == y).sum()) - block.size)


def disc_point(A: BaseFunction, S: Rectangle, y: int) -> Fraction:
    A.require_2d()
    if not 0 <= y < A.colors:
        raise PreconditionError(f"color {y} outside [0, {A.colors})")
    if S.rows >> A.side or S.cols >> A.side:
        raise PreconditionError("rectangle exceeds the grid")
    return Fraction(_scaled_dev(A, S, y), A.colors * A.side * A.side)


def _subset_matrix(n: int, start: int, stop: int) -> np.ndarray:
    masks = np.arange(start, stop, dtype=np.int64)
    return ((masks[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)


def disc_rect_exact(A: BaseFunction) -> DiscResult:
    """Exact rectangle discrepancy in O(2^n * N * n).

    For fixed color y and row set R the scaled column deviations
    ``N*count - |R|`` add up over columns, so the best column set is either all
    positive or all negative columns. Witness order: color, then row mask, then
    column mask, as integers; the least maximizer is returned.
    """
    A.require_2d()
    n, N = A.side, A.colors
    if n > EXACT_DISC_SIDE:
        raise LimitExceeded(
            f"exact discrepancy limited to n <= {EXACT_DISC_SIDE} (n={n}); use sampling",
            limit_name="--exact",
        )
    T = A.table
    weights = 1 << np.arange(n, dtype=np.int64)
    best = (-1, None, None, None)  # (scaled value, y, rows, cols)
    for y in range(N):
        ind = (T == y).astype(np.int64)
        for start in range(1, 1 << n, _CHUNK):
            stop = min(start + _CHUNK, 1 << n)
            sub = _subset_matrix(n, start, stop)
            dev = N * (sub @ ind) - sub.sum(axis=1)[:, None]
            pos = np.where(dev > 0, dev, 0)
            neg = np.where(dev < 0, -dev, 0)
            pos_sum = pos.sum(axis=1)
            neg_sum = neg.sum(axis=1)
            val = np.maximum(pos_sum, neg_sum)
            i = int(np.argmax(val))  # first maximizer = smallest row mask in the chunk
            if val[i] <= best[0]:
                continue
            rows = start + i
            if val[i] == 0:
                cols = 1
            else:
                pmask = int(((dev[i] > 0) * weights).sum())
                nmask = int(((dev[i] < 0) * weights).sum())
                if pos_sum[i] > neg_sum[i]:
                    cols = pmask
                elif neg_sum[i] > pos_sum[i]:
                    cols = nmask
                else:
                    cols = min(pmask, nmask)
            best = (int(val[i]), y, rows, cols)
    scaled, y, rows, cols = best
    return DiscResult(Fraction(scaled, N * n * n), Rectangle(rows, cols), y, "rectangles")


def disc_rect_sampled(A: BaseFunction, samples: int, seed: int) -> DiscResult:
    """Lower bound on the rectangle discrepancy from a seeded sample of rectangles.

    The full square, every single full row and every single full column are
    always evaluated.
    """
    A.require_2d()
    if samples < 1:
        raise PreconditionError("samples must be >= 1")
    n, N = A.side, A.colors
    full = (1 << n) - 1
    rects = [Rectangle(full, full)]
    rects += [Rectangle(1 << x, full) for x in range(n)]
    rects += [Rectangle(full, 1 << y) for y in range(n)]
    rng = np.random.default_rng(seed)

    def random_mask():
        while True:
            picks = np.flatnonzero(rng.integers(0, 2, size=n))
            if picks.size:
                return sum(1 << int(i) for i in picks)

    for _ in range(samples):
        rows = random_mask()
        rects.append(Rectangle(rows, random_mask()))
    T = A.table
    best = None
    for R in rects:
        block = T[np.ix_(R.row_set, R.col_set)]
        counts = np.bincount(block.ravel(), minlength=N)
        devs = np.abs(N * counts - block.size)
        y = int(np.argmax(devs))
        key = (-int(devs[y]), y, R.rows, R.cols)
        if best is None or key < best:
            best = key
    neg_scaled, y, rows, cols = best
    return DiscResult(Fraction(-neg_scaled, N * n * n), Rectangle(rows, cols), y, "sampled")


def bhk_bound(disc: Fraction, b: int, N: int) -> float | None:
    """log2((1 - 2^b / N) / disc); None where the bound is inapplicable."""
    if disc <= 0 or 2**b >= N:
        return None
    return math.log2((1 - Fraction(2**b, N)) / Fraction(disc))


@dataclass(frozen=True)
class TrendRow:
    q: int
    d: int
    k: int
    side: int
    disc: Fraction
    exact: bool
    neg_log_disc: float
    predictor: float


def tmp_trend(q_list: Sequence[int], d_list: Sequence[int], k: int = 2,
              samples: int = 2000, seed: int = 0) -> list[TrendRow]:
    """-log2 disc of the trace function next to d^2 log2 q / (k^2 2^k).

    Exact when the side fits the exact algorithm, sampled otherwise. Report only.
    """
    if k != 2:
        raise UnsupportedDimension("discrepancy is implemented over rectangles only (k = 2)")
    rows = []
    for q in q_list:
        for d in d_list:
            A = gen_trace(q, d, k)
            if A.side <= EXACT_DISC_SIDE:
                res = disc_rect_exact(A)
            else:
                res = disc_rect_sampled(A, samples, seed)
            rows.append(TrendRow(
                q, d, k, A.side, res.value, res.exact,
                -math.log2(res.value) if res.value > 0 else math.inf,
                d * d * math.log2(q) / (k * k * 2**k),
            ))
    return rows


def format_trend(rows: Sequence[TrendRow]) -> str:
    head = f"{'q':>3} {'d':>3} {'k':>3} {'side':>6} {'disc':>12} {'mode':>8} {'-log2 disc':>11} {'predictor':>10}"
    out = [head]
    for r in rows:
        out.append(
            f"{r.q:>3} {r.d:>3} {r.k:>3} {r.side:>6} {str(r.disc):>12} "
            f"{'exact' if r.exact else 'sampled':>8} {r.neg_log_disc:>11.4f} {r.predictor:>10.4f}"
        )
    return "\n".join(out)
