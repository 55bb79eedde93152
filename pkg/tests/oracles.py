"""Brute-force oracles. Deliberately naive and independent of the library's algorithms."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def grid(A):
    n = A.side
    return [[A.values[x * n + y] for y in range(n)] for x in range(n)]


def naive_stars(A):
    g = grid(A)
    n = A.side
    out = []
    for x in range(n):
        for y in range(n):
            for xp in range(n):
                for yp in range(n):
                    if x != xp and y != yp and g[xp][y] == g[x][yp] and g[x][y] != g[xp][y]:
                        out.append((x, y, xp, yp))
    return out


def _star_cells(A):
    n = A.side
    return np.array([(x * n + y, xp * n + y, x * n + yp) for x, y, xp, yp in naive_stars(A)],
                    dtype=np.int64).reshape(-1, 3)


def brute_chi(A, max_colors=4):
    """Smallest L with a star-free L-coloring and the lex-first such coloring, by enumeration."""
    cells = A.side * A.side
    trip = _star_cells(A)
    for L in range(1, max_colors + 1):
        if not len(trip):
            return L, (0,) * cells
        # lex order: enumerate a prefix in Python, the suffix as a vectorized block
        suffix = min(cells, 10)
        prefix = cells - suffix
        block = np.array(list(itertools.product(range(L), repeat=suffix)), dtype=np.int8)
        for head in itertools.product(range(L), repeat=prefix):
            cols = np.concatenate([np.tile(np.array(head, dtype=np.int8), (len(block), 1)), block], axis=1)
            a, b, c = cols[:, trip[:, 0]], cols[:, trip[:, 1]], cols[:, trip[:, 2]]
            ok = ~((a == b) & (b == c)).any(axis=1)
            if ok.any():
                return L, tuple(int(v) for v in cols[int(np.argmax(ok))])
    return None, None


def all_rectangles(n):
    for rows in range(1, 1 << n):
        for cols in range(1, 1 << n):
            yield rows, cols


def brute_cover_size(A, scope=None):
    """Minimum number of scope-monochromatic rectangles covering the scope (BFS over unions)."""
    n = A.side
    g = grid(A)
    S = {(x, y) for x in range(n) for y in range(n)} if scope is None else set(scope)
    if not S:
        return 0
    index = {e: i for i, e in enumerate(sorted(S))}
    target = (1 << len(S)) - 1
    sets = set()
    for rows, cols in all_rectangles(n):
        inside = [(x, y) for (x, y) in S if (rows >> x) & 1 and (cols >> y) & 1]
        if inside and len({g[x][y] for x, y in inside}) == 1:
            sets.add(sum(1 << index[e] for e in inside))
    sets = np.array(sorted(sets), dtype=np.int64)
    frontier = np.array([0], dtype=np.int64)
    for size in range(1, len(S) + 1):
        frontier = np.unique((frontier[:, None] | sets[None, :]).ravel())
        if (frontier == target).any():
            return size
    raise AssertionError("singletons always cover")


def brute_disc(A):
    n, N = A.side, A.colors
    g = grid(A)
    best = Fraction(0)
    for rows, cols in all_rectangles(n):
        cells = [g[x][y] for x in range(n) if (rows >> x) & 1 for y in range(n) if (cols >> y) & 1]
        for y in range(N):
            val = abs(Fraction(cells.count(y)) - Fraction(len(cells), N)) / (n * n)
            best = max(best, val)
    return best


def brute_det_cc(A, scope=None, max_depth=12):
    """Bottom-up: the set of rectangles solvable with d bits, grown until the full grid appears."""
    n = A.side
    g = grid(A)
    S = {(x, y) for x in range(n) for y in range(n)} if scope is None else set(scope)

    def const(rows, cols):
        vals = {g[x][y] for (x, y) in S if (rows >> x) & 1 and (cols >> y) & 1}
        return len(vals) <= 1

    def splits(mask):
        sub = (mask - 1) & mask
        while sub:
            yield sub, mask ^ sub
            sub = (sub - 1) & mask

    rects = [(r, c) for r in range(1 << n) for c in range(1 << n)]
    solved = {rc for rc in rects if const(*rc)}
    full = ((1 << n) - 1, (1 << n) - 1)
    for depth in range(max_depth + 1):
        if full in solved:
            return depth
        grown = set(solved)
        for r, c in rects:
            if (r, c) in solved:
                continue
            if any((a, c) in solved and (b, c) in solved for a, b in splits(r)) or \
               any((r, a) in solved and (r, b) in solved for a, b in splits(c)):
                grown.add((r, c))
        solved = grown
    raise AssertionError("depth limit reached")


def brute_best_two_part(A):
    """min over partitions into <= 2 parts of ceil(log2 #parts) + max part det complexity."""
    n = A.side
    cells = [(x, y) for x in range(n) for y in range(n)]
    best = brute_det_cc(A)
    for k in range(1, len(cells)):
        for part in itertools.combinations(cells, k):
            rest = [e for e in cells if e not in part]
            best = min(best, 1 + max(brute_det_cc(A, part), brute_det_cc(A, rest)))
    return best
