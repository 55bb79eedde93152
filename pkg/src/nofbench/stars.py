"""A-stars of 2-dimensional base functions, star-free colorings and the peeling procedure.

An A-star is a triple of entries (x, y), (x', y), (x, y') with x != x', y != y',
A(x', y) == A(x, y') == z and A(x, y) != z. A coloring of the entries is
star-free when no A-star has all three entries in one color.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import (
    HeaderError,
    InvariantViolation,
    LengthError,
    MagicError,
    PreconditionError,
    StructuralError,
    ValueRangeError,
)
from .functions import BaseFunction, _strict_ints

COLORING_MAGIC = "nofcol 1"

Entry = tuple[int, int]


@dataclass(frozen=True, order=True)
class Star:
    base: Entry
    row_partner: Entry
    col_partner: Entry
    shared_value: int
    base_value: int

    @property
    def entries(self) -> tuple[Entry, Entry, Entry]:
        return (self.base, self.row_partner, self.col_partner)


@dataclass(frozen=True)
class Coloring:
    side: int
    colors_used: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.assignment, tuple):
            object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))
        if len(self.assignment) != self.side * self.side:
            raise StructuralError(
                f"coloring has {len(self.assignment)} entries, expected {self.side ** 2}"
            )
        if self.colors_used < 1:
            raise StructuralError("colors_used must be >= 1")
        for i, c in enumerate(self.assignment):
            if not 0 <= c < self.colors_used:
                raise StructuralError(f"color {c} at flat index {i} outside [0, {self.colors_used})")

    def __call__(self, x: int, y: int) -> int:
        return self.assignment[x * self.side + y]

    @property
    def table(self) -> np.ndarray:
        return np.array(self.assignment, dtype=np.int64).reshape(self.side, self.side)


def star_array(A: BaseFunction) -> np.ndarray:
    """All stars as an ``(S, 4)`` array of ``(x, y, x', y')`` in lexicographic order."""
    A.require_2d()
    T = A.table
    n = A.side
    chunks = []
    # per-x chunks keep the n^3 boolean block small
    for x in range(n):
        base = T[x, :][:, None, None]  # (y, 1, 1)
        rowp = T[:, :].T[:, :, None]  # (y, x', 1): A(x', y)
        colp = T[x, :][None, None, :]  # (1, 1, y'): A(x, y')
        mask = (rowp == colp) & (rowp != base)
        mask[:, x, :] = False
        idx = np.arange(n)
        mask[idx, :, idx] = False
        ys, xps, yps = np.nonzero(mask)
        if ys.size:
            chunks.append(np.stack([np.full_like(ys, x), ys, xps, yps], axis=1))
    if not chunks:
        return np.zeros((0, 4), dtype=np.int64)
    return np.concatenate(chunks).astype(np.int64)


def _make_star(A: BaseFunction, x: int, y: int, xp: int, yp: int) -> Star:
    T = A.table
    return Star((x, y), (xp, y), (x, yp), int(T[xp, y]), int(T[x, y]))


def enumerate_stars(A: BaseFunction) -> list[Star]:
    return [_make_star(A, *map(int, row)) for row in star_array(A)]


def star_triples(A: BaseFunction) -> np.ndarray:
    """Stars as flat entry indices ``(base, row_partner, col_partner)``."""
    s = star_array(A)
    n = A.side
    return np.stack([s[:, 0] * n + s[:, 1], s[:, 2] * n + s[:, 1], s[:, 0] * n + s[:, 3]], axis=1)


def iter_monochromatic(A: BaseFunction, coloring: Coloring) -> Iterator[Star]:
    _check_sizes(A, coloring)
    s = star_array(A)
    if not len(s):
        return
    C = coloring.table
    mono = (C[s[:, 0], s[:, 1]] == C[s[:, 2], s[:, 1]]) & (C[s[:, 0], s[:, 1]] == C[s[:, 0], s[:, 3]])
    for row in s[mono]:
        yield _make_star(A, *map(int, row))


def _check_sizes(A: BaseFunction, coloring: Coloring) -> None:
    A.require_2d()
    if coloring.side != A.side:
        raise StructuralError(f"coloring side {coloring.side} does not match function side {A.side}")


def verify_star_free(A: BaseFunction, coloring: Coloring) -> Star | None:
    """Return None when star-free, else the lexicographically first monochromatic star."""
    return next(iter_monochromatic(A, coloring), None)


def _partner_lists(triples: np.ndarray, cells: int) -> list[list[tuple[int, int]]]:
    partners: list[list[tuple[int, int]]] = [[] for _ in range(cells)]
    for a, b, c in triples.tolist():
        partners[a].append((b, c))
        partners[b].append((a, c))
        partners[c].append((a, b))
    return partners


def color_greedy(A: BaseFunction) -> Coloring:
    """Row-major first-fit coloring; always star-free since a fresh color never closes a star."""
    A.require_2d()
    cells = A.side * A.side
    partners = _partner_lists(star_triples(A), cells)
    colors = [-1] * cells
    for e in range(cells):
        forbidden = set()
        for a, b in partners[e]:
            ca = colors[a]
            if ca >= 0 and ca == colors[b]:
                forbidden.add(ca)
        c = 0
        while c in forbidden:
            c += 1
        colors[e] = c
    result = Coloring(A.side, max(colors) + 1, tuple(colors))
    bad = verify_star_free(A, result)
    if bad is not None:
        raise InvariantViolation(f"greedy coloring left monochromatic star {bad}")
    return result


@dataclass(frozen=True)
class ChiResult:
    value: int | None
    coloring: Coloring | None
    exceeded: bool
    nodes: int


class _Budget(Exception):
    pass


def _search(order, partners, cells, L, node_limit, counter):
    """DFS for an L-coloring along ``order``; new colors appear in increasing order."""
    colors = [-1] * cells

    def conflict(e, c):
        for a, b in partners[e]:
            if colors[a] == c and colors[b] == c:
                return True
        return False

    def rec(pos, used):
        counter[0] += 1
        if counter[0] > node_limit:
            raise _Budget
        if pos == len(order):
            return True
        e = order[pos]
        for c in range(min(used + 1, L)):
            if conflict(e, c):
                continue
            colors[e] = c
            if rec(pos + 1, max(used, c + 1)):
                return True
            colors[e] = -1
        return False

    return colors if rec(0, 0) else None


def chi_star_exact(A: BaseFunction, max_colors: int = 4, node_limit: int = 5_000_000) -> ChiResult:
    """Minimum number of colors of a star-free coloring, by branch and bound.

    Feasibility for each L is decided with entries ordered by decreasing star
    degree; the witness is then the lexicographically least optimal assignment
    (a row-major search whose first hit is lex-least, since lex-least colorings
    introduce colors in increasing order).
    """
    A.require_2d()
    cells = A.side * A.side
    triples = star_triples(A)
    partners = _partner_lists(triples, cells)
    degree = [len(p) for p in partners]
    by_degree = sorted(range(cells), key=lambda e: (-degree[e], e))
    counter = [0]
    try:
        for L in range(1, max_colors + 1):
            if L == 1 and len(triples):
                continue
            if _search(by_degree, partners, cells, L, node_limit, counter) is None:
                continue
            witness = _search(list(range(cells)), partners, cells, L, node_limit, counter)
            if witness is None:
                raise InvariantViolation(f"row-major search found no {L}-coloring after degree search did")
            return ChiResult(L, Coloring(A.side, L, tuple(witness)), False, counter[0])
    except _Budget:
        pass
    return ChiResult(None, None, True, counter[0])


@dataclass(frozen=True)
class PeelStep:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    value: int
    color: int
    support: tuple[Entry, ...]
    hull_rows: tuple[int, ...]
    hull_cols: tuple[int, ...]
    used_values: tuple[int, ...]
    ratio: Fraction

    @property
    def area(self) -> int:
        return len(self.rows) * len(self.cols)


@dataclass(frozen=True)
class PeelingTrace:
    steps: tuple[PeelStep, ...]

    @property
    def iterations(self) -> int:
        return len(self.steps)


def peel(A: BaseFunction, coloring: Coloring) -> PeelingTrace:
    """Run the peeling loop on a star-free coloring.

    Ties: the smallest value among the most frequent, then the smallest color
    among the most abundant. ``ratio`` is ``|S| * N * L / |E|`` and is only
    recorded.
    """
    bad = verify_star_free(A, coloring)
    if bad is not None:
        raise PreconditionError(f"coloring is not star-free: {bad}")
    T = A.table
    C = coloring.table
    N = A.colors
    L = coloring.colors_used
    rows = tuple(range(A.side))
    cols = tuple(range(A.side))
    used: set[int] = set()
    steps: list[PeelStep] = []
    chosen_colors: list[int] = []
    while True:
        block = T[np.ix_(rows, cols)]
        freq = Counter(int(v) for v in block.ravel() if int(v) not in used)
        if not freq:
            break
        top = max(freq.values())
        v = min(val for val, cnt in freq.items() if cnt == top)
        cblock = C[np.ix_(rows, cols)]
        cfreq = Counter(int(c) for c in cblock[block == v])
        ctop = max(cfreq.values())
        c = min(col for col, cnt in cfreq.items() if cnt == ctop)
        support = tuple(
            (rows[i], cols[j])
            for i, j in zip(*np.nonzero((block == v) & (cblock == c)))
        )
        hull_rows = tuple(sorted({x for x, _ in support}))
        hull_cols = tuple(sorted({y for _, y in support}))
        t = len(steps) + 1
        if not (set(hull_rows) <= set(rows) and set(hull_cols) <= set(cols)):
            raise InvariantViolation(f"iteration {t}: enclosing rectangle escapes E")
        if c in chosen_colors:
            raise InvariantViolation(f"iteration {t}: color {c} was already chosen")
        support_set = set(support)
        for x in hull_rows:
            for y in hull_cols:
                if (x, y) not in support_set and int(C[x, y]) == c:
                    raise InvariantViolation(
                        f"iteration {t}: entry {(x, y)} outside S carries color {c}"
                    )
        steps.append(
            PeelStep(
                rows, cols, v, c, support, hull_rows, hull_cols, tuple(sorted(used)),
                Fraction(len(support) * N * L, len(rows) * len(cols)),
            )
        )
        chosen_colors.append(c)
        used.add(v)
        rows, cols = hull_rows, hull_cols
    if len(steps) > L:
        raise InvariantViolation(f"{len(steps)} iterations exceed {L} colors")
    return PeelingTrace(tuple(steps))


def serialize_coloring(coloring: Coloring) -> bytes:
    body = " ".join(str(c) for c in coloring.assignment)
    return f"{COLORING_MAGIC}\n{coloring.side} {coloring.colors_used}\n{body}\n".encode("ascii")


def parse_coloring(data: bytes | str) -> Coloring:
    text = data.decode("ascii") if isinstance(data, (bytes, bytearray)) else data
    if not text.endswith("\n"):
        raise LengthError("coloring file must end with a newline")
    lines = text[:-1].split("\n")
    if lines[0] != COLORING_MAGIC:
        raise MagicError(f"bad magic line {lines[0]!r}, expected {COLORING_MAGIC!r}")
    if len(lines) != 3:
        raise LengthError(f"expected 3 lines, got {len(lines)}")
    header = _strict_ints(lines[1], "header")
    if len(header) != 2 or min(header) < 1:
        raise HeaderError("header must be 'n L' with n, L >= 1")
    n, L = header
    values = _strict_ints(lines[2], "colors", err=LengthError)
    if len(values) != n * n:
        raise LengthError(f"header promises {n * n} colors, found {len(values)}")
    for i, c in enumerate(values):
        if c >= L:
            raise ValueRangeError(f"color {c} at position {i} is not below L={L}")
    return Coloring(n, L, tuple(values))
