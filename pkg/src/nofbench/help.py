"""Help bits as partitions of the domain, exact two-player complexity of partial functions.

With ``b`` help bits the helper splits [n]^2 into at most 2^b parts; the cost of
a partition is ``ceil(log2 #parts)`` plus the worst per-part complexity. Per-part
complexity is either the exact deterministic complexity of A restricted to the
part (``"det"``) or ceil(log2) of its minimum monochromatic cover (``"nondet"``).

Deterministic protocols follow the transcript-determines-output convention:
a leaf is a rectangle on which A is constant over the live scope entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .cylinders import cover_cc, mask_entries, min_mono_cover, scope_mask
from .errors import LimitExceeded, PreconditionError, StructuralError
from .functions import BaseFunction

EXACT_DET_SIDE = 6
EXHAUSTIVE_CELLS = 9


def _submasks_with_low_bit(mask: int):
    """Proper non-empty submasks containing the lowest set bit (one per unordered split)."""
    low = mask & -mask
    rest = mask ^ low
    sub = rest
    while True:
        part = sub | low
        if part != mask:
            yield part
        if sub == 0:
            break
        sub = (sub - 1) & rest


def det_cc_exact_2p(A: BaseFunction, S=None, depth_limit: int | None = None,
                    side_limit: int = EXACT_DET_SIDE) -> int:
    """Exact deterministic two-player complexity of A restricted to S.

    Memoized recursion over (row set, column set): a node lets one player split
    its current set in two, costing one bit. Rows and columns with no live scope
    entry are dropped first, which leaves the optimum unchanged.
    """
    A.require_2d()
    n = A.side
    if n > side_limit:
        raise LimitExceeded(f"exact deterministic complexity limited to n <= {side_limit}",
                            limit_name="side_limit")
    smask = scope_mask(A, S)
    values = A.values
    full = (1 << n) - 1

    def cells(rows, cols):
        m = 0
        for x in range(n):
            if (rows >> x) & 1:
                m |= cols << (x * n)
        return m

    @lru_cache(maxsize=None)
    def cost(rows, cols):
        live = cells(rows, cols) & smask
        seen = {values[i] for i in mask_entries_flat(live)}
        if len(seen) <= 1:
            return 0
        live_rows = live_cols = 0
        for i in mask_entries_flat(live):
            x, y = divmod(i, n)
            live_rows |= 1 << x
            live_cols |= 1 << y
        if (live_rows, live_cols) != (rows, cols):
            return cost(live_rows, live_cols)
        best = math.inf
        for r1 in _submasks_with_low_bit(rows):
            a = cost(r1, cols)
            if a + 1 >= best:
                continue
            best = min(best, 1 + max(a, cost(rows ^ r1, cols)))
        for c1 in _submasks_with_low_bit(cols):
            a = cost(rows, c1)
            if a + 1 >= best:
                continue
            best = min(best, 1 + max(a, cost(rows, cols ^ c1)))
        return best

    result = cost(full, full)
    if depth_limit is not None and result > depth_limit:
        raise LimitExceeded(f"deterministic complexity exceeds depth limit {depth_limit}",
                            limit_name="depth_limit")
    return result


def mask_entries_flat(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty parts (flat-entry bitmasks) covering [n]^2, at most 2^b of them."""

    side: int
    parts: tuple[int, ...]
    b: int

    def __post_init__(self):
        full = (1 << (self.side * self.side)) - 1
        seen = 0
        for i, p in enumerate(self.parts):
            if not p:
                raise StructuralError(f"part {i} is empty")
            if p & seen:
                raise StructuralError(f"part {i} overlaps an earlier part")
            seen |= p
        if seen != full:
            raise StructuralError("parts do not cover the whole domain")
        if len(self.parts) > 2**self.b:
            raise StructuralError(f"{len(self.parts)} parts need more than b={self.b} help bits")

    @classmethod
    def from_entries(cls, side: int, parts, b: int) -> "Partition":
        masks = []
        for part in parts:
            m = 0
            for x, y in part:
                m |= 1 << (x * side + y)
            masks.append(m)
        return cls(side, tuple(masks), b)

    @property
    def help_bits(self) -> int:
        """ceil(log2 #parts), the bits actually needed to name a part."""
        return (len(self.parts) - 1).bit_length()

    def entries(self, i: int):
        return mask_entries(self.parts[i], self.side)


def part_cost(A: BaseFunction, part: int, mode: str, cover_budget: int = 2_000_000) -> int:
    if mode == "det":
        return det_cc_exact_2p(A, part)
    if mode == "nondet":
        return cover_cc(min_mono_cover(A, part, budget=cover_budget))
    raise PreconditionError(f"mode must be 'det' or 'nondet', got {mode!r}")


def partition_cost(A: BaseFunction, partition: Partition, mode: str = "det") -> int:
    if partition.side != A.side:
        raise StructuralError("partition and function sizes differ")
    worst = 0
    for i, part in enumerate(partition.parts):
        try:
            worst = max(worst, part_cost(A, part, mode))
        except LimitExceeded as exc:
            raise LimitExceeded(f"part {i}: {exc}", limit_name=exc.limit_name, best=exc.best) from exc
    return partition.help_bits + worst


def value_bucket_partition(A: BaseFunction, b: int) -> Partition:
    """Split [0, N) into 2^b contiguous value buckets; the parts are their preimages."""
    A.require_2d()
    max_b = (A.colors - 1).bit_length()
    if not 0 <= b <= max_b:
        raise PreconditionError(f"b must lie in [0, {max_b}] for N={A.colors}")
    buckets: dict[int, int] = {}
    for i, v in enumerate(A.values):
        key = v * 2**b // A.colors
        buckets[key] = buckets.get(key, 0) | (1 << i)
    return Partition(A.side, tuple(buckets[k] for k in sorted(buckets)), b)


@dataclass(frozen=True)
class PartitionChoice:
    partition: Partition
    cost: int
    exhaustive: bool


def best_partition_micro(A: BaseFunction, b: int, mode: str = "det") -> PartitionChoice:
    """Cheapest partition for ``b`` help bits.

    Exhaustive over all partitions into at most 2^b parts when n^2 <= 9 and
    b <= 1; otherwise the single part and the value-bucket partitions for every
    b' <= b are compared and the result is flagged heuristic.
    """
    A.require_2d()
    if b < 0:
        raise PreconditionError("b must be >= 0")
    n = A.side
    cells = n * n
    full = (1 << cells) - 1
    exhaustive = cells <= EXHAUSTIVE_CELLS and b <= 1
    candidates = [Partition(n, (full,), b)]
    if exhaustive:
        if b == 1:
            # one representative per unordered split: the part holding entry 0 comes first
            for m in range(1, full, 2):
                candidates.append(Partition(n, (m, full ^ m), b))
    else:
        for bb in range(1, min(b, (A.colors - 1).bit_length()) + 1):
            p = value_bucket_partition(A, bb)
            candidates.append(Partition(n, p.parts, b))
    best = None
    for cand in candidates:
        c = partition_cost(A, cand, mode)
        if best is None or c < best[1]:
            best = (cand, c)
    return PartitionChoice(best[0], best[1], exhaustive)


def pad_help_bits(h: int, c: int, b: int) -> tuple[int, int]:
    """Move the first b - h communication bits into the help string."""
    if min(h, c, b) < 0:
        raise PreconditionError("h, c and b must be non-negative")
    if b < h:
        raise PreconditionError(f"help string already longer than b ({h} > {b})")
    if b > h + c:
        raise PreconditionError(f"infeasible: only {h + c} bits in total, cannot reach b={b} help bits")
    return b, c - (b - h)
