"""Combinatorial rectangles (2-D cylinder intersections) and monochromatic covers.

A scope is a set of entries of [n]^2; internally it is an int bitmask with bit
``x * n + y`` set for entry ``(x, y)``. A rectangle is monochromatic on a scope
when all scope entries inside it share one value; entries outside the scope are
unconstrained.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import (
    HeaderError,
    LengthError,
    LimitExceeded,
    MagicError,
    PreconditionError,
    StructuralError,
    ValueRangeError,
)
from .functions import BaseFunction, _strict_ints

COVER_MAGIC = "nofcover 1"
EXACT_COVER_SIDE = 6
MAX_SIM_CN = 40

Entry = tuple[int, int]


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, order=True)
class Rectangle:
    rows: int
    cols: int

    @classmethod
    def of(cls, rows: Iterable[int], cols: Iterable[int]) -> "Rectangle":
        r = c = 0
        for x in rows:
            r |= 1 << x
        for y in cols:
            c |= 1 << y
        return cls(r, c)

    @classmethod
    def full(cls, n: int) -> "Rectangle":
        return cls((1 << n) - 1, (1 << n) - 1)

    @property
    def row_set(self) -> list[int]:
        return _bits(self.rows)

    @property
    def col_set(self) -> list[int]:
        return _bits(self.cols)

    @property
    def size(self) -> int:
        return popcount(self.rows) * popcount(self.cols)

    def cells(self, n: int) -> int:
        """Flat-entry bitmask of the rectangle inside [n]^2."""
        mask = 0
        for x in self.row_set:
            mask |= self.cols << (x * n)
        return mask

    def __contains__(self, entry: Entry) -> bool:
        x, y = entry
        return bool((self.rows >> x) & 1 and (self.cols >> y) & 1)


def rect_contains(R: Rectangle, entry: Entry, side: int | None = None) -> bool:
    x, y = entry
    if x < 0 or y < 0 or (side is not None and (x >= side or y >= side)):
        raise PreconditionError(f"entry {entry} outside the grid")
    return entry in R


def scope_mask(A: BaseFunction, scope=None) -> int:
    """Normalize a scope given as None (everything), an int bitmask, or entries."""
    n = A.side
    full = (1 << (n * n)) - 1
    if scope is None:
        return full
    if isinstance(scope, int):
        if scope & ~full:
            raise PreconditionError("scope mask has bits outside the grid")
        return scope
    mask = 0
    for x, y in scope:
        if not (0 <= x < n and 0 <= y < n):
            raise PreconditionError(f"scope entry {(x, y)} outside the grid")
        mask |= 1 << (x * n + y)
    return mask


def mask_entries(mask: int, n: int) -> list[Entry]:
    return [divmod(i, n) for i in _bits(mask)]


@dataclass(frozen=True)
class MonoCheck:
    status: str  # "mono", "empty" or "mixed"
    value: int | None = None
    witness: tuple[Entry, Entry] | None = None


def mono_value_of(A: BaseFunction, S, R: Rectangle) -> MonoCheck:
    A.require_2d()
    n = A.side
    live = mask_entries(scope_mask(A, S) & R.cells(n), n)
    if not live:
        return MonoCheck("empty")
    first = live[0]
    v = A(first)
    for e in live[1:]:
        if A(e) != v:
            return MonoCheck("mixed", witness=(first, e))
    return MonoCheck("mono", value=v)


@dataclass(frozen=True)
class MonoCover:
    target: BaseFunction
    scope: int
    members: tuple[tuple[Rectangle, int], ...]
    optimal: bool = True

    def __post_init__(self):
        n = self.target.side
        covered = 0
        for R, v in self.members:
            if R.rows == 0 or R.cols == 0:
                raise StructuralError(f"cover member {R} is empty")
            check = mono_value_of(self.target, self.scope, R)
            if check.status == "mixed" or (check.status == "mono" and check.value != v):
                raise StructuralError(f"cover member {R} is not monochromatic with value {v} on the scope")
            covered |= R.cells(n)
        missing = self.scope & ~covered
        if missing:
            raise StructuralError(f"entries {mask_entries(missing, n)[:4]} are not covered")

    @property
    def chi(self) -> int:
        return len(self.members)


def maximal_mono_rectangles(A: BaseFunction, S=None) -> list[tuple[Rectangle, int, int]]:
    """Maximal rectangles monochromatic on S that meet S, as ``(rect, value, coverage mask)``.

    Sorted by rectangle then value; one entry per distinct rectangle.
    """
    A.require_2d()
    n = A.side
    smask = scope_mask(A, S)
    T = A.table
    found: dict[tuple[int, int], tuple[int, int]] = {}
    present = sorted({int(T[x, y]) for x, y in mask_entries(smask, n)})
    for v in present:
        # forbidden entries: in scope with a different value
        col_forbid = [0] * n
        row_forbid = [0] * n
        for x, y in mask_entries(smask, n):
            if int(T[x, y]) != v:
                col_forbid[y] |= 1 << x
                row_forbid[x] |= 1 << y
        for rows in range(1, 1 << n):
            cols = 0
            for y in range(n):
                if not col_forbid[y] & rows:
                    cols |= 1 << y
            if not cols:
                continue
            closed = 0
            for x in range(n):
                if not row_forbid[x] & cols:
                    closed |= 1 << x
            R = Rectangle(closed, cols)
            cov = R.cells(n) & smask
            if cov and (closed, cols) not in found:
                found[(closed, cols)] = (v, cov)
    return [(Rectangle(r, c), v, cov) for (r, c), (v, cov) in sorted(found.items())]


def _candidate_sets(A: BaseFunction, smask: int):
    """Distinct coverage sets, keeping the first rectangle per set and dropping dominated sets."""
    by_cov: dict[int, tuple[Rectangle, int]] = {}
    for R, v, cov in maximal_mono_rectangles(A, smask):
        by_cov.setdefault(cov, (R, v))
    covs = list(by_cov)
    keep = [
        c for c in covs
        if not any(o != c and (c & o) == c for o in covs)
    ]
    keep.sort(key=lambda c: by_cov[c])
    return [(by_cov[c][0], by_cov[c][1], c) for c in keep]


def _greedy(cands, smask):
    chosen = []
    uncovered = smask
    while uncovered:
        best = max(range(len(cands)), key=lambda i: (popcount(cands[i][2] & uncovered), -i))
        chosen.append(best)
        uncovered &= ~cands[best][2]
    return chosen


def greedy_mono_cover(A: BaseFunction, S=None) -> MonoCover:
    """Greedy cover: repeatedly take the rectangle covering the most uncovered entries."""
    smask = scope_mask(A, S)
    cands = _candidate_sets(A, smask)
    chosen = _greedy(cands, smask)
    return _as_cover(A, smask, cands, chosen, optimal=False)


def _as_cover(A, smask, cands, chosen, optimal):
    members = tuple(sorted((cands[i][0], cands[i][1]) for i in chosen))
    return MonoCover(A, smask, members, optimal)


def min_mono_cover(A: BaseFunction, S=None, budget: int = 2_000_000,
                   exact_side: int = EXACT_COVER_SIDE) -> MonoCover:
    """Minimum monochromatic rectangle cover of S.

    Exact set cover over maximal rectangles by branch and bound for
    ``side <= exact_side``; larger instances get the greedy cover with
    ``optimal=False``. Running out of ``budget`` search nodes raises
    :class:`LimitExceeded` with the best cover found so far in ``best``.
    """
    A.require_2d()
    smask = scope_mask(A, S)
    if not smask:
        return MonoCover(A, 0, (), True)
    if A.side > exact_side:
        return greedy_mono_cover(A, smask)
    cands = _candidate_sets(A, smask)
    sets = [c[2] for c in cands]
    cells = _bits(smask)
    covering = {e: [i for i, s in enumerate(sets) if (s >> e) & 1] for e in cells}
    maxsize = max(popcount(s) for s in sets)
    best = _greedy(cands, smask)
    nodes = 0

    def lower_bound(uncovered):
        # elements no two of which share a set each need their own member
        lb = 0
        blocked = 0
        for e in _bits(uncovered):
            mine = 0
            for i in covering[e]:
                mine |= 1 << i
            if not mine & blocked:
                lb += 1
                blocked |= mine
        return max(lb, -(-popcount(uncovered) // maxsize))

    def rec(uncovered, chosen):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise LimitExceeded(
                f"cover search exceeded {budget} nodes", limit_name="budget",
                best=_as_cover(A, smask, cands, best, optimal=False),
            )
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + lower_bound(uncovered) >= len(best):
            return
        pivot = min(_bits(uncovered), key=lambda e: (len(covering[e]), e))
        for i in covering[pivot]:
            chosen.append(i)
            rec(uncovered & ~sets[i], chosen)
            chosen.pop()

    rec(smask, [])
    return _as_cover(A, smask, cands, best, optimal=True)


def cover_cc(cover: MonoCover) -> int:
    """ceil(log2 chi) for a cover of chi members."""
    chi = cover.chi
    if chi == 0:
        if cover.scope:
            raise StructuralError("empty cover of a non-empty scope")
        return 0
    return (chi - 1).bit_length()


@dataclass(frozen=True)
class ProtocolRun:
    transcript: tuple[int, ...]
    output: int
    cost: int
    member: int


def simulate_cover_protocol(A: BaseFunction, S, cover: MonoCover, entry: Entry) -> ProtocolRun:
    """Two-player deterministic protocol built from a monochromatic cover.

    The row player writes its membership bit for every member's row set; the
    column player then writes the index of the first member containing the
    input, in ceil(log2 chi) bits, most significant first.
    """
    n = A.side
    smask = scope_mask(A, S)
    x, y = entry
    if not (0 <= x < n and 0 <= y < n) or not (smask >> (x * n + y)) & 1:
        raise PreconditionError(f"input {entry} is not in the scope")
    chi = cover.chi
    width = (chi - 1).bit_length() if chi else 0
    row_bits = tuple(int((R.rows >> x) & 1) for R, _ in cover.members)
    index = next(
        (j for j, (R, _) in enumerate(cover.members) if row_bits[j] and (R.cols >> y) & 1),
        None,
    )
    if index is None:
        raise StructuralError(f"no cover member contains {entry}")
    index_bits = tuple((index >> (width - 1 - i)) & 1 for i in range(width))
    transcript = row_bits + index_bits
    return ProtocolRun(transcript, cover.members[index][1], len(transcript), index)


def det_sim_bound(k: int, c_n: int) -> int:
    """(k - 1) * 2**c_n + c_n."""
    if k < 2 or c_n < 0:
        raise PreconditionError("need k >= 2 and c_n >= 0")
    if c_n > MAX_SIM_CN:
        raise PreconditionError(f"c_n={c_n} above the cap of {MAX_SIM_CN}")
    return (k - 1) * 2**c_n + c_n


def serialize_cover(cover: MonoCover) -> bytes:
    lines = [COVER_MAGIC, f"{cover.target.side} {cover.chi}"]
    lines += [f"{R.rows} {R.cols} {v}" for R, v in cover.members]
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_cover(data: bytes | str, target: BaseFunction, S=None) -> MonoCover:
    """Parse a cover file and validate it against ``target`` on scope ``S``."""
    text = data.decode("ascii") if isinstance(data, (bytes, bytearray)) else data
    if not text.endswith("\n"):
        raise LengthError("cover file must end with a newline")
    lines = text[:-1].split("\n")
    if lines[0] != COVER_MAGIC:
        raise MagicError(f"bad magic line {lines[0]!r}, expected {COVER_MAGIC!r}")
    if len(lines) < 2:
        raise LengthError("missing header")
    header = _strict_ints(lines[1], "header")
    if len(header) != 2:
        raise HeaderError("header must be 'n chi'")
    n, chi = header
    if n != target.side:
        raise HeaderError(f"cover is for n={n}, function has n={target.side}")
    if len(lines) - 2 != chi:
        raise LengthError(f"header promises {chi} members, found {len(lines) - 2}")
    members = []
    for line in lines[2:]:
        fields = _strict_ints(line, "member", err=LengthError)
        if len(fields) != 3:
            raise LengthError("member line must be 'rows cols value'")
        rows, cols, v = fields
        if rows >> n or cols >> n or v >= target.colors:
            raise ValueRangeError(f"member {line!r} out of range")
        members.append((Rectangle(rows, cols), v))
    return MonoCover(target, scope_mask(target, S), tuple(members), optimal=False)
