"""Base functions A: [n]^dims -> [N], their boolean lifts, and the ``noffn`` file format.

Values are 0-based: colors are ``0..N-1``. Coordinates are 0-based as well and
tables are stored flat in row-major order (last coordinate fastest).
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    BudgetError,
    HeaderError,
    LengthError,
    MagicError,
    PreconditionError,
    StructuralError,
    UnsupportedDimension,
    ValueRangeError,
)

DEFAULT_LIMIT_MB = 256
FUNCTION_MAGIC = "noffn 1"


def memory_limit_mb() -> int:
    """Memory budget in MB, read from ``NOF_LIMIT_MB`` (default 256)."""
    raw = os.environ.get("NOF_LIMIT_MB")
    if raw is None:
        return DEFAULT_LIMIT_MB
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError(f"NOF_LIMIT_MB must be an integer, got {raw!r}") from None
    if value < 1:
        raise PreconditionError("NOF_LIMIT_MB must be positive")
    return value


def check_budget(entries: int, what: str = "function") -> None:
    """Reject tables whose 8-byte-per-entry footprint exceeds the memory budget."""
    limit = memory_limit_mb()
    if entries * 8 > limit * 2**20:
        raise BudgetError(
            f"{what} needs {entries} entries (~{entries * 8 / 2**20:.1f} MB), "
            f"over the {limit} MB budget; raise NOF_LIMIT_MB to allow it",
            limit_name="NOF_LIMIT_MB",
        )


@dataclass(frozen=True)
class BaseFunction:
    dims: int
    side: int
    colors: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.dims < 1 or self.side < 1 or self.colors < 1:
            raise StructuralError(
                f"dims, side and colors must be >= 1 (got {self.dims}, {self.side}, {self.colors})"
            )
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.side**self.dims:
            raise StructuralError(
                f"expected {self.side ** self.dims} values, got {len(self.values)}"
            )
        for i, v in enumerate(self.values):
            if not 0 <= v < self.colors:
                raise StructuralError(f"value {v} at flat index {i} outside [0, {self.colors})")

    @classmethod
    def from_array(cls, table, colors: int | None = None) -> "BaseFunction":
        """Build from a cubic numpy array (or nested lists)."""
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim < 1 or len(set(arr.shape)) != 1:
            raise StructuralError(f"table must be a non-empty cube, got shape {arr.shape}")
        if colors is None:
            colors = int(arr.max()) + 1 if arr.size else 1
        return cls(arr.ndim, arr.shape[0], colors, tuple(int(v) for v in arr.ravel()))

    @cached_property
    def table(self) -> np.ndarray:
        """Read-only array of shape ``(side,) * dims``."""
        arr = np.array(self.values, dtype=np.int64).reshape((self.side,) * self.dims)
        arr.setflags(write=False)
        return arr

    def __call__(self, *coords: int) -> int:
        if len(coords) == 1 and isinstance(coords[0], tuple):
            coords = coords[0]
        return self.values[self.flat_index(coords)]

    def flat_index(self, coords: Sequence[int]) -> int:
        if len(coords) != self.dims:
            raise PreconditionError(f"expected {self.dims} coordinates, got {len(coords)}")
        idx = 0
        for c in coords:
            if not 0 <= c < self.side:
                raise PreconditionError(f"coordinate {c} outside [0, {self.side})")
            idx = idx * self.side + c
        return idx

    def require_2d(self) -> None:
        if self.dims != 2:
            raise UnsupportedDimension(f"operation needs a 2-dimensional function, got dims={self.dims}")


def gen_random(dims: int, side: int, colors: int, seed: int) -> BaseFunction:
    """Uniform i.i.d. values from numpy's PCG64 stream seeded by ``seed``."""
    if dims < 1 or side < 1 or colors < 1:
        raise PreconditionError("dims, side and colors must be >= 1")
    size = side**dims
    check_budget(size)
    rng = np.random.default_rng(seed)
    values = rng.integers(0, colors, size=size, dtype=np.int64)
    return BaseFunction(dims, side, colors, tuple(int(v) for v in values))


def gen_latin(side: int) -> BaseFunction:
    """Cyclic Latin square ``(x + y) mod side``."""
    if side < 1:
        raise PreconditionError("side must be >= 1")
    check_budget(side * side)
    xs = np.arange(side)
    table = (xs[:, None] + xs[None, :]) % side
    return BaseFunction(2, side, side, tuple(int(v) for v in table.ravel()))


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, math.isqrt(q) + 1))


@dataclass(frozen=True)
class FieldMatrix:
    """A d x d matrix over the prime field F_q."""

    order: int
    dim: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not is_prime(self.order):
            raise PreconditionError(f"field order {self.order} is not prime")
        rows = tuple(tuple(int(v) % self.order for v in row) for row in self.entries)
        if len(rows) != self.dim or any(len(r) != self.dim for r in rows):
            raise StructuralError(f"entries must be {self.dim}x{self.dim}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_index(cls, index: int, order: int, dim: int) -> "FieldMatrix":
        """Decode base-``order`` digits, most significant digit = entry (0, 0), row-major."""
        cells = dim * dim
        if not 0 <= index < order**cells:
            raise PreconditionError(f"index {index} outside [0, {order}^{cells})")
        digits = []
        for _ in range(cells):
            index, r = divmod(index, order)
            digits.append(r)
        digits.reverse()
        return cls(order, dim, tuple(tuple(digits[i * dim:(i + 1) * dim]) for i in range(dim)))

    def to_index(self) -> int:
        idx = 0
        for row in self.entries:
            for v in row:
                idx = idx * self.order + v
        return idx

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if (self.order, self.dim) != (other.order, other.dim):
            raise PreconditionError("matrix shapes or fields differ")
        a = np.array(self.entries)
        b = np.array(other.entries)
        return FieldMatrix(self.order, self.dim, tuple(map(tuple, (a @ b) % self.order)))

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.dim)) % self.order

    @classmethod
    def identity(cls, order: int, dim: int) -> "FieldMatrix":
        return cls(order, dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))


def _all_matrices(q: int, d: int) -> np.ndarray:
    """Every d x d matrix over F_q, ordered by the FieldMatrix index encoding."""
    cells = d * d
    idx = np.arange(q**cells)
    powers = q ** np.arange(cells - 1, -1, -1)
    digits = (idx[:, None] // powers[None, :]) % q
    return digits.reshape(-1, d, d)


def gen_trace(q: int, d: int, k: int) -> BaseFunction:
    """The trace function T(B_1, ..., B_k) = Tr(B_1 B_2 ... B_k) over F_q.

    Coordinate ``i`` indexes the matrix B_i through :meth:`FieldMatrix.from_index`.
    """
    if not is_prime(q):
        raise PreconditionError(f"q={q} is not prime (only prime fields are supported)")
    if d < 1 or k < 1:
        raise PreconditionError("d and k must be >= 1")
    side = q ** (d * d)
    check_budget(side**k, what=f"trace function T_{{{q},{d},{k}}}")
    mats = _all_matrices(q, d)
    prods = mats
    for _ in range(k - 1):
        prods = np.einsum("aij,bjl->abil", prods, mats) % q
        prods = prods.reshape(-1, d, d)
    values = np.trace(prods, axis1=1, axis2=2) % q
    return BaseFunction(k, side, q, tuple(int(v) for v in values))


class LiftKind(enum.Enum):
    UNARY = "unary"
    BINARY = "binary"
    GREATER_THAN = "gt"


def lift_width(kind: LiftKind, colors: int) -> int:
    if kind is LiftKind.BINARY:
        return max(1, math.ceil(math.log2(colors)))
    return colors


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """A boolean function on [n]^dims x [last_dim] stored as a fiber table.

    ``fibers`` has shape ``(side**dims, last_dim)``; row ``i`` is the fiber over
    the input tuple with flat index ``i``.
    """

    kind: LiftKind
    dims: int
    side: int
    colors: int
    fibers: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.fibers, dtype=np.uint8)
        expected = (self.side**self.dims, lift_width(self.kind, self.colors))
        if arr.shape != expected:
            raise StructuralError(f"fiber table has shape {arr.shape}, expected {expected}")
        if arr.size and arr.max() > 1:
            raise StructuralError("fiber table must be 0/1")
        arr.setflags(write=False)
        object.__setattr__(self, "fibers", arr)

    @property
    def last_dim(self) -> int:
        return self.fibers.shape[1]

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return (self.kind, self.dims, self.side, self.colors) == (
            other.kind, other.dims, other.side, other.colors
        ) and np.array_equal(self.fibers, other.fibers)

    def _row(self, x: Sequence[int]) -> int:
        if len(x) != self.dims:
            raise PreconditionError(f"expected {self.dims} coordinates")
        idx = 0
        for c in x:
            if not 0 <= c < self.side:
                raise PreconditionError(f"coordinate {c} outside [0, {self.side})")
            idx = idx * self.side + c
        return idx

    def fiber(self, x: Sequence[int]) -> list[int]:
        return [int(v) for v in self.fibers[self._row(x)]]

    def __call__(self, x: Sequence[int], y: int) -> int:
        if not 0 <= y < self.last_dim:
            raise PreconditionError(f"last coordinate {y} outside [0, {self.last_dim})")
        return int(self.fibers[self._row(x), y])


def lift(A: BaseFunction, kind: LiftKind | str) -> BooleanFunction:
    kind = LiftKind(kind)
    vals = np.array(A.values, dtype=np.int64)
    width = lift_width(kind, A.colors)
    if kind is LiftKind.UNARY:
        fibers = (vals[:, None] == np.arange(width)[None, :])
    elif kind is LiftKind.BINARY:
        if A.colors < 2:
            raise PreconditionError("binary lift needs colors >= 2")
        fibers = (vals[:, None] >> np.arange(width)[None, :]) & 1
    else:
        fibers = vals[:, None] >= np.arange(width)[None, :]
    return BooleanFunction(kind, A.dims, A.side, A.colors, fibers.astype(np.uint8))


def _unflatten(idx: int, dims: int, side: int) -> tuple[int, ...]:
    coords = []
    for _ in range(dims):
        idx, r = divmod(idx, side)
        coords.append(r)
    return tuple(reversed(coords))


def base_of(f: BooleanFunction) -> BaseFunction:
    """Invert a lift, checking every fiber against the lift kind's structure."""
    values = []
    for i, row in enumerate(f.fibers):
        ones = int(row.sum())
        if f.kind is LiftKind.UNARY:
            if ones != 1:
                raise StructuralError(
                    f"unary fiber at {_unflatten(i, f.dims, f.side)} has {ones} ones, expected 1"
                )
            v = int(np.argmax(row))
        elif f.kind is LiftKind.BINARY:
            v = sum(int(bit) << j for j, bit in enumerate(row))
            if v >= f.colors:
                raise StructuralError(
                    f"binary fiber at {_unflatten(i, f.dims, f.side)} encodes {v} >= {f.colors}"
                )
        else:
            if ones == 0 or not row[:ones].all():
                raise StructuralError(
                    f"greater-than fiber at {_unflatten(i, f.dims, f.side)} is not a non-empty prefix of ones"
                )
            v = ones - 1
        values.append(v)
    return BaseFunction(f.dims, f.side, f.colors, tuple(values))


def serialize(A: BaseFunction) -> bytes:
    body = " ".join(str(v) for v in A.values)
    return f"{FUNCTION_MAGIC}\n{A.dims} {A.side} {A.colors}\n{body}\n".encode("ascii")


def _strict_ints(line: str, what: str, err=HeaderError) -> list[int]:
    parts = line.split(" ")
    if err is LengthError and any(p[:1] == "-" and p[1:].isdigit() for p in parts):
        raise ValueRangeError(f"{what}: negative value")
    if any(p == "" or not p.isdigit() for p in parts):
        raise err(f"{what}: expected single-space-separated decimal integers")
    return [int(p) for p in parts]


def parse(data: bytes | str) -> BaseFunction:
    text = data.decode("ascii") if isinstance(data, (bytes, bytearray)) else data
    if not text.endswith("\n"):
        raise LengthError("function file must end with a newline")
    lines = text[:-1].split("\n")
    if lines[0] != FUNCTION_MAGIC:
        raise MagicError(f"bad magic line {lines[0]!r}, expected {FUNCTION_MAGIC!r}")
    if len(lines) != 3:
        raise LengthError(f"expected 3 lines, got {len(lines)}")
    header = _strict_ints(lines[1], "header")
    if len(header) != 3:
        raise HeaderError("header must be 'dims side colors'")
    dims, side, colors = header
    if dims < 1 or side < 1 or colors < 1:
        raise HeaderError("dims, side and colors must be >= 1")
    check_budget(side**dims)
    values = _strict_ints(lines[2], "values", err=LengthError)
    if len(values) != side**dims:
        raise LengthError(f"header promises {side ** dims} values, found {len(values)}")
    for i, v in enumerate(values):
        if v >= colors:
            raise ValueRangeError(f"value {v} at position {i} is not below colors={colors}")
    return BaseFunction(dims, side, colors, tuple(values))


def load_function(path) -> BaseFunction:
    with open(path, "rb") as fh:
        return parse(fh.read())


def save_function(A: BaseFunction, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(A))
