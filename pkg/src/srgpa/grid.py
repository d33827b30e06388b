"""Pixel space, structuring elements and the set algebra used by the zones.

Pixels are addressed either by a coordinate tuple or by their row-major flat
index; every function here accepts both and works on flat indices internally.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

Coords = tuple
PixelLike = Union[int, Sequence[int]]


class ContractError(ValueError):
    """A documented precondition of an operation was violated."""


@dataclass(frozen=True)
class Grid:
    """A finite rectangular pixel space of 2 or 3 dimensions."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) not in (2, 3):
            raise ValueError(f"grid must be 2D or 3D, got dims={dims}")
        if any(d < 1 for d in dims):
            raise ValueError(f"every extent must be >= 1, got dims={dims}")
        object.__setattr__(self, "dims", dims)
        strides = []
        acc = 1
        for d in reversed(dims):
            strides.append(acc)
            acc *= d
        object.__setattr__(self, "strides", tuple(reversed(strides)))
        object.__setattr__(self, "size", acc)

    # declared for type checkers; filled in __post_init__
    strides: tuple = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def shape(self) -> tuple:
        return self.dims

    def contains(self, coords: Sequence[int]) -> bool:
        return len(coords) == self.ndim and all(
            0 <= c < d for c, d in zip(coords, self.dims)
        )

    def ravel(self, x: PixelLike) -> int:
        """Flat index of ``x`` (a flat index is validated and returned as is)."""
        if isinstance(x, (int, np.integer)):
            p = int(x)
            if not 0 <= p < self.size:
                raise IndexError(f"pixel index {p} outside grid of size {self.size}")
            return p
        coords = tuple(int(c) for c in x)
        if not self.contains(coords):
            raise IndexError(f"pixel {coords} outside grid {self.dims}")
        return sum(c * s for c, s in zip(coords, self.strides))

    def unravel(self, p: int) -> Coords:
        out = []
        for s in self.strides:
            c, p = divmod(p, s)
            out.append(c)
        return tuple(out)

    def neighbors(self, p: int, v: "Neighborhood") -> list:
        """Flat indices of ``p + o`` for ``o`` in ``v``, clipped to the grid.

        The result follows the offset order of ``v``.
        """
        if not v.offsets:
            return []
        if self.ndim == 2:
            h, w = self.dims
            r, c = divmod(p, w)
            out = []
            for dr, dc in v.offsets:
                rr = r + dr
                cc = c + dc
                if 0 <= rr < h and 0 <= cc < w:
                    out.append(rr * w + cc)
            return out
        base = self.unravel(p)
        out = []
        for off in v.offsets:
            q = tuple(b + o for b, o in zip(base, off))
            if self.contains(q):
                out.append(sum(c * s for c, s in zip(q, self.strides)))
        return out


@dataclass(frozen=True, eq=False)
class Neighborhood:
    """A translation-invariant structuring element given as an offset list.

    An empty offset list is the empty neighborhood: dilating anything by it
    gives the empty set. Equality ignores offset order, but the order is kept
    because it fixes the order in which zone insertions are produced.
    """

    offsets: tuple = ()

    def __post_init__(self):
        offs = tuple(tuple(int(c) for c in o) for o in self.offsets)
        if offs:
            n = len(offs[0])
            if any(len(o) != n for o in offs):
                raise ValueError("offsets must all have the same dimension")
            if len(set(offs)) != len(offs):
                raise ValueError("duplicate offsets in neighborhood")
        object.__setattr__(self, "offsets", offs)

    @classmethod
    def empty(cls) -> "Neighborhood":
        return cls(())

    @classmethod
    def connectivity(cls, n: int, ndim: int = 2) -> "Neighborhood":
        """Built-in neighborhoods: 4/8 in 2D, 6/26 in 3D (origin excluded)."""
        table = {(4, 2): 1, (8, 2): ndim, (6, 3): 1, (26, 3): ndim}
        if (n, ndim) not in table:
            raise ValueError(f"no built-in {n}-connectivity in {ndim}D")
        max_l1 = table[(n, ndim)]
        offs = [
            o for o in itertools.product((-1, 0, 1), repeat=ndim)
            if 0 < sum(map(abs, o)) <= max_l1
        ]
        return cls(tuple(offs))

    @property
    def is_empty(self) -> bool:
        return not self.offsets

    @property
    def ndim(self):
        return len(self.offsets[0]) if self.offsets else None

    @property
    def is_symmetric(self) -> bool:
        s = set(self.offsets)
        return all(tuple(-c for c in o) in s for o in s)

    def reflect(self) -> "Neighborhood":
        return Neighborhood(tuple(tuple(-c for c in o) for o in self.offsets))

    def __len__(self):
        return len(self.offsets)

    def __eq__(self, other):
        if not isinstance(other, Neighborhood):
            return NotImplemented
        return frozenset(self.offsets) == frozenset(other.offsets)

    def __hash__(self):
        return hash(frozenset(self.offsets))

    def __repr__(self):
        if self.is_empty:
            return "Neighborhood.empty()"
        return f"Neighborhood({list(self.offsets)})"


def reflect(v: Neighborhood) -> Neighborhood:
    return v.reflect()


class PixelSet:
    """A subset of a grid stored as a dense bit mask plus an element count.

    Bits are packed eight to a byte so that many sets over a large grid stay
    affordable; membership, insertion and removal are O(1).
    """

    __slots__ = ("grid", "_bits", "_count")

    def __init__(self, grid: Grid, pixels: Iterable[PixelLike] = ()):
        self.grid = grid
        self._bits = bytearray((grid.size + 7) >> 3)
        self._count = 0
        for x in pixels:
            self.add(x)

    @classmethod
    def from_mask(cls, grid: Grid, mask) -> "PixelSet":
        mask = np.asarray(mask, dtype=bool)
        if mask.size != grid.size:
            raise ValueError(f"mask of size {mask.size} does not fit grid {grid.dims}")
        s = cls(grid)
        s._set_mask(mask.ravel())
        return s

    def _set_mask(self, flat: np.ndarray) -> None:
        self._bits = bytearray(np.packbits(flat, bitorder="little").tobytes())
        self._count = int(np.count_nonzero(flat))

    @property
    def mask(self) -> np.ndarray:
        """Boolean array shaped like the grid (a copy)."""
        return self.flat_mask().reshape(self.grid.dims)

    def flat_mask(self) -> np.ndarray:
        packed = np.frombuffer(self._bits, dtype=np.uint8)
        return np.unpackbits(packed, count=self.grid.size, bitorder="little").astype(bool)

    def _index(self, x: PixelLike) -> int:
        if type(x) is int and 0 <= x < self.grid.size:
            return x
        return self.grid.ravel(x)

    def __contains__(self, x) -> bool:
        p = self._index(x)
        return bool(self._bits[p >> 3] & (1 << (p & 7)))

    def add(self, x: PixelLike) -> bool:
        """Insert ``x``; return True if it was not already present."""
        p = self._index(x)
        byte, bit = p >> 3, 1 << (p & 7)
        if self._bits[byte] & bit:
            return False
        self._bits[byte] |= bit
        self._count += 1
        return True

    def discard(self, x: PixelLike) -> bool:
        """Remove ``x``; return True if it was present."""
        p = self._index(x)
        byte, bit = p >> 3, 1 << (p & 7)
        if not self._bits[byte] & bit:
            return False
        self._bits[byte] &= ~bit & 0xFF
        self._count -= 1
        return True

    def clear(self) -> None:
        self._bits = bytearray(len(self._bits))
        self._count = 0

    def __len__(self):
        return self._count

    def __bool__(self):
        return self._count > 0

    def __iter__(self) -> Iterator[int]:
        """Flat indices in ascending order."""
        return iter(np.flatnonzero(self.flat_mask()).tolist())

    def coords(self) -> list:
        return [self.grid.unravel(p) for p in self]

    def copy(self) -> "PixelSet":
        s = PixelSet.__new__(PixelSet)
        s.grid = self.grid
        s._bits = bytearray(self._bits)
        s._count = self._count
        return s

    def _check_grid(self, other: "PixelSet") -> None:
        if self.grid != other.grid:
            raise ContractError(f"grids differ: {self.grid.dims} vs {other.grid.dims}")

    def _combine(self, other: "PixelSet", op) -> "PixelSet":
        self._check_grid(other)
        a = np.frombuffer(self._bits, dtype=np.uint8)
        b = np.frombuffer(other._bits, dtype=np.uint8)
        s = PixelSet.__new__(PixelSet)
        s.grid = self.grid
        packed = op(a, b)
        s._bits = bytearray(packed.tobytes())
        s._count = int.from_bytes(s._bits, "little").bit_count()
        return s

    def __or__(self, other):
        return self._combine(other, np.bitwise_or)

    def __and__(self, other):
        return self._combine(other, np.bitwise_and)

    def __sub__(self, other):
        # plain relative complement; see subtract() for the checked variant
        return self._combine(other, lambda a, b: a & ~b)

    def isdisjoint(self, other: "PixelSet") -> bool:
        return not (self & other)

    def issubset(self, other: "PixelSet") -> bool:
        return not (self - other)

    def __eq__(self, other):
        if not isinstance(other, PixelSet):
            return NotImplemented
        return self.grid == other.grid and self._bits == other._bits

    __hash__ = None

    def __repr__(self):
        shown = self.coords()[:8]
        more = ", ..." if self._count > 8 else ""
        return f"PixelSet({self.grid.dims}, {shown}{more})"


def dilate(s: PixelSet, v: Neighborhood) -> PixelSet:
    """Minkowski addition of ``s`` by ``v``; offsets leaving the grid are dropped."""
    out = PixelSet(s.grid)
    if v.is_empty or not s:
        return out
    if v.ndim != s.grid.ndim:
        raise ContractError(f"{v.ndim}D neighborhood on a {s.grid.ndim}D grid")
    src = s.mask
    dst = np.zeros_like(src)
    for off in v.offsets:
        # dst[x + off] |= src[x] for every x with x + off inside the grid
        dst_sl, src_sl = [], []
        for o, n in zip(off, src.shape):
            if abs(o) >= n:
                break
            dst_sl.append(slice(max(o, 0), n + min(o, 0)))
            src_sl.append(slice(max(-o, 0), n - max(o, 0)))
        else:
            dst[tuple(dst_sl)] |= src[tuple(src_sl)]
    out._set_mask(dst.ravel())
    return out


def disjoint_add(a: PixelSet, b: PixelSet) -> PixelSet:
    """Disjoint union ``a + b``; overlapping operands are a contract error."""
    overlap = a & b
    if overlap:
        p = next(iter(overlap))
        raise ContractError(f"disjoint_add: pixel {a.grid.unravel(p)} is in both operands")
    return a | b


def subtract(a: PixelSet, b: PixelSet) -> PixelSet:
    """``a - b`` defined only when ``b`` is a subset of ``a``."""
    missing = b - a
    if missing:
        p = next(iter(missing))
        raise ContractError(f"subtract: pixel {a.grid.unravel(p)} is not in the minuend")
    return a - b


def set_minus(a: PixelSet, b: PixelSet) -> PixelSet:
    """Ordinary relative complement ``a \\ b``."""
    return a - b
