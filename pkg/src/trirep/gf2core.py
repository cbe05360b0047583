"""Exact linear algebra over GF(2) on bit-packed vectors and matrices.

Coordinates are 1-based everywhere in the public API. Internally a vector is
a Python int whose bit ``j - 1`` holds coordinate ``j``; matrix rows use the
same packing over column indices.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from trirep.exceptions import (
    DependentBasisError,
    IndexRangeError,
    LengthMismatchError,
)

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BitVec:
    """A vector of GF(2)^length, packed into an int."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("BitVec length must be nonnegative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits 0x{self.bits:x} do not fit in length {self.length}")

    @classmethod
    def zeros(cls, length: int) -> "BitVec":
        return cls(length, 0)

    @classmethod
    def from_string(cls, text: str) -> "BitVec":
        """Parse a string over {0,1}; the first character is coordinate 1."""
        bits = 0
        for j, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << j
            elif ch != "0":
                raise ValueError(f"Invalid bit character {ch!r} in {text!r}")
        return cls(len(text), bits)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVec":
        bits = 0
        for i in support:
            if not 1 <= i <= length:
                raise IndexRangeError(f"coordinate {i} outside 1..{length}")
            bits |= 1 << (i - 1)
        return cls(length, bits)

    @classmethod
    def from_array(cls, values: Sequence[int]) -> "BitVec":
        arr = np.asarray(values, dtype=np.int64).ravel() % 2
        return cls.from_support(len(arr), (int(j) + 1 for j in np.flatnonzero(arr)))

    def to_string(self) -> str:
        return "".join("1" if (self.bits >> j) & 1 else "0" for j in range(self.length))

    def to_array(self) -> np.ndarray:
        return np.array([(self.bits >> j) & 1 for j in range(self.length)], dtype=np.uint8)

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexRangeError(f"coordinate {i} outside 1..{self.length}")
        return (self.bits >> (i - 1)) & 1

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: "BitVec") -> "BitVec":
        return xor(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return self.to_string()

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")

    def support(self) -> List[int]:
        """Nonzero coordinates in increasing order (1-based)."""
        return [j + 1 for j in range(self.length) if (self.bits >> j) & 1]

    def dot(self, other: "BitVec") -> int:
        _check_lengths([self, other])
        return bin(self.bits & other.bits).count("1") & 1

    def sort_key(self) -> int:
        """Integer value of the bit string, coordinate 1 most significant."""
        return int(self.to_string(), 2) if self.length else 0


@dataclass(frozen=True)
class BitMat:
    """A dense GF(2) matrix stored as packed rows."""

    n_rows: int
    n_cols: int
    rows: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        if len(self.rows) != self.n_rows:
            raise ValueError(f"expected {self.n_rows} rows, got {len(self.rows)}")
        for r in self.rows:
            if r < 0 or r >> self.n_cols:
                raise ValueError(f"row 0x{r:x} does not fit in {self.n_cols} columns")

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMat":
        return cls(n_rows, n_cols, (0,) * n_rows)

    @classmethod
    def identity(cls, size: int) -> "BitMat":
        return cls(size, size, tuple(1 << j for j in range(size)))

    @classmethod
    def from_rows(cls, vectors: Sequence[BitVec], n_cols: Optional[int] = None) -> "BitMat":
        if n_cols is None:
            n_cols = vectors[0].length if vectors else 0
        _check_lengths(vectors, n_cols)
        return cls(len(vectors), n_cols, tuple(v.bits for v in vectors))

    @classmethod
    def from_array(cls, array: np.ndarray) -> "BitMat":
        arr = np.atleast_2d(np.asarray(array, dtype=np.int64)) % 2
        n_rows, n_cols = arr.shape
        rows = tuple(
            sum(1 << int(j) for j in np.flatnonzero(arr[r])) for r in range(n_rows)
        )
        return cls(n_rows, n_cols, rows)

    def to_array(self) -> np.ndarray:
        arr = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for r, row in enumerate(self.rows):
            for j in range(self.n_cols):
                if (row >> j) & 1:
                    arr[r, j] = 1
        return arr

    def row(self, i: int) -> BitVec:
        """Row ``i`` (1-based) as a vector."""
        if not 1 <= i <= self.n_rows:
            raise IndexRangeError(f"row {i} outside 1..{self.n_rows}")
        return BitVec(self.n_cols, self.rows[i - 1])

    def mul_vec(self, x: BitVec) -> BitVec:
        """Matrix-vector product Mx over GF(2)."""
        if x.length != self.n_cols:
            raise LengthMismatchError(
                f"vector of length {x.length} against {self.n_cols} columns"
            )
        bits = 0
        for r, row in enumerate(self.rows):
            if bin(row & x.bits).count("1") & 1:
                bits |= 1 << r
        return BitVec(self.n_rows, bits)


def _check_lengths(vectors: Sequence[BitVec], length: Optional[int] = None) -> int:
    if length is None:
        length = vectors[0].length if vectors else 0
    for v in vectors:
        if v.length != length:
            raise LengthMismatchError(f"expected length {length}, got {v.length}")
    return length


def _row_reduce(rows: Sequence[int], n_cols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form.

    Pivots are chosen deterministically: columns left to right, and within a
    column the lowest remaining row. Returns the nonzero reduced rows and
    their pivot columns (0-based), both in pivot order.
    """
    work = list(rows)
    pivots: List[int] = []
    top = 0
    for col in range(n_cols):
        mask = 1 << col
        pivot = next((r for r in range(top, len(work)) if work[r] & mask), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        for r in range(len(work)):
            if r != top and work[r] & mask:
                work[r] ^= work[top]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank(m: BitMat) -> int:
    """GF(2) row rank of ``m``."""
    return len(_row_reduce(m.rows, m.n_cols)[1])


def rank_of(vectors: Sequence[BitVec]) -> int:
    """Rank of a list of equal-length vectors."""
    length = _check_lengths(vectors)
    return len(_row_reduce([v.bits for v in vectors], length)[1])


def echelon_basis(vectors: Sequence[BitVec], length: Optional[int] = None) -> List[BitVec]:
    """Reduced row echelon basis of the span; unique for a given row space."""
    length = _check_lengths(vectors, length)
    reduced, _ = _row_reduce([v.bits for v in vectors], length)
    return [BitVec(length, r) for r in reduced]


def nullspace(m: BitMat) -> List[BitVec]:
    """Basis of {x : Mx = 0}, one vector per free column, free columns ascending."""
    reduced, pivots = _row_reduce(m.rows, m.n_cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.n_cols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for row, col in zip(reduced, pivots):
            if (row >> free) & 1:
                bits |= 1 << col
        basis.append(BitVec(m.n_cols, bits))
    logger.debug(
        f"nullspace of {m.n_rows}x{m.n_cols} matrix: rank {len(pivots)}, dim {len(basis)}"
    )
    return basis


def span_equal(a: Sequence[BitVec], b: Sequence[BitVec]) -> bool:
    """True iff the two lists span the same subspace."""
    _check_lengths(list(a) + list(b))
    ra = rank_of(a) if a else 0
    rb = rank_of(b) if b else 0
    if ra != rb:
        return False
    return rank_of(list(a) + list(b)) == ra if (a or b) else True


def puncture(vectors: Sequence[BitVec], keep: Sequence[int]) -> List[BitVec]:
    """Keep only the listed coordinates, in the listed order."""
    if len(set(keep)) != len(keep):
        raise IndexRangeError(f"repeated coordinate in keep list {list(keep)}")
    if vectors:
        length = _check_lengths(vectors)
        for i in keep:
            if not 1 <= i <= length:
                raise IndexRangeError(f"coordinate {i} outside 1..{length}")
    result = []
    for v in vectors:
        bits = 0
        for pos, i in enumerate(keep):
            if (v.bits >> (i - 1)) & 1:
                bits |= 1 << pos
        result.append(BitVec(len(keep), bits))
    return result


def xor(a: BitVec, b: BitVec) -> BitVec:
    """Coordinatewise sum over GF(2)."""
    if a.length != b.length:
        raise LengthMismatchError(f"cannot add lengths {a.length} and {b.length}")
    return BitVec(a.length, a.bits ^ b.bits)


def xor_fold(vectors: Iterable[BitVec], length: int) -> BitVec:
    """Sum of all vectors; the zero vector of ``length`` when empty."""
    acc = BitVec.zeros(length)
    for v in vectors:
        acc = xor(acc, v)
    return acc


def express(v: BitVec, basis: Sequence[BitVec]) -> Optional[BitVec]:
    """
    Express ``v`` in terms of ``basis``.

    Returns:
        Indicator vector I of length len(basis) with v = sum of basis[i] for
        i in I, or None when v is not in the span
    """
    if basis:
        _check_lengths(list(basis) + [v])
    elif v.bits:
        return None
    # each working row carries its combination in the high bits
    shift = v.length
    rows = [b.bits | (1 << (shift + i)) for i, b in enumerate(basis)]
    reduced, pivots = _row_reduce(rows, shift)
    if len(pivots) != len(basis):
        raise DependentBasisError("basis vectors are linearly dependent")
    low_mask = (1 << shift) - 1
    residue = v.bits
    combo = 0
    for row, col in zip(reduced, pivots):
        if (residue >> col) & 1:
            residue ^= row & low_mask
            combo ^= row >> shift
    if residue:
        return None
    return BitVec(len(basis), combo)


def is_independent(vectors: Sequence[BitVec]) -> bool:
    return not vectors or rank_of(vectors) == len(vectors)
