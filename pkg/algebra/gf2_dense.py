"""
Bit-packed dense matrices over GF(2).

Rows are stored as numpy uint64 words, bit c of a row is column c (column
0 is bit 0 of word 0). Padding bits past n_cols are always zero.

Elimination is plain Gauss-Jordan with word-level XOR of whole rows, so the
cost is cubic. A transform record (T with T·M = E) is carried on request
and gives every echelon row as a combination of input rows, which is what
left-system solving needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

WORD = 64
_ONE = np.uint64(1)


class DimensionMismatch(ValueError):
    """Operand shapes do not agree."""


def n_words(n_cols: int) -> int:
    return max(1, (n_cols + WORD - 1) // WORD)


def pack_row(cols: Iterable[int], n_cols: int) -> np.ndarray:
    """Packed row with ones at the given column indices."""
    out = np.zeros(n_words(n_cols), dtype=np.uint64)
    for c in cols:
        if not 0 <= c < n_cols:
            raise DimensionMismatch(f"column {c} out of range 0..{n_cols - 1}")
        out[c // WORD] ^= _ONE << np.uint64(c % WORD)
    return out


def unpack_row(words: np.ndarray, n_cols: int) -> np.ndarray:
    """0/1 uint8 vector of length n_cols."""
    shifts = np.arange(WORD, dtype=np.uint64)
    bits = ((words[:, None] >> shifts) & _ONE).astype(np.uint8).reshape(-1)
    return bits[:n_cols]


def row_support(words: np.ndarray, n_cols: int) -> tuple[int, ...]:
    return tuple(int(c) for c in np.flatnonzero(unpack_row(words, n_cols)))


def _pack_dense(bits: np.ndarray) -> np.ndarray:
    n_rows, n_cols = bits.shape
    nw = n_words(n_cols)
    padded = np.zeros((n_rows, nw * WORD), dtype=np.uint64)
    padded[:, :n_cols] = bits & 1
    shifts = np.arange(WORD, dtype=np.uint64)
    return np.bitwise_or.reduce(padded.reshape(n_rows, nw, WORD) << shifts, axis=2)


@dataclass
class BitMatrix:
    n_rows: int
    n_cols: int
    words: np.ndarray  # shape (n_rows, n_words(n_cols)), dtype uint64

    def __post_init__(self):
        expected = (self.n_rows, n_words(self.n_cols))
        if self.words.shape != expected:
            raise DimensionMismatch(f"word array has shape {self.words.shape}, expected {expected}")

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_rows, n_cols, np.zeros((n_rows, n_words(n_cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.words[i, i // WORD] = _ONE << np.uint64(i % WORD)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Iterable[int]], n_cols: int) -> "BitMatrix":
        """From sparse rows (column index lists), e.g. MacaulayMatrix.rows."""
        m = cls.zeros(len(rows), n_cols)
        for i, row in enumerate(rows):
            m.words[i] = pack_row(row, n_cols)
        return m

    @classmethod
    def from_dense(cls, bits) -> "BitMatrix":
        arr = np.asarray(bits, dtype=np.uint64)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d 0/1 array, got {arr.ndim} dimensions")
        return cls(arr.shape[0], arr.shape[1], _pack_dense(arr))

    def to_dense(self) -> np.ndarray:
        shifts = np.arange(WORD, dtype=np.uint64)
        bits = (self.words[:, :, None] >> shifts) & _ONE
        return bits.reshape(self.n_rows, -1)[:, : self.n_cols].astype(np.uint8)

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j // WORD] >> np.uint64(j % WORD)) & _ONE)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.n_rows, self.n_cols, self.words.copy())

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def left_multiply(self, u: np.ndarray) -> np.ndarray:
        """u·M for a 0/1 vector u of length n_rows; returns a packed row."""
        u = np.asarray(u)
        if u.shape != (self.n_rows,):
            raise DimensionMismatch(f"left vector has length {u.shape}, matrix has {self.n_rows} rows")
        selected = self.words[np.flatnonzero(u)]
        if selected.shape[0] == 0:
            return np.zeros(n_words(self.n_cols), dtype=np.uint64)
        return np.bitwise_xor.reduce(selected, axis=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.n_rows, self.n_cols) == (other.n_rows, other.n_cols) and bool(
            np.array_equal(self.words, other.words)
        )


@dataclass
class EchelonForm:
    echelon: BitMatrix
    rank: int
    pivots: tuple[int, ...]  # pivot column of echelon row i, for i < rank
    transform: BitMatrix | None  # T with T·M = echelon, or None


def _column_bits(words: np.ndarray, c: int) -> np.ndarray:
    return ((words[:, c // WORD] >> np.uint64(c % WORD)) & _ONE).astype(bool)


def rref(m: BitMatrix, with_transform: bool = True) -> EchelonForm:
    """Reduced row echelon form of m; the input is not modified."""
    e = m.words.copy()
    t = BitMatrix.identity(m.n_rows).words if with_transform else None
    pivots: list[int] = []
    row = 0
    for c in range(m.n_cols):
        if row == m.n_rows:
            break
        col = _column_bits(e[row:], c)
        hits = np.flatnonzero(col)
        if hits.size == 0:
            continue
        p = row + int(hits[0])
        if p != row:
            e[[row, p]] = e[[p, row]]
            if t is not None:
                t[[row, p]] = t[[p, row]]
        mask = _column_bits(e, c)
        mask[row] = False
        if mask.any():
            e[mask] ^= e[row]
            if t is not None:
                t[mask] ^= t[row]
        pivots.append(c)
        row += 1

    transform = BitMatrix(m.n_rows, m.n_rows, t) if t is not None else None
    return EchelonForm(BitMatrix(m.n_rows, m.n_cols, e), row, tuple(pivots), transform)


def rank(m: BitMatrix) -> int:
    return rref(m, with_transform=False).rank


def solve_left(m: BitMatrix, r: np.ndarray | Iterable[int]) -> tuple[int, ...] | None:
    """
    Find u with u·M = r.

    r is a packed row or a list of column indices. Returns the support of u
    (sorted row indices of M), or None when r is not in the row space. A
    returned u has been re-multiplied and checked against r.
    """
    if isinstance(r, np.ndarray):
        target = r.astype(np.uint64)
        if target.shape != (n_words(m.n_cols),):
            raise DimensionMismatch(f"right-hand side has shape {target.shape}, expected ({n_words(m.n_cols)},)")
    else:
        target = pack_row(r, m.n_cols)

    form = rref(m, with_transform=True)
    residual = target.copy()
    combo = np.zeros(n_words(m.n_rows), dtype=np.uint64)
    for i, c in enumerate(form.pivots):
        if (residual[c // WORD] >> np.uint64(c % WORD)) & _ONE:
            residual ^= form.echelon.words[i]
            combo ^= form.transform.words[i]
    if residual.any():
        return None

    u = unpack_row(combo, m.n_rows)
    if not np.array_equal(m.left_multiply(u), target):
        raise ArithmeticError("left solution failed verification")
    return tuple(int(i) for i in np.flatnonzero(u))


def row_space_contains(m: BitMatrix, r: np.ndarray | Iterable[int]) -> bool:
    return solve_left(m, r) is not None
