"""
Black-box sparse linear algebra over GF(2) with Las Vegas consistency tests.

A SparseGF2Matrix is only touched through x -> A·x and u -> Aᵀ·u. Vectors
live in GF(2^64) (uint64 words, see algebra.gf2_64); a GF(2) vector is the
same array with entries in {0, 1}.

test_consistency solves A·x = b with a Wiedemann iteration on the
preconditioned square matrix S = D1·Aᵀ·D2·A (D1, D2 random nonzero
diagonals over GF(2^64)). S is n_cols × n_cols whatever the shape of A,
which is the zero padding of the rectangular case done implicitly. Either
outcome is re-verified over GF(2) before it is returned; a failed attempt
is retried with fresh randomness up to a cap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from algebra import gf2_64
from algebra.gf2_dense import DimensionMismatch
from algebra.rng import SplitMix64
from config import RETRY_CAP

log = logging.getLogger(__name__)

_U1 = np.uint64(1)


class RetriesExhausted(RuntimeError):
    """Every attempt of the randomized consistency test failed."""


def _csr(rows: Sequence[Sequence[int]]) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    for i, row in enumerate(rows):
        indptr[i + 1] = indptr[i] + len(row)
    indices = np.fromiter((c for row in rows for c in row), dtype=np.int64, count=int(indptr[-1]))
    return indptr, indices


def _xor_rows(indptr: np.ndarray, indices: np.ndarray, x: np.ndarray, n_out: int) -> np.ndarray:
    out = np.zeros(n_out, dtype=np.uint64)
    if indices.size == 0:
        return out
    nonempty = np.flatnonzero(np.diff(indptr))
    # consecutive non-empty starts delimit exactly one row each
    out[nonempty] = np.bitwise_xor.reduceat(x[indices], indptr[nonempty])
    return out


class SparseGF2Matrix:
    """CSR storage of a GF(2) matrix plus its transpose."""

    def __init__(self, n_rows: int, n_cols: int, rows: Sequence[Sequence[int]]):
        if len(rows) != n_rows:
            raise DimensionMismatch(f"{len(rows)} row lists given for {n_rows} rows")
        for i, row in enumerate(rows):
            for a, b in zip(row, row[1:]):
                if a >= b:
                    raise ValueError(f"row {i}: column indices must be strictly increasing")
            if row and not (0 <= row[0] and row[-1] < n_cols):
                raise DimensionMismatch(f"row {i}: column index out of range 0..{n_cols - 1}")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rows)
        self._indptr, self._indices = _csr(self.rows)

        cols: list[list[int]] = [[] for _ in range(n_cols)]
        for i, row in enumerate(self.rows):
            for c in row:
                cols[c].append(i)
        self._t_indptr, self._t_indices = _csr(cols)

    @classmethod
    def from_dense(cls, bits) -> "SparseGF2Matrix":
        arr = np.asarray(bits)
        return cls(arr.shape[0], arr.shape[1], [tuple(int(c) for c in np.flatnonzero(r)) for r in arr])

    @property
    def nnz(self) -> int:
        return int(self._indices.size)

    def transposed(self) -> "SparseGF2Matrix":
        cols: list[list[int]] = [[] for _ in range(self.n_cols)]
        for i, row in enumerate(self.rows):
            for c in row:
                cols[c].append(i)
        return SparseGF2Matrix(self.n_cols, self.n_rows, cols)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for i, row in enumerate(self.rows):
            out[i, list(row)] = 1
        return out

    def apply(self, x: np.ndarray) -> np.ndarray:
        """A·x."""
        x = np.asarray(x, dtype=np.uint64)
        if x.shape != (self.n_cols,):
            raise DimensionMismatch(f"vector of length {x.shape} for a matrix with {self.n_cols} columns")
        return _xor_rows(self._indptr, self._indices, x, self.n_rows)

    def apply_transpose(self, u: np.ndarray) -> np.ndarray:
        """Aᵀ·u."""
        u = np.asarray(u, dtype=np.uint64)
        if u.shape != (self.n_rows,):
            raise DimensionMismatch(f"vector of length {u.shape} for a matrix with {self.n_rows} rows")
        return _xor_rows(self._t_indptr, self._t_indices, u, self.n_cols)


def berlekamp_massey(seq: Sequence[int]) -> list[int]:
    """
    Minimal polynomial of a linear recurrence over GF(2^64).

    Returns coefficients low-to-high, monic: [c_0, ..., c_{L-1}, 1] with
    sum_i c_i s_{j+i} = 0 for every window of the sequence.
    """
    s = np.array([int(v) for v in seq], dtype=np.uint64)
    size = s.size
    # connection polynomial C(z) = 1 + C_1 z + ... + C_L z^L
    c = np.zeros(size + 1, dtype=np.uint64)
    c[0] = 1
    b = c.copy()
    b_len = 1
    length = 0
    shift = 1
    b_disc = 1
    for n in range(size):
        d = int(s[n])
        if length:
            d ^= gf2_64.dot(c[1 : length + 1], s[n - length : n][::-1])
        if d == 0:
            shift += 1
            continue
        coef = gf2_64.mul(d, gf2_64.inv(b_disc))
        previous = c.copy()
        span = min(b_len, size + 1 - shift)
        c[shift : shift + span] ^= gf2_64.scale(b[:span], coef)
        if 2 * length <= n:
            b, b_len = previous, length + 1
            length = n + 1 - length
            b_disc = d
            shift = 1
        else:
            shift += 1
    # reversing C gives the characteristic form, monic in the top degree
    return [int(c[length - i]) for i in range(length + 1)]


@dataclass
class ConsistencyOutcome:
    consistent: bool
    # x with A·x = b when consistent, else u with uᵀ·A = 0 and u·b = 1; 0/1 uint8
    witness: np.ndarray
    applications: int = 0
    attempts: int = 1

    @property
    def tag(self) -> str:
        return "consistent" if self.consistent else "inconsistent"


def _gf2(v: np.ndarray) -> np.ndarray:
    return np.asarray(v, dtype=np.uint64) & _U1


def verify(a: SparseGF2Matrix, b: np.ndarray, outcome: ConsistencyOutcome) -> bool:
    """Re-check a witness over GF(2)."""
    w = _gf2(outcome.witness)
    bb = _gf2(b)
    if outcome.consistent:
        return bool(np.array_equal(a.apply(w), bb))
    if w.size == 0 or a.apply_transpose(w).any():
        return False
    return int(np.bitwise_xor.reduce(w & bb)) == 1


class _Attempt:
    """One Wiedemann run with its own preconditioner and projection."""

    def __init__(self, a: SparseGF2Matrix, rng: SplitMix64):
        self.a = a
        self.d1 = gf2_64.Multiplier(gf2_64.random_vector(rng, a.n_cols, nonzero=True))
        self.d2 = gf2_64.Multiplier(gf2_64.random_vector(rng, a.n_rows, nonzero=True))
        self.v = gf2_64.Multiplier(gf2_64.random_vector(rng, a.n_cols))
        self.applications = 0

    def s_apply(self, x: np.ndarray) -> np.ndarray:
        y = self.d2(self.a.apply(x))
        self.applications += 2
        return self.d1(self.a.apply_transpose(y))

    def rhs(self, b: np.ndarray) -> np.ndarray:
        self.applications += 1
        return self.d1(self.a.apply_transpose(self.d2(b)))

    def solve(self, b_pre: np.ndarray) -> np.ndarray | None:
        """x with S·x = b_pre, or None when the recurrence has no usable constant term."""
        n = self.a.n_cols
        seq = []
        w = b_pre
        for _ in range(2 * n):
            seq.append(self.v.dot(w))
            w = self.s_apply(w)
        f = berlekamp_massey(seq)
        if len(f) < 2 or f[0] == 0:
            return None
        times_b = gf2_64.Multiplier(b_pre)
        # x = f0^-1 · sum_{i>=1} f_i S^{i-1} b_pre, by Horner
        acc = times_b(np.full(n, f[-1], dtype=np.uint64))
        for fi in reversed(f[1:-1]):
            acc = self.s_apply(acc) ^ times_b(np.full(n, fi, dtype=np.uint64))
        return gf2_64.scale(acc, gf2_64.inv(f[0]))


def _attempt(a: SparseGF2Matrix, b: np.ndarray, rng: SplitMix64) -> tuple[ConsistencyOutcome | None, int]:
    run = _Attempt(a, rng)
    b_pre = run.rhs(b)
    if b_pre.any():
        x = run.solve(b_pre)
        if x is None:
            return None, run.applications
    else:
        x = np.zeros(a.n_cols, dtype=np.uint64)

    ax = a.apply(x)
    run.applications += 1
    if np.array_equal(ax, b):
        # b is over GF(2), so bit slice 0 of x solves the system
        return ConsistencyOutcome(True, _gf2(x).astype(np.uint8)), run.applications

    # Aᵀ·D2·(A·x - b) = 0, so u = D2·e is a left-kernel vector over GF(2^64)
    u = run.d2(ax ^ b)
    for j in range(64):
        slice_j = (u >> np.uint64(j)) & _U1
        if int(np.bitwise_xor.reduce(slice_j & b)) != 1:
            continue
        run.applications += 1
        if not a.apply_transpose(slice_j).any():
            return ConsistencyOutcome(False, slice_j.astype(np.uint8)), run.applications
    return None, run.applications


def test_consistency(
    a: SparseGF2Matrix,
    b: np.ndarray | Iterable[int],
    rng: SplitMix64,
    retry_cap: int = RETRY_CAP,
) -> ConsistencyOutcome:
    """
    Decide A·x = b over GF(2) and return a verified witness.

    b is a 0/1 vector of length n_rows or an iterable of its nonzero indices.
    Raises RetriesExhausted after retry_cap failed attempts.
    """
    if isinstance(b, np.ndarray):
        bb = _gf2(b)
        if bb.shape != (a.n_rows,):
            raise DimensionMismatch(f"right-hand side of length {bb.shape} for {a.n_rows} rows")
    else:
        bb = np.zeros(a.n_rows, dtype=np.uint64)
        for i in b:
            bb[i] = _U1

    if not bb.any():
        return ConsistencyOutcome(True, np.zeros(a.n_cols, dtype=np.uint8), applications=0)

    applications = 0
    for attempt in range(1, retry_cap + 1):
        outcome, used = _attempt(a, bb, rng)
        applications += used
        if outcome is not None and verify(a, bb, outcome):
            outcome.applications = applications
            outcome.attempts = attempt
            return outcome
        log.debug("consistency attempt %d/%d failed (%d applications so far)", attempt, retry_cap, applications)
    raise RetriesExhausted(f"no verified witness after {retry_cap} attempts ({applications} applications)")


# not a test case, despite the name
test_consistency.__test__ = False


def solve_left(
    rows: Sequence[Sequence[int]],
    n_cols: int,
    r: Iterable[int],
    rng: SplitMix64,
    retry_cap: int = RETRY_CAP,
) -> tuple[tuple[int, ...] | None, ConsistencyOutcome]:
    """
    u·M = r for a row-sparse M, via test_consistency on the transpose.

    Returns (support of u or None, raw outcome). None means r is not in the
    row space; the outcome then holds a column combination z with M·z = 0
    and z·r = 1.
    """
    mt = SparseGF2Matrix(len(rows), n_cols, rows).transposed()
    outcome = test_consistency(mt, list(r), rng, retry_cap)
    if outcome.consistent:
        return tuple(int(i) for i in np.flatnonzero(outcome.witness)), outcome
    return None, outcome
