"""
GF(2^64) = GF(2)[y] / (y^64 + y^4 + y^3 + y + 1).

Elements are 64-bit words, bit i is the coefficient of y^i, so GF(2) embeds
as {0, 1}. Scalars are plain Python ints; vectors are numpy uint64 arrays
and are multiplied element-wise with a bit-serial carry-less product.
"""

from __future__ import annotations

import numpy as np

from config import GF64_MODULUS_LOW

MASK64 = (1 << 64) - 1
ORDER = 1 << 64
MODULUS = ORDER | GF64_MODULUS_LOW

_U1 = np.uint64(1)

# exponents of the modulus below y^64
_TAPS = tuple(i for i in range(64) if (GF64_MODULUS_LOW >> i) & 1)
_ZERO = np.uint64(0)


def _times_taps(v: int) -> int:
    out = 0
    for tap in _TAPS:
        out ^= v << tap
    return out


def _fold(hi: int) -> int:
    """hi·y^64 reduced to below 2^64 (hi < 2^64)."""
    low = _times_taps(hi)
    carry = low >> 64
    # carry is below 2^max_tap, its own fold stays inside one word
    return (low & MASK64) ^ _times_taps(carry)


def mul(a: int, b: int) -> int:
    if not a or not b:
        return 0
    # carry-less a·b with a 4-bit window over b
    window = [0] * 16
    for i in range(1, 16):
        acc = 0
        for bit in range(4):
            if (i >> bit) & 1:
                acc ^= a << bit
        window[i] = acc
    prod = 0
    for shift in range(60, -1, -4):
        prod = (prod << 4) ^ window[(b >> shift) & 0xF]
    return (prod & MASK64) ^ _fold(prod >> 64)


def square(a: int) -> int:
    return mul(a, a)


def power(a: int, e: int) -> int:
    result = 1
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def inv(a: int) -> int:
    """Inverse by the binary extended Euclidean algorithm over GF(2)[y]."""
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(2^64)")
    u, v = a, MODULUS
    g1, g2 = 1, 0
    while u != 1:
        j = u.bit_length() - v.bit_length()
        if j < 0:
            u, v = v, u
            g1, g2 = g2, g1
            j = -j
        u ^= v << j
        g1 ^= g2 << j
    return _reduce(g1)


def _reduce(x: int) -> int:
    while x.bit_length() > 64:
        x ^= MODULUS << (x.bit_length() - 65)
    return x


def _taps_vec(v: np.ndarray) -> np.ndarray:
    out = np.zeros_like(v)
    for tap in _TAPS:
        out ^= v << np.uint64(tap)
    return out


def _fold_vec(hi: np.ndarray) -> np.ndarray:
    carry = np.zeros_like(hi)
    for tap in _TAPS:
        if tap:
            carry ^= hi >> np.uint64(64 - tap)
    return _taps_vec(hi) ^ _taps_vec(carry)


def vec_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Element-wise product of two uint64 vectors (y may be a broadcast scalar)."""
    x = np.asarray(x, dtype=np.uint64)
    y = np.broadcast_to(np.asarray(y, dtype=np.uint64), x.shape)
    lo = np.where((y & _U1).astype(bool), x, _ZERO)
    hi = np.zeros_like(x)
    for i in range(1, 64):
        sh = np.uint64(i)
        sel = ((y >> sh) & _U1).astype(bool)
        if not sel.any():
            continue
        xs = np.where(sel, x, _ZERO)
        lo ^= xs << sh
        hi ^= xs >> np.uint64(64 - i)
    return lo ^ _fold_vec(hi)


def scale(x: np.ndarray, c: int) -> np.ndarray:
    if c == 0:
        return np.zeros_like(x, dtype=np.uint64)
    if c == 1:
        return np.asarray(x, dtype=np.uint64).copy()
    return vec_mul(x, np.uint64(c))


def dot(x: np.ndarray, y: np.ndarray) -> int:
    """Sum of x_i·y_i as a Python int."""
    if x.shape != y.shape:
        raise ValueError(f"dot of vectors with shapes {x.shape} and {y.shape}")
    if x.size == 0:
        return 0
    return int(np.bitwise_xor.reduce(vec_mul(x, y)))


def random_vector(rng, size: int, nonzero: bool = False) -> np.ndarray:
    draw = rng.next_nonzero_u64 if nonzero else rng.next_u64
    return np.array([draw() for _ in range(size)], dtype=np.uint64)


def times_y(v: np.ndarray) -> np.ndarray:
    top = (v >> np.uint64(63)).astype(bool)
    return (v << _U1) ^ np.where(top, np.uint64(GF64_MODULUS_LOW), _ZERO)


class Multiplier:
    """
    Element-wise multiplication by a fixed vector d.

    Precomputes d_i·(b·y^(8j)) for every byte value b and byte position j,
    so one product costs eight table gathers instead of 64 shift rounds.
    """

    def __init__(self, d: np.ndarray):
        d = np.asarray(d, dtype=np.uint64)
        size = d.size
        powers = np.empty((64, size), dtype=np.uint64)
        cur = d.copy()
        for t in range(64):
            powers[t] = cur
            cur = times_y(cur)
        table = np.zeros((8, 256, size), dtype=np.uint64)
        for j in range(8):
            for b in range(1, 256):
                low = b & -b
                table[j, b] = table[j, b ^ low] ^ powers[8 * j + low.bit_length() - 1]
        self.size = size
        self._table = table
        self._cols = np.arange(size)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.uint64)
        out = np.zeros(self.size, dtype=np.uint64)
        for j in range(8):
            byte = ((x >> np.uint64(8 * j)) & np.uint64(0xFF)).astype(np.intp)
            out ^= self._table[j, byte, self._cols]
        return out

    def dot(self, x: np.ndarray) -> int:
        if self.size == 0:
            return 0
        return int(np.bitwise_xor.reduce(self(x)))
