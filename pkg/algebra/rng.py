"""
splitmix64 random stream.

The generator is specified bit-for-bit so that generated systems are
reproducible across implementations. State is always passed explicitly.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def splitmix64(x: int) -> int:
    """First output of a stream seeded with x (used for seed derivation)."""
    return _mix((x + _GOLDEN) & MASK64)


def derive_seed(seed: int, index: int) -> int:
    """Seed for branch / trial `index`: splitmix64(seed XOR index)."""
    return splitmix64((seed ^ index) & MASK64)


class SplitMix64:
    """splitmix64 generator with a bit reader (LSB of each word first)."""

    def __init__(self, seed: int):
        self.state = seed & MASK64
        self._word = 0
        self._bits_left = 0

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        return _mix(self.state)

    def next_bit(self) -> int:
        if self._bits_left == 0:
            self._word = self.next_u64()
            self._bits_left = 64
        bit = self._word & 1
        self._word >>= 1
        self._bits_left -= 1
        return bit

    def next_bits(self, count: int) -> int:
        """Return `count` bits packed into an int, first bit drawn = bit 0."""
        out = 0
        pos = 0
        while pos < count:
            if self._bits_left == 0:
                self._word = self.next_u64()
                self._bits_left = 64
            take = min(count - pos, self._bits_left)
            out |= (self._word & ((1 << take) - 1)) << pos
            self._word >>= take
            self._bits_left -= take
            pos += take
        return out

    def next_nonzero_u64(self) -> int:
        while True:
            w = self.next_u64()
            if w:
                return w
