"""
Squarefree monomials in descending grevlex order.

A monomial is a sorted tuple of 0-based variable indices (x1 -> 0), so
x1*x3 is (0, 2) and the constant monomial is (). Column 0 is the
grevlex-largest monomial of degree d, the last column is the constant.

Within one degree, descending grevlex on squarefree monomials is the
colexicographic order on the index tuples, so ranks come from the
combinatorial number system.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

Monomial = tuple[int, ...]


def colex_rank(mono: Monomial) -> int:
    """Rank of a squarefree monomial among those of the same degree."""
    return sum(comb(v, j + 1) for j, v in enumerate(mono))


def colex_unrank(rank: int, degree: int) -> Monomial:
    out: list[int] = []
    for j in range(degree, 0, -1):
        v = j - 1
        while comb(v + 1, j) <= rank:
            v += 1
        rank -= comb(v, j)
        out.append(v)
    return tuple(reversed(out))


class MonomialIndex:
    """Bijection between squarefree monomials of degree <= d and columns."""

    def __init__(self, nv: int, d: int):
        if nv < 0 or d < 0:
            raise ValueError(f"invalid monomial index nv={nv}, d={d}")
        self.nv = nv
        self.d = d
        # offsets[e] = first column of degree e
        self.offsets: dict[int, int] = {}
        col = 0
        for e in range(d, -1, -1):
            self.offsets[e] = col
            col += comb(nv, e)
        self.size = col
        self.monomials: list[Monomial] = []
        for e in range(d, -1, -1):
            block = sorted(combinations(range(nv), e), key=lambda c: c[::-1])
            self.monomials.extend(block)
        self.table: dict[Monomial, int] = {mono: i for i, mono in enumerate(self.monomials)}
        # same bijection keyed by variable bitmask (bit v = x_{v+1})
        self.mask_table: dict[int, int] = {
            sum(1 << v for v in mono): i for i, mono in enumerate(self.monomials)
        }

    def rank(self, mono: Monomial) -> int:
        if len(mono) > self.d:
            raise ValueError(f"monomial {format_monomial(mono)} has degree > {self.d}")
        try:
            return self.table[mono]
        except KeyError:
            raise ValueError(f"not a squarefree monomial in {self.nv} variables: {mono}") from None

    def unrank(self, index: int) -> Monomial:
        if not 0 <= index < self.size:
            raise ValueError(f"column {index} out of range 0..{self.size - 1}")
        return self.monomials[index]

    @property
    def constant_column(self) -> int:
        return self.size - 1

    def __len__(self) -> int:
        return self.size


@lru_cache(maxsize=256)
def monomial_index(nv: int, d: int) -> MonomialIndex:
    """Shared, cached MonomialIndex (instances are never mutated)."""
    return MonomialIndex(nv, d)


def format_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(f"x{v + 1}" for v in mono)
