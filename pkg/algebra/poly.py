"""
Reduced quadratic boolean polynomials and systems.

A polynomial in n variables is a bitset over the basis
{x_i x_j : i < j} ∪ {x_i} ∪ {1} in descending grevlex order: bit c of
`coeffs` is the coefficient of column c of MonomialIndex(n, 2). No x_i^2
term can be stored, so every polynomial is reduced modulo x_i^2 = x_i.

Assignments are integers with x1 as the least significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from algebra.monomials import Monomial, format_monomial, monomial_index
from algebra.rng import SplitMix64


class WidthMismatch(ValueError):
    """Assignment or tail width does not fit the polynomial / system."""


def basis_size(n: int) -> int:
    return comb(n, 2) + n + 1


def _parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class Assignment:
    n: int
    value: int

    def __post_init__(self):
        if self.value < 0 or self.value >> self.n:
            raise WidthMismatch(f"assignment value {self.value} does not fit in {self.n} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "Assignment":
        value = 0
        for i, b in enumerate(bits):
            if b:
                value |= 1 << i
        return cls(len(bits), value)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.n))

    def to_string(self) -> str:
        """Binary string, x1 first."""
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class QuadraticPoly:
    n: int
    coeffs: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"variable count must be >= 0, got {self.n}")
        if self.coeffs < 0 or self.coeffs >> basis_size(self.n):
            raise ValueError(f"coefficient bitset wider than the {basis_size(self.n)}-term basis")

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Monomial]) -> "QuadraticPoly":
        """Build from monomials (0-based index tuples); repeated terms cancel."""
        idx = monomial_index(n, 2)
        coeffs = 0
        for mono in terms:
            coeffs ^= 1 << idx.rank(tuple(sorted(mono)))
        return cls(n, coeffs)

    def terms(self) -> list[Monomial]:
        """Monomials with coefficient 1, in descending grevlex order."""
        idx = monomial_index(self.n, 2)
        out = []
        c = self.coeffs
        while c:
            low = c & -c
            out.append(idx.monomials[low.bit_length() - 1])
            c ^= low
        return out

    @property
    def is_zero(self) -> bool:
        return self.coeffs == 0

    @cached_property
    def _structure(self) -> tuple[tuple[int, ...], int, int]:
        # quad[i] = mask of j > i with x_i x_j present; linear mask; constant
        quad = [0] * self.n
        linear = 0
        const = 0
        for mono in self.terms():
            if len(mono) == 2:
                quad[mono[0]] |= 1 << mono[1]
            elif len(mono) == 1:
                linear |= 1 << mono[0]
            else:
                const = 1
        return tuple(quad), linear, const

    def __add__(self, other: "QuadraticPoly") -> "QuadraticPoly":
        if other.n != self.n:
            raise WidthMismatch(f"cannot add polynomials in {self.n} and {other.n} variables")
        return QuadraticPoly(self.n, self.coeffs ^ other.coeffs)

    def __str__(self) -> str:
        terms = self.terms()
        if not terms:
            return "0"
        return "+".join(format_monomial(t) for t in terms)


def evaluate(p: QuadraticPoly, a: Assignment) -> int:
    """p(a) over GF(2)."""
    if a.n != p.n:
        raise WidthMismatch(f"assignment has {a.n} bits, polynomial has {p.n} variables")
    quad, linear, const = p._structure
    x = a.value
    acc = const ^ _parity(linear & x)
    rest = x
    while rest:
        low = rest & -rest
        i = low.bit_length() - 1
        acc ^= _parity(quad[i] & x)
        rest ^= low
    return acc


@dataclass(frozen=True)
class QuadraticSystem:
    n: int
    polys: tuple[QuadraticPoly, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"a system needs n >= 1 variables, got {self.n}")
        if not self.polys:
            raise ValueError("a system needs m >= 1 equations")
        for j, p in enumerate(self.polys):
            if p.n != self.n:
                raise WidthMismatch(f"equation {j + 1} has {p.n} variables, system has {self.n}")

    @property
    def m(self) -> int:
        return len(self.polys)

    def is_solution(self, a: Assignment) -> bool:
        return all(evaluate(p, a) == 0 for p in self.polys)


def system_from_polys(polys: Sequence[QuadraticPoly]) -> QuadraticSystem:
    if not polys:
        raise ValueError("a system needs m >= 1 equations")
    return QuadraticSystem(polys[0].n, tuple(polys))


def _specialize_poly(p: QuadraticPoly, k: int, tail: int) -> QuadraticPoly:
    nh = p.n - k
    head_idx = monomial_index(nh, 2)
    out = 0
    for mono in p.terms():
        head = tuple(v for v in mono if v < nh)
        fixed = [v for v in mono if v >= nh]
        if all((tail >> (v - nh)) & 1 for v in fixed):
            out ^= 1 << head_idx.table[head]
    return QuadraticPoly(nh, out)


def specialize(s: QuadraticSystem, tail: Sequence[int] | int, k: int | None = None) -> QuadraticSystem:
    """
    Substitute values for the last k variables x_{n-k+1}, ..., x_n.

    `tail` is either a bit sequence (tail[0] is x_{n-k+1}) or an integer
    with x_{n-k+1} as its least significant bit; in the integer form k must
    be given.
    """
    if isinstance(tail, int):
        if k is None:
            raise ValueError("k is required when the tail is given as an integer")
        tail_int = tail
        if tail_int < 0 or tail_int >> k:
            raise WidthMismatch(f"tail {tail_int} does not fit in {k} bits")
    else:
        k = len(tail)
        tail_int = Assignment.from_bits(tail).value
    if not 0 <= k < s.n:
        raise WidthMismatch(f"cannot specialize {k} of {s.n} variables (need 0 <= k < n)")
    if k == 0:
        return s
    return QuadraticSystem(s.n - k, tuple(_specialize_poly(p, k, tail_int) for p in s.polys))


def random_system(n: int, m: int, seed: int) -> QuadraticSystem:
    """Uniform random system from the splitmix64 stream, poly 1 first."""
    if n < 1 or m < 1:
        raise ValueError(f"random_system needs n, m >= 1, got n={n}, m={m}")
    rng = SplitMix64(seed)
    width = basis_size(n)
    return QuadraticSystem(n, tuple(QuadraticPoly(n, rng.next_bits(width)) for _ in range(m)))


def plant_solution(s: QuadraticSystem, z: Assignment) -> QuadraticSystem:
    """Flip constant terms so that z becomes a root of every equation."""
    const_bit = 1 << (basis_size(s.n) - 1)
    polys = []
    for p in s.polys:
        if evaluate(p, z):
            p = QuadraticPoly(p.n, p.coeffs ^ const_bit)
        polys.append(p)
    return QuadraticSystem(s.n, tuple(polys))
