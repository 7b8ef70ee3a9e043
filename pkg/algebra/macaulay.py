"""
Boolean Macaulay matrix in degree d.

Rows are the coefficient vectors of phi(t * f_j) for every squarefree
monomial t of degree <= d - 2, ordered by (j ascending, t descending
grevlex). Columns are the squarefree monomials of degree <= d in
descending grevlex order, so the constant monomial is the last column.

Rows of all degrees below d are included, and
rows that cancel to zero under phi are kept so dimensions stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from algebra.monomials import (
    Monomial,
    MonomialIndex,
    format_monomial,
    monomial_index,
)
from algebra.poly import QuadraticPoly, QuadraticSystem

__all__ = [
    "MacaulayMatrix",
    "MonomialIndex",
    "build",
    "combine_rows",
    "dump_sms",
    "expand_certificate",
    "format_certificate",
    "grevlex_rank",
    "grevlex_unrank",
    "phi_multiply",
    "rhs_vector",
    "row_terms",
]


def _mask(mono: Monomial) -> int:
    out = 0
    for v in mono:
        out |= 1 << v
    return out


@dataclass(frozen=True)
class MacaulayMatrix:
    rows: tuple[tuple[int, ...], ...]
    n_rows: int
    n_cols: int
    # provenance[i] = (j, t): row i holds phi(t * f_j), j 0-based
    provenance: tuple[tuple[int, Monomial], ...]
    idx: MonomialIndex

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def degree(self) -> int:
        return self.idx.d


def phi_multiply(t: Monomial, f: QuadraticPoly, idx: MonomialIndex | None = None) -> tuple[int, ...]:
    """Sorted column set of phi(t * f); colliding monomials cancel."""
    if idx is None:
        idx = monomial_index(f.n, len(t) + 2)
    tm = _mask(t)
    cols: set[int] = set()
    for term in f.terms():
        col = idx.mask_table[tm | _mask(term)]
        cols ^= {col}
    return tuple(sorted(cols))


def build(s: QuadraticSystem, d: int) -> MacaulayMatrix:
    """Boolean Macaulay matrix of s in degree d (d >= 2)."""
    if d < 2:
        raise ValueError(f"Macaulay degree must be >= 2, got {d}")
    idx = monomial_index(s.n, d)
    multipliers = monomial_index(s.n, d - 2).monomials
    t_masks = [_mask(t) for t in multipliers]
    table = idx.mask_table

    rows: list[tuple[int, ...]] = []
    provenance: list[tuple[int, Monomial]] = []
    for j, f in enumerate(s.polys):
        f_masks = [_mask(term) for term in f.terms()]
        for t, tm in zip(multipliers, t_masks):
            cols: set[int] = set()
            for fm in f_masks:
                cols ^= {table[tm | fm]}
            rows.append(tuple(sorted(cols)))
            provenance.append((j, t))

    return MacaulayMatrix(
        rows=tuple(rows),
        n_rows=len(rows),
        n_cols=idx.size,
        provenance=tuple(provenance),
        idx=idx,
    )


def grevlex_rank(mono: Monomial, idx: MonomialIndex) -> int:
    """Column of a squarefree monomial; 0 is the grevlex-largest of degree idx.d."""
    return idx.rank(tuple(sorted(mono)))


def grevlex_unrank(index: int, idx: MonomialIndex) -> Monomial:
    return idx.unrank(index)


def rhs_vector(idx: MonomialIndex) -> tuple[int, ...]:
    """r = (0, ..., 0, 1): the constant monomial column."""
    return (grevlex_rank((), idx),)


def row_terms(row: Iterable[int], idx: MonomialIndex) -> list[Monomial]:
    """Read a sparse row back as the monomials of a polynomial."""
    return [grevlex_unrank(c, idx) for c in row]


def combine_rows(matrix: MacaulayMatrix, selection: Iterable[int]) -> tuple[int, ...]:
    """XOR of the selected rows, as a sorted column tuple."""
    acc: set[int] = set()
    for i in selection:
        acc ^= set(matrix.rows[i])
    return tuple(sorted(acc))


def expand_certificate(matrix: MacaulayMatrix, selection: Iterable[int]) -> dict[int, list[Monomial]]:
    """
    Multipliers h_j of a left-combination: selecting rows (j, t) means
    sum_j phi(h_j * f_j) with h_j = sum of the selected t for equation j.
    For an inconsistency certificate this sum is the constant 1.
    """
    out: dict[int, list[Monomial]] = {}
    for i in sorted(selection):
        j, t = matrix.provenance[i]
        out.setdefault(j, []).append(t)
    return out


def format_certificate(expansion: dict[int, list[Monomial]]) -> list[str]:
    lines = []
    for j in sorted(expansion):
        h = "+".join(format_monomial(t) for t in expansion[j])
        lines.append(f"h{j + 1} = {h}")
    return lines


def dump_sms(matrix: MacaulayMatrix) -> str:
    """SMS triplet text: `n_rows n_cols 2`, then 1-based `row col 1` lines."""
    lines = [f"{matrix.n_rows} {matrix.n_cols} 2"]
    for i, row in enumerate(matrix.rows):
        for c in row:
            lines.append(f"{i + 1} {c + 1} 1")
    lines.append("0 0 0")
    return "\n".join(lines) + "\n"

