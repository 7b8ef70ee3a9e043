"""
.anf system reader and writer.

Format: a header line `p <n> <m>`, then m lines, each a `+`-separated list
of monomial tokens `1`, `x<i>`, `x<i>*x<j>` (1 <= i < j <= n), or `0` for
the zero polynomial. ASCII, LF line endings. Output is always canonical:
monomials in descending grevlex order.
"""

from __future__ import annotations

import re
from pathlib import Path

from algebra.monomials import Monomial
from algebra.poly import QuadraticPoly, QuadraticSystem

_HEADER = re.compile(r"^p\s+(\d+)\s+(\d+)$")
_TOKEN = re.compile(r"^(?:(1)|x(\d+)|x(\d+)\*x(\d+))$")


class AnfFormatError(ValueError):
    """Malformed .anf text; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _parse_token(token: str, n: int, line_no: int) -> Monomial:
    match = _TOKEN.match(token)
    if not match:
        raise AnfFormatError(line_no, f"malformed monomial token {token!r}")
    one, lin, qi, qj = match.groups()
    if one:
        return ()
    if lin:
        indices = [int(lin)]
    else:
        indices = [int(qi), int(qj)]
        if indices[0] >= indices[1]:
            raise AnfFormatError(line_no, f"indices must be strictly ascending in {token!r}")
    for i in indices:
        if not 1 <= i <= n:
            raise AnfFormatError(line_no, f"variable index {i} out of range 1..{n}")
    return tuple(i - 1 for i in indices)


def _parse_poly(line: str, n: int, line_no: int) -> QuadraticPoly:
    body = line.strip()
    if body == "0":
        return QuadraticPoly(n, 0)
    if not body:
        raise AnfFormatError(line_no, "empty polynomial line (use 0 for the zero polynomial)")
    seen: set[Monomial] = set()
    for token in body.split("+"):
        mono = _parse_token(token.strip(), n, line_no)
        if mono in seen:
            raise AnfFormatError(line_no, f"duplicate monomial {token.strip()!r}")
        seen.add(mono)
    return QuadraticPoly.from_terms(n, seen)


def parse(text: str) -> QuadraticSystem:
    """Parse .anf text into a QuadraticSystem."""
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise AnfFormatError(1, "missing header `p <n> <m>`")
    header = _HEADER.match(lines[0].strip())
    if not header:
        raise AnfFormatError(1, f"bad header {lines[0]!r}, expected `p <n> <m>`")
    n, m = int(header.group(1)), int(header.group(2))
    if n < 1 or m < 1:
        raise AnfFormatError(1, f"header needs n >= 1 and m >= 1, got n={n}, m={m}")
    body = lines[1:]
    if len(body) != m:
        raise AnfFormatError(len(lines), f"expected {m} polynomial lines, found {len(body)}")
    polys = tuple(_parse_poly(line, n, i + 2) for i, line in enumerate(body))
    return QuadraticSystem(n, polys)


def serialize(s: QuadraticSystem) -> str:
    """Canonical .anf text (trailing newline included)."""
    lines = [f"p {s.n} {s.m}"]
    lines.extend(str(p) for p in s.polys)
    return "\n".join(lines) + "\n"


def read_anf(path: str | Path) -> QuadraticSystem:
    return parse(Path(path).read_text(encoding="ascii"))


def write_anf(path: str | Path, s: QuadraticSystem) -> None:
    Path(path).write_text(serialize(s), encoding="ascii", newline="\n")
