"""Hilbert-series degree bounds and asymptotic exponent formulas.

Exact part: coefficient prefixes of (1+t)^nv / ((1-t)(1+t^2)^m) in
arbitrary-precision integers, the index d0 of the first nonpositive
coefficient (the Macaulay degree the solver uses) and the value found there.

Asymptotic part: M(x), F_alpha(gamma), the complexity exponent
1 - gamma + theta·F_alpha(gamma) and the optimal specialisation ratio.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, log2, sqrt

from config import LAMBDA_STAR


class NoNonpositiveCoefficient(ValueError):
    """The series stays positive up to the scan cap (not overdetermined enough)."""


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[int, ...]

    def __getitem__(self, d: int) -> int:
        return self.coeffs[d]

    def __len__(self) -> int:
        return len(self.coeffs)

    def first_nonpositive(self) -> int | None:
        for d, c in enumerate(self.coeffs):
            if c <= 0:
                return d
        return None


def _binomial_row(nv: int, cap: int) -> list[int]:
    return [comb(nv, i) for i in range(cap + 1)]


def _inverse_square_power(m: int, cap: int) -> list[int]:
    """(1+t^2)^(-m) up to t^cap."""
    out = [0] * (cap + 1)
    for k in range(cap // 2 + 1):
        out[2 * k] = (-1) ** k * comb(m + k - 1, k)
    return out


def series_prefix(nv: int, m: int, cap: int) -> TruncatedSeries:
    """Coefficients of (1+t)^nv / ((1-t)(1+t^2)^m) for t^0..t^cap."""
    if nv < 0 or m < 1 or cap < 0:
        raise ValueError(f"series_prefix needs nv >= 0, m >= 1, cap >= 0 (got {nv}, {m}, {cap})")
    num = _binomial_row(nv, cap)
    den = _inverse_square_power(m, cap)
    prod = [0] * (cap + 1)
    for i, a in enumerate(num):
        if a == 0:
            continue
        for j in range(0, cap + 1 - i, 2):
            prod[i + j] += a * den[j]
    # 1/(1-t) is a running sum
    total = 0
    out = []
    for c in prod:
        total += c
        out.append(total)
    return TruncatedSeries(tuple(out))


def _scan(nv: int, m: int) -> tuple[int, int]:
    # d0 is usually far below nv, so widen the prefix only as needed
    limit = nv + 3
    cap = min(limit, 16)
    while True:
        series = series_prefix(nv, m, cap)
        d = series.first_nonpositive()
        if d is not None:
            return d, series[d]
        if cap == limit:
            raise NoNonpositiveCoefficient(f"no nonpositive coefficient up to degree {limit} for nv={nv}, m={m}")
        cap = min(limit, 2 * cap)


def d0(nv: int, m: int) -> int:
    """Index of the first nonpositive coefficient; scans up to nv + 3."""
    return _scan(nv, m)[0]


def first_nonpositive_value(nv: int, m: int) -> int:
    return _scan(nv, m)[1]


def hs_degree(nv: int, m: int) -> int:
    """Degree of the truncated series HS (one below d0)."""
    return d0(nv, m) - 1


def d0_table(nv_max: int, m: int) -> list[int]:
    """[d0(0, m), d0(1, m), ..., d0(nv_max, m)] in one sweep.

    Uses S_nv = (1+t)·S_{nv-1}; d0 is nondecreasing in nv, so every prefix
    only needs d0(nv_max, m) + 1 terms.
    """
    width = d0(nv_max, m) + 1
    row = list(series_prefix(0, m, width - 1).coeffs)
    out = []
    for nv in range(nv_max + 1):
        if nv:
            row = [row[0]] + [row[d] + row[d - 1] for d in range(1, width)]
        d = next((i for i, c in enumerate(row) if c <= 0), None)
        if d is None or d > nv + 3:
            raise NoNonpositiveCoefficient(f"no nonpositive coefficient up to degree {nv + 3} for nv={nv}, m={m}")
        out.append(d)
    return out


# --- asymptotics ---


def m_asym(x: float) -> float:
    """M(x): first-order limit of deg(HS_{n, xn}) / n."""
    if x < 1:
        raise ValueError(f"M(x) needs x >= 1, got {x}")
    inner = 2 * x * x - 10 * x - 1 + 2 * (x + 2) * sqrt(x * (x + 2))
    return -x + 0.5 + 0.5 * sqrt(inner)


def binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return -p * log2(p) - (1 - p) * log2(1 - p)


def f_alpha_gamma(alpha: float, gamma: float) -> float:
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    if not 0 < gamma <= 1:
        raise ValueError(f"gamma must be in (0, 1], got {gamma}")
    return gamma * binary_entropy(m_asym(alpha / gamma))


def exponent(alpha: float, gamma: float, theta: float) -> float:
    """Per-variable log2 cost: 1 - gamma + theta·F_alpha(gamma)."""
    if not 2 <= theta <= 3:
        raise ValueError(f"theta must lie in [2, 3], got {theta}")
    return 1 - gamma + theta * f_alpha_gamma(alpha, gamma)


def lambda_star(theta: float) -> float:
    for key, lam in LAMBDA_STAR.items():
        if abs(key - theta) < 1e-9:
            return lam
    raise ValueError(f"unsupported theta {theta}; expected one of {sorted(LAMBDA_STAR)}")


def optimal_gamma(alpha: float, theta: float) -> float:
    """gamma = min(1, lambda*·alpha); gamma = 1 means no variable is specialised."""
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    return min(1.0, lambda_star(theta) * alpha)
