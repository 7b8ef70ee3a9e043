"""Concrete cost model: Macaulay sizes, bit-operation counts, crossover and QUAD advice.

All costs are log2 of a bit-operation count. The hybrid cost of specialising
k of n variables is 2^k times the linear algebra on the Macaulay matrix of
the remaining n - k variables in degree d0(n - k, m):

  det (theta = 3 or 2.376):  2^k · r · c · min(r, c)^(theta - 2)
  lasvegas:                  2^k · max(r, c) · log2 max(r, c) · s

with r, c, s the exact row, column and nonzero counts.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from math import ceil, comb, log2
from typing import NamedTuple

import hilbert
from config import ASYMPTOTIC_EXPONENT, COST_METHODS

log = logging.getLogger(__name__)

EXHAUSTIVE_MODELS = ("plain", "fes")


class MacaulaySizes(NamedTuple):
    c_mac: int
    r_mac: int
    s_mac: int  # upper bound on nonzeros: (1 + nv + C(nv, 2)) · r_mac


@dataclass
class CostEstimate:
    n: int
    m: int
    k: int
    method: str
    alpha: float
    gamma: float
    theta: float
    exponent_per_n: float
    d0: int
    c_mac: int
    r_mac: int
    s_mac: int
    total_bitops_log2: float

    def to_dict(self) -> dict:
        return asdict(self)


def _theta(method: str) -> float:
    try:
        return COST_METHODS[method]
    except KeyError:
        raise ValueError(f"unknown cost method {method!r}; expected one of {sorted(COST_METHODS)}") from None


def analytic_bounds(nv: int, m: int, d: int) -> tuple[float, float, float]:
    """Closed-form upper bounds on (c, r, s) for 1 <= d < nv/2, with x = d/nv."""
    if not 1 <= d < nv / 2:
        raise ValueError(f"analytic bounds need 1 <= d < nv/2 (nv={nv}, d={d})")
    x = d / nv
    top = comb(nv, d)
    c_bound = (1 - x) / (1 - 2 * x) * top
    r_bound = m * x * x / ((1 - 2 * x) * (1 - x)) * top
    return c_bound, r_bound, nv * nv * r_bound


def macaulay_sizes(nv: int, m: int, d: int) -> MacaulaySizes:
    """Exact dimensions of the boolean Macaulay matrix in degree d."""
    if d < 0:
        raise ValueError(f"Macaulay degree must be >= 0, got {d}")
    c = sum(comb(nv, i) for i in range(d + 1))
    r = m * sum(comb(nv, i) for i in range(d - 1))
    s = (1 + nv + comb(nv, 2)) * r
    if 1 <= d < nv / 2:
        c_b, r_b, s_b = analytic_bounds(nv, m, d)
        if not (c < c_b and r < r_b and s <= s_b):
            log.warning("analytic size bounds violated for nv=%d, m=%d, d=%d", nv, m, d)
    return MacaulaySizes(c, r, s)


def _linear_algebra_log2(sizes: MacaulaySizes, theta: float, method: str) -> float:
    c, r, s = sizes
    if method == "lasvegas":
        big = max(r, c, 2)
        return log2(big) + log2(log2(big)) + log2(max(s, 1))
    return log2(max(r, 1)) + log2(c) + (theta - 2) * log2(max(min(r, c), 1))


def _estimate(n: int, m: int, k: int, method: str, d: int) -> CostEstimate:
    theta = _theta(method)
    nv = n - k
    sizes = macaulay_sizes(nv, m, d)
    alpha = m / n
    gamma = nv / n
    return CostEstimate(
        n=n,
        m=m,
        k=k,
        method=method,
        alpha=alpha,
        gamma=gamma,
        theta=theta,
        exponent_per_n=hilbert.exponent(alpha, gamma, theta),
        d0=d,
        c_mac=sizes.c_mac,
        r_mac=sizes.r_mac,
        s_mac=sizes.s_mac,
        total_bitops_log2=k + _linear_algebra_log2(sizes, theta, method),
    )


def _check_range(n: int, m: int, k: int) -> None:
    if not (0 <= k < n <= m):
        raise ValueError(f"cost model needs 0 <= k < n <= m, got n={n}, m={m}, k={k}")


def concrete_cost(n: int, m: int, k: int, method: str = "lasvegas") -> CostEstimate:
    """Cost of the hybrid run with k specialised variables, at d = d0(n - k, m)."""
    _check_range(n, m, k)
    return _estimate(n, m, k, method, hilbert.d0(n - k, m))


def optimize_k(n: int, m: int, method: str = "lasvegas") -> CostEstimate:
    """Cheapest k for this (n, m), using exact d0 values."""
    _check_range(n, m, 0)
    table = hilbert.d0_table(n, m)
    best: CostEstimate | None = None
    for k in range(n):
        est = _estimate(n, m, k, method, table[n - k])
        if best is None or est.total_bitops_log2 < best.total_bitops_log2:
            best = est
    return best


def estimate_at_gamma(n: int, m: int, gamma: float, method: str = "lasvegas") -> CostEstimate:
    """Cost at k = ceil((1 - gamma)·n), clamped to n - 1."""
    if not 0 < gamma <= 1:
        raise ValueError(f"gamma must be in (0, 1], got {gamma}")
    k = min(n - 1, max(0, ceil((1 - gamma) * n - 1e-9)))
    return concrete_cost(n, m, k, method)


def exhaustive_cost(n: int, model: str = "plain") -> float:
    """log2 cost of exhaustive search: 2^n (plain) or 4·log2(n)·2^n (fes)."""
    if model == "plain":
        return float(n)
    if model == "fes":
        return n + log2(4 * log2(max(n, 2)))
    raise ValueError(f"unknown exhaustive-search model {model!r}; expected one of {EXHAUSTIVE_MODELS}")


def crossover_n(method: str = "lasvegas", ratio: int = 1, model: str = "plain", n_min: int = 10, n_max: int = 600) -> int | None:
    """First n where the optimised hybrid cost drops below exhaustive search."""
    for n in range(n_min, n_max + 1):
        best = optimize_k(n, ratio * n, method)
        if best.total_bitops_log2 < exhaustive_cost(n, model):
            return n
    return None


def _best_cost(n: int, m: int, method: str) -> float:
    if method == "best":
        return min(optimize_k(n, m, name).total_bitops_log2 for name in COST_METHODS)
    return optimize_k(n, m, method).total_bitops_log2


def _secure(n: int, bits: int, ratio: int, method: str, model: str) -> bool:
    attack = min(exhaustive_cost(n, model), _best_cost(n, ratio * n, method))
    return attack >= bits


def quad_min_n(bits: int, ratio: int = 1, method: str = "lasvegas", model: str = "plain") -> int:
    """
    Smallest n whose cheapest attack (exhaustive search or the hybrid
    solver with the best k) costs at least 2^bits.

    Attack cost is nondecreasing in n, so the search gallops upward from
    n = bits and then bisects.
    """
    if bits < 64:
        raise ValueError(f"security level must be >= 64 bits, got {bits}")
    if ratio not in (1, 2):
        raise ValueError(f"ratio m/n must be 1 or 2, got {ratio}")
    lo = bits
    if _secure(lo, bits, ratio, method, model):
        return lo
    step = max(8, bits // 16)
    hi = lo + step
    while not _secure(hi, bits, ratio, method, model):
        lo, hi = hi, hi + step
        step *= 2
    # invariant: lo insecure, hi secure
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _secure(mid, bits, ratio, method, model):
            hi = mid
        else:
            lo = mid
    log.debug("quad_min_n(bits=%d, ratio=%d, method=%s) = %d", bits, ratio, method, hi)
    return hi


def rule_of_thumb_n(bits: int) -> int:
    """Asymptotic advice: ceil(bits / 0.7911) variables for m = n."""
    return ceil(bits / ASYMPTOTIC_EXPONENT)


def exponent_curve(theta: float, alphas: list[float]) -> list[tuple[float, float, float]]:
    """(alpha, gamma*, exponent) at the optimal gamma for each alpha."""
    out = []
    for alpha in alphas:
        gamma = hilbert.optimal_gamma(alpha, theta)
        out.append((alpha, gamma, hilbert.exponent(alpha, gamma, theta)))
    return out
