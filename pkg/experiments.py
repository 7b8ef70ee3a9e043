"""
Filtering-quality experiments and the probability models behind them.

Closed forms (exact rationals):
  - rank_probability(p, q, r): a uniform p×q GF(2) matrix has rank r
  - left_consistency_probability(p, q): u·M = r is solvable for fixed r != 0
  - poisson_max_expectation: expected maximum of `count` Poisson(lambda) draws

Measurements on seeded random systems:
  - filtering_experiment: how many tails the linear filter fails to prune
  - strong_semiregular_check: solution and badly-filtered-tail counts vs. the
    2^((1 - 2·gamma + 2·F_alpha(gamma))·n) threshold
  - certificate_degree: smallest d where 1 is in the Macaulay row space
"""

from __future__ import annotations

import concurrent.futures
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil, exp, factorial, log2, sqrt

import numpy as np
from tqdm import tqdm

import hilbert
import solver
from algebra import macaulay
from algebra.gf2_dense import BitMatrix, rank, solve_left
from algebra.poly import QuadraticSystem, random_system
from algebra.rng import SplitMix64, derive_seed
from config import CERTDEG_MAX_N, FILTER_MAX_N, SEMIREG_MAX_N, WORKERS

log = logging.getLogger(__name__)


# --- closed forms ---


def rank_probability(p: int, q: int, r: int) -> Fraction:
    """P(p, q, r) = 2^(-pq) · prod_j (2^p - 2^j)(2^q - 2^j) / (2^r - 2^j), j < r."""
    if p < 0 or q < 0:
        raise ValueError(f"matrix dimensions must be >= 0, got {p}x{q}")
    if not 0 <= r <= min(p, q):
        raise ValueError(f"rank {r} out of range 0..{min(p, q)} for a {p}x{q} matrix")
    value = Fraction(1, 2 ** (p * q))
    for j in range(r):
        value *= Fraction((2**p - 2**j) * (2**q - 2**j), 2**r - 2**j)
    return value


def left_consistency_probability(p: int, q: int) -> Fraction:
    """Q(p, q): chance that u·M = r has a solution, M uniform p×q, r fixed nonzero."""
    if p < 1 or q < 1:
        raise ValueError(f"Q(p, q) needs p, q >= 1, got p={p}, q={q}")
    total = Fraction(0)
    for i in range(1, min(p, q) + 1):
        total += rank_probability(p, q, i) * Fraction(2**i - 1, 2**q - 1)
    return total


def poisson_max_expectation(count: int = 1000, lam: float = 1.0, tol: float = 1e-12) -> float:
    """E(max of `count` iid Poisson(lam)) = sum_k k·(F(k)^count - F(k-1)^count)."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if lam <= 0:
        raise ValueError(f"lambda must be > 0, got {lam}")
    cdf_prev = 0.0
    cdf = 0.0
    total = 0.0
    k = 0
    while True:
        cdf = min(1.0, cdf + exp(-lam) * lam**k / factorial(k))
        term = k * (cdf**count - cdf_prev**count)
        total += term
        if k > lam and term < tol:
            return total
        cdf_prev = cdf
        k += 1


def k_for_d0_2(n: int) -> int:
    """Smallest k with d0(n - k, n) = 2: ceil(1/2 + n - sqrt(8n - 7)/2)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return ceil(0.5 + n - sqrt(8 * n - 7) / 2)


# --- Monte-Carlo counterparts ---


def _random_matrix(rng: SplitMix64, p: int, q: int) -> BitMatrix:
    bits = np.array([[rng.next_bit() for _ in range(q)] for _ in range(p)], dtype=np.uint8).reshape(p, q)
    return BitMatrix.from_dense(bits)


def rank_frequencies(p: int, q: int, samples: int, seed: int = 0) -> list[float]:
    """Observed rank distribution of uniform p×q matrices, index = rank."""
    rng = SplitMix64(seed)
    counts = [0] * (min(p, q) + 1)
    for _ in range(samples):
        counts[rank(_random_matrix(rng, p, q))] += 1
    return [c / samples for c in counts]


def left_consistency_frequency(p: int, q: int, samples: int, seed: int = 0) -> float:
    """Observed rate of u·M = (0, ..., 0, 1) being solvable for uniform p×q M."""
    rng = SplitMix64(seed)
    hits = 0
    for _ in range(samples):
        if solve_left(_random_matrix(rng, p, q), (q - 1,)) is not None:
            hits += 1
    return hits / samples


def coefficient_growth(gamma: float, ns: list[int]) -> list[tuple[int, float | None]]:
    """log2 |first nonpositive coefficient of HS_{floor(gamma·n), n}| per n (None when it is 0)."""
    out = []
    for n in ns:
        value = hilbert.first_nonpositive_value(int(gamma * n), n)
        out.append((n, log2(-value) if value else None))
    return out


# --- filtering experiment ---


@dataclass
class TrialRow:
    trial: int
    seed: int
    unpruned: int
    pruned: int
    solutions: int
    empty_unpruned: int  # filter failed and the branch had no root
    inconclusive: int


@dataclass
class FilterStats:
    n: int
    m: int
    k: int
    delta: int
    d0: int
    method: str
    trials: int
    rows: list[TrialRow] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def tails(self) -> int:
        return 1 << (self.k + self.delta)

    @property
    def unpruned_counts(self) -> list[int]:
        return [r.unpruned for r in self.rows]

    @property
    def avg_unpruned(self) -> float:
        return sum(self.unpruned_counts) / len(self.rows) if self.rows else 0.0

    @property
    def max_unpruned(self) -> int:
        return max(self.unpruned_counts, default=0)

    @property
    def pruned_fraction(self) -> float:
        if not self.rows:
            return 0.0
        return sum(r.pruned for r in self.rows) / (len(self.rows) * self.tails)

    def strong_semiregular_fraction(self, threshold: float) -> float:
        """Share of trials whose solution count and badly-filtered tail count both stay <= threshold."""
        if not self.rows:
            return 0.0
        ok = sum(1 for r in self.rows if r.solutions <= threshold and r.empty_unpruned <= threshold)
        return ok / len(self.rows)

    def summary(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "delta": self.delta,
            "d0": self.d0,
            "method": self.method,
            "trials": len(self.rows),
            "avg_unpruned": self.avg_unpruned,
            "max_unpruned": self.max_unpruned,
            "pruned_fraction": self.pruned_fraction,
            "errors": list(self.errors),
        }


def trial_row(trial: int, seed: int, result: solver.SolveResult) -> TrialRow:
    return TrialRow(
        trial=trial,
        seed=seed,
        unpruned=result.unpruned,
        pruned=result.pruned,
        solutions=len(result.solutions),
        empty_unpruned=sum(1 for b in result.branches if b.outcome != solver.PRUNED and b.solutions == 0),
        inconclusive=sum(1 for b in result.branches if b.outcome == solver.INCONCLUSIVE),
    )


def filtering_experiment(
    n: int,
    m: int,
    k: int,
    delta: int = 0,
    trials: int = 100,
    seed: int = 0,
    method: str = "dense",
    d0_override: int | None = None,
    workers: int = WORKERS,
    progress: bool = False,
    status_callback=None,
) -> FilterStats:
    """
    Solve `trials` seeded random systems and count, per system, the tails
    the linear filter does not prune. Trial t uses seed derive_seed(seed, t).
    """

    def status(msg: str):
        if status_callback:
            status_callback(msg)

    if n > FILTER_MAX_N:
        raise solver.ScaleCapExceeded(f"filtering experiments are capped at n <= {FILTER_MAX_N}, got n={n}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    cfg = solver.SolveConfig(k=k, delta=delta, method=method, d0_override=d0_override, workers=1)
    cfg = cfg.resolve(n, m)
    stats = FilterStats(
        n=n,
        m=m,
        k=k,
        delta=delta,
        d0=solver.choose_d0(n, m, k, d0_override),
        method=method,
        trials=trials,
    )
    status(f"{trials} trials, n={n}, m={m}, k={k}, delta={delta}, d0={stats.d0}")

    def run_trial(trial: int) -> TrialRow:
        trial_seed = derive_seed(seed, trial)
        s = random_system(n, m, trial_seed)
        result = solver.boolean_solve(s, replace(cfg, seed=trial_seed))
        return trial_row(trial, trial_seed, result)

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(run_trial, t): t for t in range(trials)}
        done = concurrent.futures.as_completed(futures)
        if progress:
            done = tqdm(done, total=trials, desc="trials", unit="sys")
        for future in done:
            trial = futures[future]
            try:
                stats.rows.append(future.result())
            except Exception as e:
                stats.errors.append(f"trial {trial}: {e}")
                log.warning("trial %d failed: %s", trial, e)

    stats.rows.sort(key=lambda r: r.trial)
    status(f"avg unpruned {stats.avg_unpruned:.2f}, max {stats.max_unpruned}, pruned {stats.pruned_fraction:.3f}")
    return stats


# --- gamma-strong semi-regularity ---


@dataclass
class SemiRegularCheck:
    gamma: float
    k: int
    threshold: float
    solutions: int
    bad_tails: int

    @property
    def is_strong(self) -> bool:
        return self.solutions <= self.threshold and self.bad_tails <= self.threshold


def semiregular_threshold(n: int, m: int, gamma: float) -> float:
    """2^((1 - 2·gamma + 2·F_alpha(gamma))·n) with alpha = m / n."""
    return 2 ** ((1 - 2 * gamma + 2 * hilbert.f_alpha_gamma(m / n, gamma)) * n)


def strong_semiregular_check(s: QuadraticSystem, gamma: float, method: str = "dense") -> SemiRegularCheck:
    """
    Count the roots of s and the tails (k = ceil((1 - gamma)·n)) whose filter
    fails although the branch has no root; both must stay under the threshold.
    """
    if s.n > SEMIREG_MAX_N:
        raise solver.ScaleCapExceeded(f"semi-regularity checks are capped at n <= {SEMIREG_MAX_N}, got n={s.n}")
    k = ceil((1 - gamma) * s.n - 1e-9)
    result = solver.boolean_solve(s, solver.SolveConfig(k=k, method=method, workers=1))
    row = trial_row(0, 0, result)
    return SemiRegularCheck(
        gamma=gamma,
        k=k,
        threshold=semiregular_threshold(s.n, s.m, gamma),
        solutions=row.solutions,
        bad_tails=row.empty_unpruned,
    )


# --- certificate degree ---


def certificate_degree(s: QuadraticSystem, d_max: int) -> int | None:
    """Smallest d in 2..d_max with the constant 1 in the row space of Macaulay(s, d)."""
    if s.n > CERTDEG_MAX_N:
        raise solver.ScaleCapExceeded(f"certificate degree is capped at n <= {CERTDEG_MAX_N}, got n={s.n}")
    if d_max < 2:
        raise ValueError(f"d_max must be >= 2, got {d_max}")
    for d in range(2, d_max + 1):
        mac = macaulay.build(s, d)
        u = solve_left(BitMatrix.from_rows(mac.rows, mac.n_cols), macaulay.rhs_vector(mac.idx))
        if u is not None:
            log.debug("certificate found at degree %d with %d rows", d, len(u))
            return d
    return None
