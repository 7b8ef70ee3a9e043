"""
Hybrid solver for boolean quadratic systems.

For every assignment of the last k + delta variables (a "tail") the system is
specialised, its boolean Macaulay matrix in degree d0 is built, and the left
system u·M = r (r = the constant monomial) is tried. A solution u proves the
branch has no root, so it is pruned; otherwise the remaining variables are
searched exhaustively. d0 only affects speed, never the answer.

Branches are independent and run on a thread pool; results are merged and
sorted so the output does not depend on scheduling.
"""

from __future__ import annotations

import concurrent.futures
import logging
import time
from dataclasses import asdict, dataclass, field, replace
from math import ceil

import numpy as np
from dotenv import load_dotenv

import hilbert
from algebra import gf2_sparse, macaulay
from algebra.gf2_dense import BitMatrix, solve_left
from algebra.macaulay import MacaulayMatrix
from algebra.poly import Assignment, QuadraticSystem, specialize
from algebra.rng import SplitMix64, derive_seed
from config import (
    DELTA_HINT_THRESHOLD,
    METHODS,
    RETRY_CAP,
    SEARCH_CAP,
    SEARCH_CHUNK,
    WORKERS,
    env_int,
)

load_dotenv()

log = logging.getLogger(__name__)

PRUNED = "pruned"
SEARCHED = "searched"
INCONCLUSIVE = "inconclusive"

_THETA_FOR_METHOD = {"dense": 3.0, "lasvegas": 2.0}


class ConfigError(ValueError):
    """Solver parameters violate k + delta < n <= m or another constraint."""


class ScaleCapExceeded(ValueError):
    """Exhaustive search over more variables than the configured cap."""


@dataclass
class SolveConfig:
    k: int | None = None  # None: derived from the optimal gamma
    delta: int = 0
    method: str = "dense"
    d0_override: int | None = None
    seed: int = 0
    workers: int = WORKERS
    search_cap: int = SEARCH_CAP
    retry_cap: int = RETRY_CAP
    keep_certificates: bool = False

    @classmethod
    def from_env(cls, **overrides) -> "SolveConfig":
        """Defaults from BOOLSOLVE_* environment variables, then explicit overrides."""
        cfg = cls(
            workers=env_int("BOOLSOLVE_WORKERS", WORKERS),
            search_cap=env_int("BOOLSOLVE_SEARCH_CAP", SEARCH_CAP),
            retry_cap=env_int("BOOLSOLVE_RETRY_CAP", RETRY_CAP),
        )
        return replace(cfg, **{key: value for key, value in overrides.items() if value is not None})

    def resolve(self, n: int, m: int) -> "SolveConfig":
        """Fill in the default k and validate against a system of size (n, m)."""
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if n > m:
            raise ConfigError(f"the solver needs m >= n, got n={n}, m={m}")
        if self.delta < 0:
            raise ConfigError(f"delta must be >= 0, got {self.delta}")
        k = self.k if self.k is not None else default_k(n, m, self.method, self.delta)
        if k < 0 or k + self.delta >= n:
            raise ConfigError(f"need 0 <= k and k + delta < n, got k={k}, delta={self.delta}, n={n}")
        if self.d0_override is not None and self.d0_override < 2:
            raise ConfigError(f"d0 override must be >= 2, got {self.d0_override}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.retry_cap < 1:
            raise ConfigError(f"retry cap must be >= 1, got {self.retry_cap}")
        remaining = n - k - self.delta
        if remaining > self.search_cap:
            raise ScaleCapExceeded(f"branches keep {remaining} free variables, search cap is {self.search_cap}")
        return replace(self, k=k)


def default_k(n: int, m: int, method: str = "dense", delta: int = 0) -> int:
    """k = ceil(n·(1 - gamma*)), kept below n - delta."""
    gamma = hilbert.optimal_gamma(m / n, _THETA_FOR_METHOD[method])
    k = ceil(n * (1 - gamma) - 1e-9)
    return max(0, min(k, n - 1 - delta))


def delta_hint(n: int, m: int, k: int) -> int:
    """Recommend delta = 1 when the first nonpositive coefficient is small in size."""
    try:
        value = hilbert.first_nonpositive_value(n - k, m)
    except hilbert.NoNonpositiveCoefficient:
        return 1
    return 1 if abs(value) <= DELTA_HINT_THRESHOLD else 0


@dataclass(frozen=True)
class SolutionSet:
    n: int
    assignments: tuple[Assignment, ...] = ()

    @classmethod
    def from_values(cls, n: int, values) -> "SolutionSet":
        return cls(n, tuple(Assignment(n, int(v)) for v in sorted(set(int(v) for v in values))))

    @property
    def values(self) -> list[int]:
        return [a.value for a in self.assignments]

    def to_strings(self) -> list[str]:
        return [a.to_string() for a in self.assignments]

    def __len__(self) -> int:
        return len(self.assignments)

    def __iter__(self):
        return iter(self.assignments)


@dataclass
class BranchReport:
    tail: int
    outcome: str  # PRUNED, SEARCHED or INCONCLUSIVE
    solutions: int = 0
    n_rows: int = 0
    n_cols: int = 0
    nnz: int = 0
    applications: int = 0
    attempts: int = 0
    certificate: list[str] | None = None
    witness: tuple[int, ...] | None = None  # selected Macaulay rows of a pruned branch


@dataclass
class SolveResult:
    n: int
    m: int
    k: int
    delta: int
    d0: int
    method: str
    solutions: SolutionSet
    branches: list[BranchReport] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def pruned(self) -> int:
        return sum(1 for b in self.branches if b.outcome == PRUNED)

    @property
    def unpruned(self) -> int:
        return len(self.branches) - self.pruned

    def to_dict(self) -> dict:
        out = asdict(self)
        out["solutions"] = self.solutions.to_strings()
        out["pruned"] = self.pruned
        out["unpruned"] = self.unpruned
        return out


def choose_d0(n: int, m: int, k: int, override: int | None = None) -> int:
    """Macaulay degree for branches of a k-specialised system."""
    if override is not None:
        return override
    if not 0 <= k < n <= m:
        raise ConfigError(f"choose_d0 needs k < n <= m, got n={n}, m={m}, k={k}")
    return hilbert.d0(n - k, m)


# --- exhaustive search ---


def _parity(v: np.ndarray) -> np.ndarray:
    for sh in (32, 16, 8, 4, 2, 1):
        v = v ^ (v >> np.uint64(sh))
    return v & np.uint64(1)


def _poly_vanishes(structure, points: np.ndarray) -> np.ndarray:
    quad, linear, const = structure
    val = _parity(points & np.uint64(linear))
    if const:
        val ^= np.uint64(1)
    for i, row in enumerate(quad):
        if row:
            bit = (points >> np.uint64(i)) & np.uint64(1)
            val ^= bit & _parity(points & np.uint64(row))
    return val == 0


def _search_values(s: QuadraticSystem, first_only: bool = False) -> list[int]:
    structures = [p._structure for p in s.polys]
    total = 1 << s.n
    found: list[int] = []
    for start in range(0, total, SEARCH_CHUNK):
        cand = np.arange(start, min(total, start + SEARCH_CHUNK), dtype=np.uint64)
        for st in structures:
            cand = cand[_poly_vanishes(st, cand)]
            if cand.size == 0:
                break
        found.extend(int(v) for v in cand)
        if first_only and found:
            return found[:1]
    return found


def exhaustive_search(s: QuadraticSystem, cap: int = SEARCH_CAP) -> SolutionSet:
    """All roots of s by evaluation at every point of GF(2)^n."""
    if s.n > cap:
        raise ScaleCapExceeded(f"exhaustive search over {s.n} variables exceeds the cap of {cap}")
    return SolutionSet.from_values(s.n, _search_values(s))


# --- branches ---


def branch_matrix(s: QuadraticSystem, cfg: SolveConfig, tail: int) -> MacaulayMatrix:
    """Macaulay matrix of the branch `tail` (cfg must be resolved)."""
    branch = specialize(s, tail, cfg.k + cfg.delta)
    return macaulay.build(branch, choose_d0(s.n, s.m, cfg.k, cfg.d0_override))


def _filter(mac: MacaulayMatrix, cfg: SolveConfig, tail: int, report: BranchReport) -> tuple[int, ...] | None:
    rhs = macaulay.rhs_vector(mac.idx)
    if cfg.method == "dense":
        return solve_left(BitMatrix.from_rows(mac.rows, mac.n_cols), rhs)
    rng = SplitMix64(derive_seed(cfg.seed, tail))
    u, outcome = gf2_sparse.solve_left(mac.rows, mac.n_cols, rhs, rng, cfg.retry_cap)
    report.applications = outcome.applications
    report.attempts = outcome.attempts
    return u


def solve_branch(s: QuadraticSystem, cfg: SolveConfig, d0: int, tail: int, first_only: bool = False) -> tuple[BranchReport, list[int]]:
    fixed = cfg.k + cfg.delta
    branch = specialize(s, tail, fixed)
    mac = macaulay.build(branch, d0)
    report = BranchReport(tail=tail, outcome=SEARCHED, n_rows=mac.n_rows, n_cols=mac.n_cols, nnz=mac.nnz)
    try:
        u = _filter(mac, cfg, tail, report)
    except gf2_sparse.RetriesExhausted:
        report.outcome = INCONCLUSIVE
        u = None
    if u is not None:
        report.outcome = PRUNED
        report.witness = tuple(u)
        if cfg.keep_certificates:
            report.certificate = macaulay.format_certificate(macaulay.expand_certificate(mac, u))
        return report, []

    heads = _search_values(branch, first_only=first_only)
    report.solutions = len(heads)
    shift = branch.n
    return report, [h | (tail << shift) for h in heads]


def boolean_solve(s: QuadraticSystem, cfg: SolveConfig | None = None, status_callback=None) -> SolveResult:
    """
    All roots of s via specialisation, Macaulay filtering and exhaustive search.

    status_callback(msg: str) receives progress messages.
    """

    def status(msg: str):
        if status_callback:
            status_callback(msg)

    cfg = (cfg or SolveConfig()).resolve(s.n, s.m)
    d0 = choose_d0(s.n, s.m, cfg.k, cfg.d0_override)
    fixed = cfg.k + cfg.delta
    tails = range(1 << fixed)
    started = time.monotonic()
    status(f"{len(tails)} branches, d0={d0}, method={cfg.method}")
    log.info("boolean_solve n=%d m=%d k=%d delta=%d d0=%d method=%s", s.n, s.m, cfg.k, cfg.delta, d0, cfg.method)

    reports: list[BranchReport] = []
    values: list[int] = []
    errors: list[str] = []
    with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        futures = {executor.submit(solve_branch, s, cfg, d0, tail): tail for tail in tails}
        for done, future in enumerate(concurrent.futures.as_completed(futures), start=1):
            report, found = future.result()
            reports.append(report)
            values.extend(found)
            if report.outcome == INCONCLUSIVE:
                errors.append(f"branch {report.tail}: Las Vegas filter gave up, branch searched instead")
            if done % 256 == 0:
                status(f"{done}/{len(tails)} branches done")

    reports.sort(key=lambda r: r.tail)
    result = SolveResult(
        n=s.n,
        m=s.m,
        k=cfg.k,
        delta=cfg.delta,
        d0=d0,
        method=cfg.method,
        solutions=SolutionSet.from_values(s.n, values),
        branches=reports,
        errors=errors,
        elapsed=time.monotonic() - started,
    )
    status(f"{len(result.solutions)} solutions, {result.pruned}/{len(reports)} branches pruned")
    return result


def boolean_solve_sat(s: QuadraticSystem, cfg: SolveConfig | None = None) -> Assignment | None:
    """
    One root of s or None. Tails are tried in ascending order and each
    branch in ascending order, so the smallest root is returned.
    """
    cfg = (cfg or SolveConfig()).resolve(s.n, s.m)
    d0 = choose_d0(s.n, s.m, cfg.k, cfg.d0_override)
    for tail in range(1 << (cfg.k + cfg.delta)):
        _, found = solve_branch(s, cfg, d0, tail, first_only=True)
        if found:
            return Assignment(s.n, found[0])
    return None
