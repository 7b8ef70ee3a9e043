"""
Central configuration: solver defaults, scale caps, and constants.

Knobs that make sense per machine (worker count, caps, log level) can be
overridden from the environment or a local .env file; see env_int().
"""

import os

# --- Solver defaults ---

# Largest variable count exhaustive_search will enumerate
SEARCH_CAP = 32

# Points evaluated per numpy chunk during exhaustive search
SEARCH_CHUNK = 1 << 18

# Fresh-randomness retries before the Las Vegas filter gives up on a branch
RETRY_CAP = 8

# Branch-level parallelism (threads)
WORKERS = 4

# Methods accepted by SolveConfig.method
METHODS = ("dense", "lasvegas")

# --- GF(2^64) ---

# y^64 + y^4 + y^3 + y + 1, low part only (the y^64 term is implicit)
GF64_MODULUS_LOW = 0b11011

# --- Hilbert series / cost model ---

# optimal specialisation ratio γ = λ·α per linear-algebra exponent θ
LAMBDA_STAR = {
    2.0: 0.55,
    2.376: 0.40,
    3.0: 0.27,
}

# upper bound on the per-variable exponent: 1 - c·α at γ = λ·α
THEOREM_SLOPE = {
    2.0: 0.208,
    2.376: 0.159,
    3.0: 0.112,
}

# cost-model method names and the θ each one uses
COST_METHODS = {
    "det3": 3.0,
    "det2.376": 2.376,
    "lasvegas": 2.0,
}

# Asymptotic exponent at α = 1 with the Las Vegas filter (s / 0.7911 rule)
ASYMPTOTIC_EXPONENT = 0.7911

# δ = 1 is recommended when |first nonpositive coefficient| is at most this
DELTA_HINT_THRESHOLD = 8

# --- Experiment scale caps ---

FILTER_MAX_N = 24
SEMIREG_MAX_N = 20
CERTDEG_MAX_N = 14

# --- CLI exit codes ---

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SCALE = 3
EXIT_INTERNAL = 4

# --- QUAD advisor: security levels of the published table ---

QUAD_SECURITY_LEVELS = [128, 256, 512, 1024]


def env_int(name: str, default: int) -> int:
    """Read an integer knob from the environment, falling back to default."""
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        return default
