"""
Command-line front end.

  gen          random (optionally planted) system as .anf
  solve        all solutions, one n-bit string per line (x1 first)
  sat          one solution or UNSAT
  estimate     JSON cost estimate for (n, m)
  advise-quad  minimal n for a security level
  experiment   filtering-quality trials: CSV rows + JSON summary
  certdeg      smallest Macaulay degree exposing 1 in the row space

Exit codes: 0 success (an empty solution set is an answer), 2 usage,
3 scale cap, 4 internal error. Logs go to stderr (BOOLSOLVE_LOG_LEVEL).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from math import ceil
from pathlib import Path

from dotenv import load_dotenv

import cost_model
import experiments
import export
import hilbert
import solver
from algebra import macaulay
from algebra.poly import Assignment, plant_solution, random_system
from config import (
    COST_METHODS,
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_SCALE,
    EXIT_USAGE,
    METHODS,
    QUAD_SECURITY_LEVELS,
    WORKERS,
)
from data.anf_reader import read_anf, serialize

load_dotenv()

log = logging.getLogger("boolsolve")

_THETA_TO_METHOD = {theta: name for name, theta in COST_METHODS.items()}


class UsageError(ValueError):
    """Flag combination rejected before any work starts."""


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _solve_config(args, **extra) -> solver.SolveConfig:
    return solver.SolveConfig.from_env(
        k=args.k,
        delta=args.delta,
        method=args.method,
        d0_override=args.d0,
        seed=args.seed,
        workers=args.workers,
        **extra,
    )


# --- subcommands ---


def cmd_gen(args) -> int:
    s = random_system(args.n, args.m, args.seed)
    if args.plant is not None:
        if len(args.plant) != args.n or set(args.plant) - {"0", "1"}:
            raise UsageError(f"--plant needs a {args.n}-character 0/1 string")
        s = plant_solution(s, Assignment.from_bits([int(c) for c in args.plant]))
    _write(args.out, serialize(s))
    return EXIT_OK


def cmd_solve(args) -> int:
    s = read_anf(args.input)
    if args.brute:
        _write(None, export.solutions_text(solver.exhaustive_search(s)))
        return EXIT_OK

    reporting = bool(args.report or args.report_md or args.report_pdf)
    cfg = _solve_config(args, keep_certificates=reporting)

    if args.dump_matrix is not None:
        cfg = cfg.resolve(s.n, s.m)
        if not 0 <= args.dump_matrix < 1 << (cfg.k + cfg.delta):
            raise UsageError(f"--dump-matrix tail must be in 0..{(1 << (cfg.k + cfg.delta)) - 1}")
        _write(None, macaulay.dump_sms(solver.branch_matrix(s, cfg, args.dump_matrix)))
        return EXIT_OK

    cfg = cfg.resolve(s.n, s.m)
    if cfg.delta == 0 and solver.delta_hint(s.n, s.m, cfg.k):
        log.info("first nonpositive coefficient is small at k=%d; --delta 1 should prune more branches", cfg.k)
    result = solver.boolean_solve(s, cfg, status_callback=log.info)
    for e in result.errors:
        log.warning(e)
    _write(None, export.solutions_text(result.solutions))
    if args.report:
        _write(args.report, export.report_to_json(result))
    if args.report_md:
        _write(args.report_md, export.report_to_markdown(result))
    if args.report_pdf:
        Path(args.report_pdf).write_bytes(export.report_to_pdf(result))
    return EXIT_OK


def cmd_sat(args) -> int:
    s = read_anf(args.input)
    found = solver.boolean_solve_sat(s, _solve_config(args))
    _write(None, (found.to_string() if found else "UNSAT") + "\n")
    return EXIT_OK


def _cost_method(args) -> str:
    if args.lasvegas:
        return "lasvegas"
    if args.theta is None:
        return "lasvegas"
    for theta, name in _THETA_TO_METHOD.items():
        if abs(theta - args.theta) < 1e-9:
            return name
    raise UsageError(f"--theta must be one of {sorted(_THETA_TO_METHOD)}")


def cmd_estimate(args) -> int:
    if args.n < 1 or args.m < args.n:
        raise UsageError(f"estimate needs 1 <= n <= m, got n={args.n}, m={args.m}")
    method = _cost_method(args)
    gamma = args.gamma
    if gamma is None:
        gamma = hilbert.optimal_gamma(args.m / args.n, COST_METHODS[method])
    est = cost_model.estimate_at_gamma(args.n, args.m, gamma, method)
    out = est.to_dict()
    out["delta_hint"] = solver.delta_hint(args.n, args.m, est.k)
    if args.optimize:
        out["optimized"] = cost_model.optimize_k(args.n, args.m, method).to_dict()
    _write(None, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def _advise(bits: int, ratio: int, method: str, model: str) -> int:
    return cost_model.quad_min_n(bits, ratio=ratio, method=method, model=model)


def cmd_advise_quad(args) -> int:
    if args.table:
        rows = []
        for bits in QUAD_SECURITY_LEVELS:
            log.info("advising for %d bits", bits)
            rows.append(
                {
                    "bits": bits,
                    "n_ratio1": _advise(bits, 1, args.method, args.model),
                    "n_ratio2": _advise(bits, 2, args.method, args.model),
                    "rule_of_thumb": cost_model.rule_of_thumb_n(bits),
                }
            )
        _write(None, export.advisor_to_markdown(rows))
        return EXIT_OK
    out = {
        "security_bits": args.security_bits,
        "ratio": args.ratio,
        "method": args.method,
        "model": args.model,
        "n_min": _advise(args.security_bits, args.ratio, args.method, args.model),
        "rule_of_thumb": cost_model.rule_of_thumb_n(args.security_bits),
    }
    _write(None, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def cmd_experiment(args) -> int:
    if (args.gamma is None) == (args.k is None):
        raise UsageError("give exactly one of --gamma and --k")
    k = args.k
    if k is None:
        if not 0 < args.gamma <= 1:
            raise UsageError(f"--gamma must be in (0, 1], got {args.gamma}")
        k = min(args.n - 1, ceil((1 - args.gamma) * args.n - 1e-9))
    stats = experiments.filtering_experiment(
        args.n,
        args.m,
        k,
        delta=args.delta,
        trials=args.trials,
        seed=args.seed,
        method=args.method,
        d0_override=args.d0,
        workers=args.workers or WORKERS,
        progress=args.progress,
        status_callback=log.info,
    )
    gamma = (args.n - k - args.delta) / args.n
    threshold = experiments.semiregular_threshold(args.n, args.m, gamma)
    if args.csv:
        _write(args.csv, export.trials_to_csv(stats))
    summary = export.summary_to_json(stats, threshold, stats.strong_semiregular_fraction(threshold))
    _write(args.summary, summary + "\n")
    return EXIT_OK


def cmd_certdeg(args) -> int:
    s = read_anf(args.input)
    d = experiments.certificate_degree(s, args.d_max)
    _write(None, f"{d if d is not None else 'none'}\n")
    return EXIT_OK


# --- parser ---


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="input", required=True, help=".anf system file")
    p.add_argument("--k", type=int, help="specialised variables (default from the optimal gamma)")
    p.add_argument("--delta", type=int, default=0, help="extra specialised variables")
    p.add_argument("--method", choices=METHODS, default="dense")
    p.add_argument("--d0", type=int, help="override the Macaulay degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boolsolve", description="Hybrid solver for boolean quadratic systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--plant", help="0/1 string (x1 first) to plant as a solution")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="all solutions of a system")
    _add_solver_flags(p)
    p.add_argument("--brute", action="store_true", help="plain exhaustive search")
    p.add_argument("--report", help="JSON report path")
    p.add_argument("--report-md", help="Markdown report path")
    p.add_argument("--report-pdf", help="PDF report path")
    p.add_argument("--dump-matrix", type=int, metavar="TAIL", help="print the SMS dump of one branch matrix")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sat", help="one solution or UNSAT")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("estimate", help="cost estimate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--theta", type=float, help="linear algebra exponent: 2, 2.376 or 3")
    group.add_argument("--lasvegas", action="store_true")
    p.add_argument("--gamma", type=float)
    p.add_argument("--optimize", action="store_true", help="also report the best k")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("advise-quad", help="minimal n for a security level")
    p.add_argument("--security-bits", type=int, default=256)
    p.add_argument("--ratio", type=int, choices=(1, 2), default=1)
    p.add_argument("--method", choices=("lasvegas", "best"), default="lasvegas")
    p.add_argument("--model", choices=cost_model.EXHAUSTIVE_MODELS, default="plain")
    p.add_argument("--table", action="store_true", help="all security levels, both ratios")
    p.set_defaults(func=cmd_advise_quad)

    p = sub.add_parser("experiment", help="filtering-quality trials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--gamma", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--delta", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=METHODS, default="dense")
    p.add_argument("--d0", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--csv", help="per-trial CSV path")
    p.add_argument("--summary", help="JSON summary path (default stdout)")
    p.add_argument("--progress", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("certdeg", help="certificate degree of a system")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--d-max", type=int, default=6)
    p.set_defaults(func=cmd_certdeg)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=os.getenv("BOOLSOLVE_LOG_LEVEL", "WARNING").upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except solver.ScaleCapExceeded as e:
        log.error("%s", e)
        return EXIT_SCALE
    except (ValueError, OSError) as e:
        log.error("%s", e)
        return EXIT_USAGE
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
