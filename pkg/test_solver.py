"""
Tests: hybrid solver against brute force, pruning soundness, SAT variant and configuration.

BOOLSOLVE_LONG_TESTS=1 runs 200 systems with n = m in 8..13 instead of a handful.
"""

import json
import os
import sys
from math import ceil, comb

import solver
from algebra import macaulay
from algebra.poly import Assignment, QuadraticPoly, plant_solution, random_system, specialize, system_from_polys

LONG = os.getenv("BOOLSOLVE_LONG_TESTS") == "1"


def _poly(n, *terms):
    return QuadraticPoly.from_terms(n, terms)


def _oracle_cases():
    if LONG:
        return [(8 + i % 6, 1000 + i) for i in range(200)]
    return [(8, 1), (9, 2), (10, 3)]


def _contradiction(n):
    polys = [_poly(n, (0,)), _poly(n, (0,), ())] + [_poly(n, (i,)) for i in range(1, n - 1)]
    return system_from_polys(polys)


# ── exhaustive search ─────────────────────────────────────────────────────────


def test_exhaustive_search_small_systems():
    assert solver.exhaustive_search(system_from_polys([_poly(2, (0,)), _poly(2, (1,))])).to_strings() == ["00"]
    assert len(solver.exhaustive_search(system_from_polys([_poly(1, (0,), ()), _poly(1, (0,))]))) == 0
    assert solver.exhaustive_search(system_from_polys([_poly(2, (0, 1), ())])).to_strings() == ["11"]


def test_exhaustive_search_matches_evaluation():
    s = random_system(9, 7, 21)
    found = solver.exhaustive_search(s).values
    expected = [v for v in range(1 << 9) if s.is_solution(Assignment(9, v))]
    assert found == expected


def test_exhaustive_search_cap():
    try:
        solver.exhaustive_search(random_system(5, 5, 1), cap=4)
    except solver.ScaleCapExceeded:
        pass
    else:
        raise AssertionError("cap ignored")


# ── d0 and configuration ──────────────────────────────────────────────────────


def test_choose_d0_examples():
    assert solver.choose_d0(10, 10, 7) == 2
    assert solver.choose_d0(10, 10, 6) == 3
    assert solver.choose_d0(10, 10, 6, override=2) == 2


def test_default_k_and_delta_hint():
    assert solver.default_k(10, 10, "lasvegas") == 5
    assert solver.default_k(10, 10, "dense") == 8
    assert solver.SolveConfig().resolve(10, 10).k == 8
    assert solver.delta_hint(10, 10, 7) == 1
    assert solver.delta_hint(10, 10, 6) == 0


def test_config_validation():
    bad = [
        (solver.SolveConfig(k=10), 10, 10),
        (solver.SolveConfig(k=5, delta=5), 10, 10),
        (solver.SolveConfig(k=3), 10, 9),
        (solver.SolveConfig(k=3, method="gauss"), 10, 10),
        (solver.SolveConfig(k=3, d0_override=1), 10, 10),
        (solver.SolveConfig(k=3, workers=0), 10, 10),
        (solver.SolveConfig(k=-1), 10, 10),
    ]
    for cfg, n, m in bad:
        try:
            cfg.resolve(n, m)
        except solver.ConfigError:
            pass
        else:
            raise AssertionError(f"accepted {cfg} for n={n}, m={m}")


def test_search_cap_on_branches():
    try:
        solver.SolveConfig(k=0, search_cap=4).resolve(10, 10)
    except solver.ScaleCapExceeded:
        pass
    else:
        raise AssertionError("branch width above the cap accepted")


def test_config_from_environment():
    saved = {key: os.environ.get(key) for key in ("BOOLSOLVE_WORKERS", "BOOLSOLVE_RETRY_CAP")}
    try:
        os.environ["BOOLSOLVE_WORKERS"] = "3"
        os.environ["BOOLSOLVE_RETRY_CAP"] = "not-a-number"
        cfg = solver.SolveConfig.from_env(k=4, workers=None)
        assert cfg.workers == 3
        assert cfg.retry_cap == solver.RETRY_CAP
        assert cfg.k == 4
        assert solver.SolveConfig.from_env(workers=2).workers == 2
    finally:
        for key, value in saved.items():
            if value is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = value


# ── boolean_solve ─────────────────────────────────────────────────────────────


def test_matches_brute_force():
    for n, seed in _oracle_cases():
        s = random_system(n, n, seed)
        expected = solver.exhaustive_search(s).values
        k = ceil(0.45 * n)
        for method in ("dense", "lasvegas"):
            for delta in (0, 1):
                cfg = solver.SolveConfig(k=k, delta=delta, method=method, seed=seed)
                result = solver.boolean_solve(s, cfg)
                assert result.solutions.values == expected, (n, seed, method, delta)
                assert len(result.branches) == 1 << (k + delta)


def test_planted_solution_is_found():
    z = Assignment.from_bits([0, 1, 1, 0, 1, 0, 0, 1, 1])
    s = plant_solution(random_system(9, 9, 77), z)
    for method in ("dense", "lasvegas"):
        result = solver.boolean_solve(s, solver.SolveConfig(k=4, method=method))
        assert z.value in result.solutions.values


def test_pruned_branches_have_no_roots():
    s = random_system(10, 10, 5)
    cfg = solver.SolveConfig(k=5, keep_certificates=True).resolve(10, 10)
    result = solver.boolean_solve(s, cfg)
    assert result.pruned > 0
    for b in result.branches:
        if b.outcome != solver.PRUNED:
            continue
        assert len(solver.exhaustive_search(specialize(s, b.tail, 5))) == 0
        mac = solver.branch_matrix(s, cfg, b.tail)
        assert macaulay.combine_rows(mac, b.witness) == macaulay.rhs_vector(mac.idx)
        assert b.certificate and b.certificate[0].startswith("h")


def test_pruned_branches_keep_witness_by_default():
    checked = 0
    for seed in range(4):
        s = random_system(9, 9, 60 + seed)
        cfg = solver.SolveConfig(k=4).resolve(9, 9)
        for b in solver.boolean_solve(s, cfg).branches:
            if b.outcome != solver.PRUNED:
                assert b.witness is None
                continue
            assert b.certificate is None
            mac = solver.branch_matrix(s, cfg, b.tail)
            assert macaulay.combine_rows(mac, b.witness) == macaulay.rhs_vector(mac.idx)
            checked += 1
    assert checked > 0


def test_contradiction_yields_empty_set():
    s = _contradiction(8)
    assert s.m == 8
    for method in ("dense", "lasvegas"):
        result = solver.boolean_solve(s, solver.SolveConfig(k=3, method=method))
        assert len(result.solutions) == 0
        assert all(b.outcome == solver.PRUNED or b.solutions == 0 for b in result.branches)


def test_d0_override_changes_matrices_only():
    s = random_system(9, 9, 8)
    base = solver.boolean_solve(s, solver.SolveConfig(k=4))
    forced = solver.boolean_solve(s, solver.SolveConfig(k=4, d0_override=2))
    assert forced.d0 == 2
    assert all(b.n_cols == 1 + 5 + comb(5, 2) for b in forced.branches)
    assert forced.solutions == base.solutions


def test_worker_count_does_not_change_output():
    s = random_system(10, 10, 12)
    one = solver.boolean_solve(s, solver.SolveConfig(k=5, workers=1))
    many = solver.boolean_solve(s, solver.SolveConfig(k=5, workers=4))
    assert one.solutions == many.solutions
    assert [b.outcome for b in one.branches] == [b.outcome for b in many.branches]


def test_las_vegas_is_reproducible():
    s = random_system(8, 8, 14)
    cfg = solver.SolveConfig(k=4, method="lasvegas", seed=99)
    a = solver.boolean_solve(s, cfg)
    b = solver.boolean_solve(s, cfg)
    assert [r.applications for r in a.branches] == [r.applications for r in b.branches]


def test_status_callback_and_report():
    messages = []
    result = solver.boolean_solve(random_system(8, 8, 2), solver.SolveConfig(k=3), status_callback=messages.append)
    assert messages and "branches" in messages[0]
    report = json.loads(json.dumps(result.to_dict()))
    assert report["pruned"] + report["unpruned"] == 8
    assert report["solutions"] == result.solutions.to_strings()


# ── boolean_solve_sat ─────────────────────────────────────────────────────────


def test_sat_small_example():
    f = _poly(2, (0, 1), ())
    found = solver.boolean_solve_sat(system_from_polys([f, f]))
    assert found is not None and found.to_string() == "11"


def test_sat_returns_smallest_root_or_none():
    for seed in range(6):
        s = random_system(8, 8, 300 + seed)
        roots = solver.boolean_solve(s, solver.SolveConfig(k=4)).solutions.values
        found = solver.boolean_solve_sat(s, solver.SolveConfig(k=4))
        if roots:
            assert found is not None and found.value == roots[0]
            assert s.is_solution(found)
        else:
            assert found is None


def test_sat_on_contradiction():
    assert solver.boolean_solve_sat(_contradiction(6), solver.SolveConfig(k=2, method="lasvegas")) is None


def main():
    tests = [(name, fn) for name, fn in globals().items() if name.startswith("test_") and callable(fn)]
    failed = 0
    for name, fn in tests:
        try:
            fn()
            print(f"✓ {name}")
        except Exception as e:
            failed += 1
            print(f"✗ {name}: {e!r}")
    print(f"\n{len(tests) - failed}/{len(tests)} passed")
    return failed == 0


if __name__ == "__main__":
    passed = main()
    sys.exit(0 if passed else 1)
