"""
Tests: Macaulay sizes, hybrid cost estimates, crossover points and the QUAD advisor.
"""

import sys
from math import log2

import cost_model


def test_macaulay_sizes_reference():
    sizes = cost_model.macaulay_sizes(10, 10, 3)
    assert sizes == (176, 110, 6160)
    assert cost_model.macaulay_sizes(5, 5, 2).r_mac == 5


def test_analytic_bounds_domain():
    for nv, d in ((10, 0), (10, 5), (4, 2)):
        try:
            cost_model.analytic_bounds(nv, nv, d)
        except ValueError:
            pass
        else:
            raise AssertionError(f"accepted d={d} for nv={nv}")


def test_concrete_cost_formula():
    est = cost_model.concrete_cost(20, 20, 8, "det3")
    c, r = est.c_mac, est.r_mac
    assert abs(est.total_bitops_log2 - (8 + log2(r) + log2(c) + log2(min(r, c)))) < 1e-9
    lv = cost_model.concrete_cost(20, 20, 8, "lasvegas")
    big = max(lv.r_mac, lv.c_mac)
    assert abs(lv.total_bitops_log2 - (8 + log2(big) + log2(log2(big)) + log2(lv.s_mac))) < 1e-9
    assert lv.d0 == est.d0


def test_estimate_at_optimal_gamma():
    est = cost_model.estimate_at_gamma(100, 100, 0.55, "lasvegas")
    assert est.k == 45
    assert abs(est.exponent_per_n - 0.7911) < 5e-4
    assert est.to_dict()["method"] == "lasvegas"


def test_optimize_k_beats_fixed_choices():
    best = cost_model.optimize_k(100, 100, "lasvegas")
    for k in (0, 20, 45, 70, 99):
        assert best.total_bitops_log2 <= cost_model.concrete_cost(100, 100, k, "lasvegas").total_bitops_log2
    assert 80 <= best.k <= 92


def test_cost_grows_with_n_at_fixed_ratios():
    for method in ("lasvegas", "det3"):
        for ratio in (1, 2):
            costs = [
                cost_model.estimate_at_gamma(n, ratio * n, 0.55, method).total_bitops_log2
                for n in range(50, 401, 10)
            ]
            assert all(a <= b for a, b in zip(costs, costs[1:])), (method, ratio)


def test_range_checks():
    for bad in (
        lambda: cost_model.concrete_cost(10, 9, 2),
        lambda: cost_model.concrete_cost(10, 10, 10),
        lambda: cost_model.concrete_cost(10, 10, 2, "det4"),
        lambda: cost_model.exhaustive_cost(10, "gray"),
        lambda: cost_model.quad_min_n(128, ratio=3),
    ):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("invalid input accepted")


def test_exhaustive_models():
    assert cost_model.exhaustive_cost(64) == 64.0
    assert abs(cost_model.exhaustive_cost(64, "fes") - (64 + log2(24))) < 1e-12


def test_crossover_points():
    # bands are measured against plain 2^n search; with 4·log2(n)·2^n both fall near 160
    lv = cost_model.crossover_n("lasvegas", n_min=150)
    det = cost_model.crossover_n("det3", n_min=230)
    assert 180 <= lv <= 220, lv
    assert 250 <= det <= 310, det
    assert cost_model.crossover_n("lasvegas", n_min=10, n_max=60) is None


def test_quad_advisor_bands():
    n128 = cost_model.quad_min_n(128)
    n192 = cost_model.quad_min_n(192)
    n256 = cost_model.quad_min_n(256)
    assert 115 <= n128 <= 141
    assert 245 <= n256 <= 295
    assert n128 < n192 < n256
    wide = [cost_model.quad_min_n(bits, ratio=2) for bits in (128, 192, 256)]
    assert abs(wide[2] - 335) <= 33.5
    assert wide[0] < wide[1] < wide[2]
    assert all(w > n for w, n in zip(wide, (n128, n192, n256)))


def test_rule_of_thumb():
    assert cost_model.rule_of_thumb_n(256) == 324
    assert cost_model.rule_of_thumb_n(128) == 162


def test_exponent_curve_caps_gamma():
    curve = cost_model.exponent_curve(2.0, [1.0, 2.0])
    assert curve[0][1] == 0.55
    assert curve[1][1] == 1.0
    assert abs(curve[1][2] - 0.5847) < 5e-4


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
