"""
Tests: Hilbert series prefixes, d0 and the asymptotic exponent formulas.
"""

import sys

import hilbert


def _close(a, b, tol):
    return abs(a - b) <= tol


def test_series_prefix_exact_coefficients():
    # (1+t)^3 / ((1-t)(1+t^2)^10)
    assert hilbert.series_prefix(3, 10, 3).coeffs == (1, 4, -3, -32)


def test_series_prefix_examples():
    assert hilbert.series_prefix(3, 4, 3).coeffs == (1, 4, 3, -8)
    assert hilbert.series_prefix(2, 2, 3).coeffs == (1, 3, 2, -2)
    # 1 / ((1-t)(1+t^2)) repeats with period 4
    assert hilbert.series_prefix(0, 1, 11).coeffs == (1, 1, 0, 0) * 3


def test_dividing_by_one_plus_t_squared():
    # S_{nv,j} · (1 + t^2) = S_{nv,j-1}
    cap = 20
    for nv in range(0, 9):
        for j in range(2, 11):
            cur = hilbert.series_prefix(nv, j, cap).coeffs
            prev = hilbert.series_prefix(nv, j - 1, cap).coeffs
            for ell in range(cap + 1):
                below = cur[ell - 2] if ell >= 2 else 0
                assert cur[ell] == prev[ell] - below, (nv, j, ell)


def test_d0_nonincreasing_in_m():
    for nv in range(0, 31):
        values = [hilbert.d0(nv, m) for m in range(max(nv, 1), 3 * nv + 1)]
        assert all(a >= b for a, b in zip(values, values[1:])), nv


def test_m_asym_decreasing():
    values = [hilbert.m_asym(1 + 0.5 * i) for i in range(9)]
    assert all(a > b for a, b in zip(values, values[1:])), values


def test_f_alpha_vanishes_with_gamma():
    assert 0 <= hilbert.f_alpha_gamma(1, 1e-4) < 1e-3


def test_d0_reference_values():
    cases = {
        (3, 4): (3, -8),
        (2, 2): (3, -2),
        (3, 10): (2, -3),
        (1, 1): (3, 0),
        (4, 10): (3, -35),
        (6, 12): (3, -42),
    }
    for (nv, m), (d, value) in cases.items():
        assert hilbert.d0(nv, m) == d, (nv, m)
        assert hilbert.first_nonpositive_value(nv, m) == value, (nv, m)
    assert hilbert.d0(8, 8) == 4
    assert hilbert.hs_degree(3, 10) == 1


def test_d0_scan_limit():
    # far from overdetermined: the series stays positive up to nv + 3
    try:
        hilbert.d0(20, 1)
    except hilbert.NoNonpositiveCoefficient:
        pass
    else:
        raise AssertionError("expected no nonpositive coefficient")


def test_d0_table_matches_pointwise():
    for m in (10, 30):
        table = hilbert.d0_table(m, m)
        assert table == [hilbert.d0(nv, m) for nv in range(m + 1)]
        assert table == sorted(table)


def test_large_instances():
    assert hilbert.d0(60, 60) == 10
    assert hilbert.d0(400, 728) == 29


def test_m_asym_at_one():
    assert _close(hilbert.m_asym(1.0), 0.0900, 5e-4)


def test_degree_ratio_decreases_toward_limit():
    limit = 0.55 * hilbert.m_asym(1 / 0.55)
    ratios = [hilbert.hs_degree(int(0.55 * n), n) / n for n in (50, 100, 200, 400)]
    assert all(a > b for a, b in zip(ratios, ratios[1:])), ratios
    assert all(r > limit for r in ratios)
    assert ratios[-1] - limit < 0.015


def test_exponent_table():
    assert _close(hilbert.exponent(1, 0.55, 2), 0.7911, 5e-4)
    assert _close(hilbert.exponent(1, 0.40, 2.376), 0.8410, 5e-4)
    assert _close(hilbert.exponent(1, 0.27, 3), 0.8876, 5e-4)
    assert _close(hilbert.exponent(1.25, 0.55 * 1.25, 2), 0.7388, 5e-4)
    assert _close(hilbert.exponent(2.0, 1.0, 2), 0.5847, 5e-4)
    assert _close(hilbert.exponent(2.0, 0.80, 2.376), 0.6820, 5e-4)
    assert _close(hilbert.f_alpha_gamma(1, 0.55), 0.17053, 5e-5)


def test_slope_bounds():
    for theta, lam, slope in ((2.0, 0.55, 0.208), (2.376, 0.40, 0.159), (3.0, 0.27, 0.112)):
        for step in range(17):
            alpha = 1 + step * 0.05
            gamma = hilbert.optimal_gamma(alpha, theta)
            assert _close(gamma, min(1.0, lam * alpha), 1e-12)
            assert hilbert.exponent(alpha, gamma, theta) <= 1 - slope * alpha + 1e-3, (theta, alpha)


def test_domain_checks():
    for bad in (
        lambda: hilbert.m_asym(0.5),
        lambda: hilbert.exponent(1, 0.5, 3.5),
        lambda: hilbert.f_alpha_gamma(1, 0),
        lambda: hilbert.lambda_star(2.5),
        lambda: hilbert.series_prefix(3, 0, 4),
    ):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("out-of-domain input accepted")


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
