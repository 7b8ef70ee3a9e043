"""
Tests: boolean Macaulay matrix construction, dimensions, certificates and SMS dumps.
"""

import sys
from math import comb

import cost_model
import solver
from algebra import macaulay
from algebra.gf2_dense import BitMatrix, solve_left
from algebra.monomials import monomial_index
from algebra.poly import QuadraticPoly, random_system, system_from_polys
from algebra.rng import SplitMix64


def _poly(n, *terms):
    return QuadraticPoly.from_terms(n, terms)


def test_dimensions_match_binomial_sums():
    for n in range(2, 9):
        for m in (n, n + 3):
            s = random_system(n, m, n * 100 + m)
            for d in range(2, 6):
                mac = macaulay.build(s, d)
                assert mac.n_cols == sum(comb(n, i) for i in range(d + 1))
                assert mac.n_rows == m * sum(comb(n, i) for i in range(d - 1))
                sizes = cost_model.macaulay_sizes(n, m, d)
                assert (sizes.c_mac, sizes.r_mac) == (mac.n_cols, mac.n_rows)
                assert mac.nnz <= sizes.s_mac


def test_analytic_bounds_hold_below_half():
    for nv in range(4, 13):
        for m in (nv, 2 * nv):
            for d in range(1, nv):
                if not d < nv / 2:
                    continue
                c, r, s = cost_model.macaulay_sizes(nv, m, d)
                c_b, r_b, s_b = cost_model.analytic_bounds(nv, m, d)
                assert c < c_b and r < r_b and s <= s_b, (nv, m, d)


def test_row_order_by_equation_then_descending_multiplier():
    s = random_system(3, 2, 9)
    mac = macaulay.build(s, 3)
    assert [t for _, t in mac.provenance[:4]] == [(0,), (1,), (2,), ()]
    assert mac.provenance[3] == (0, ())
    assert mac.provenance[4] == (1, (0,))
    assert mac.degree == 3


def test_phi_reduces_squares():
    # x1 * (x1*x2 + x1 + 1) = x1*x2 + x1 + x1 = x1*x2
    f = _poly(2, (0, 1), (0,), ())
    idx = monomial_index(2, 3)
    row = macaulay.phi_multiply((0,), f, idx)
    assert macaulay.row_terms(row, idx) == [(0, 1)]


def test_zero_rows_are_kept():
    s = system_from_polys([_poly(2, (0,), (0, 1)), _poly(2, (1,))])
    mac = macaulay.build(s, 3)
    # x2 * (x1 + x1*x2) = 0
    assert mac.rows[mac.provenance.index((0, (1,)))] == ()
    assert mac.n_rows == 2 * 3


def test_contradiction_certificate_at_degree_two():
    s = system_from_polys([_poly(2, (0,)), _poly(2, (0,), ())])
    mac = macaulay.build(s, 2)
    assert macaulay.rhs_vector(mac.idx) == (mac.n_cols - 1,)
    u = solve_left(BitMatrix.from_rows(mac.rows, mac.n_cols), macaulay.rhs_vector(mac.idx))
    assert u == (0, 1)
    assert macaulay.combine_rows(mac, u) == macaulay.rhs_vector(mac.idx)
    expansion = macaulay.expand_certificate(mac, u)
    assert expansion == {0: [()], 1: [()]}
    assert macaulay.format_certificate(expansion) == ["h1 = 1", "h2 = 1"]


def test_certificate_needs_degree_three():
    s = system_from_polys([_poly(2, (0, 1), ()), _poly(2, (0,)), _poly(2, (1,))])
    low = macaulay.build(s, 2)
    assert solve_left(BitMatrix.from_rows(low.rows, low.n_cols), macaulay.rhs_vector(low.idx)) is None
    high = macaulay.build(s, 3)
    u = solve_left(BitMatrix.from_rows(high.rows, high.n_cols), macaulay.rhs_vector(high.idx))
    assert u is not None
    assert macaulay.combine_rows(high, u) == macaulay.rhs_vector(high.idx)
    lines = macaulay.format_certificate(macaulay.expand_certificate(high, u))
    assert lines and all(line.startswith("h") for line in lines)


def test_grevlex_columns_for_three_variables():
    idx = monomial_index(3, 2)
    expected = [(0, 1), (0, 2), (1, 2), (0,), (1,), (2,), ()]
    assert [macaulay.grevlex_rank(mono, idx) for mono in expected] == list(range(7))
    assert [macaulay.grevlex_unrank(i, idx) for i in range(7)] == expected
    try:
        macaulay.grevlex_rank((0, 1, 2), idx)
    except ValueError:
        pass
    else:
        raise AssertionError("degree above d accepted")


def _small_systems():
    for n in range(3, 11):
        for seed in range(2):
            yield random_system(n, n + 2, 40 * n + seed)


def _monomial_value(mono, v):
    return int(all((v >> i) & 1 for i in mono))


def test_certificate_implies_no_roots():
    for s in _small_systems():
        roots = solver.exhaustive_search(s).values
        for d in (2, 3):
            mac = macaulay.build(s, d)
            u = solve_left(BitMatrix.from_rows(mac.rows, mac.n_cols), macaulay.rhs_vector(mac.idx))
            if u is not None:
                assert not roots, (s.n, d)
                assert macaulay.combine_rows(mac, u) == macaulay.rhs_vector(mac.idx)


def test_row_combinations_vanish_on_roots():
    rng = SplitMix64(5)
    checked = 0
    for s in _small_systems():
        roots = solver.exhaustive_search(s).values
        if not roots:
            continue
        mac = macaulay.build(s, 3)
        for _ in range(10):
            selection = [i for i in range(mac.n_rows) if rng.next_bit()]
            terms = macaulay.row_terms(macaulay.combine_rows(mac, selection), mac.idx)
            for v in roots:
                assert sum(_monomial_value(t, v) for t in terms) % 2 == 0
            checked += 1
    assert checked > 0


def test_build_rejects_low_degree():
    try:
        macaulay.build(random_system(3, 3, 1), 1)
    except ValueError:
        pass
    else:
        raise AssertionError("degree 1 accepted")


def test_sms_dump():
    s = system_from_polys([_poly(2, (0,)), _poly(2, (0,), ())])
    text = macaulay.dump_sms(macaulay.build(s, 2))
    lines = text.splitlines()
    assert lines[0] == "2 4 2"
    # columns: x1*x2, x1, x2, 1 (1-based 1..4)
    assert lines[1:-1] == ["1 2 1", "2 2 1", "2 4 1"]
    assert lines[-1] == "0 0 0"


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
