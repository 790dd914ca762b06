"""Tests for root curves, consistency solve, eigenvalues, oracle, completeness."""

import math
from math import comb

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import linear_sum_assignment

from fivevertex.bethe import (
    ModelParams,
    cassini_roots,
    circulant_block_eigenvalues,
    component_threshold,
    consistency_target,
    curve_labels,
    eigenvalue,
    eigenvalue_product_form,
    log_eigenvalue,
    mahler_integral,
    oracle_leading,
    oval_components,
    select_roots,
    selected_log_product,
    solve_consistency,
    spectrum_completeness,
    transfer_matrix_oracle,
    verify_record,
    y_upper_bound_small_r,
)
from fivevertex.errors import DomainError, RangeError, SizeError


def poly_residual(big_n, n, roots, y):
    vals = roots ** (big_n - n) * (1 - roots) ** n
    return np.max(np.abs(vals - y))


class TestCassiniRoots:
    def test_checkerboard_counts_and_components(self):
        # threshold for N=16, n=4: 4^4 12^12 / 16^16
        thr = 4 ** 4 * 12 ** 12 / 16 ** 16
        assert abs(component_threshold(16, 4) - thr) < 1e-18
        assert abs(thr - 1.237e-4) < 2e-7
        assert oval_components(16, 4, -1e-1) == 1
        assert oval_components(16, 4, -1e-3) == 1
        assert oval_components(16, 4, -1e-5) == 2

    def test_sixteen_roots_single_curve(self):
        roots = cassini_roots(16, 4, -0.1)
        assert len(roots) == 16
        assert poly_residual(16, 4, roots, -0.1) < 1e-10
        # one component: moduli of |p| level-set fill a connected annulus;
        # simple proxy: the real parts interlace across [min, max] without the
        # large gap a two-component oval shows around the pinch region
        assert oval_components(16, 4, -0.1) == 1

    def test_small_case_residual(self):
        roots = cassini_roots(4, 2, -0.01)
        assert len(roots) == 4
        assert poly_residual(4, 2, roots, -0.01) < 1e-12

    def test_root_count_equals_curve_count(self):
        assert len(curve_labels(12, 4)) == 6  # N/2 upper-half-plane curves

    def test_invalid_inputs(self):
        with pytest.raises(DomainError):
            cassini_roots(8, 0, -0.1)
        with pytest.raises(DomainError):
            cassini_roots(8, 4, 0.1)


class TestSelectRoots:
    def test_two_component_membership(self):
        # y below threshold: the n rightmost roots are the component around 1
        big_n, n = 16, 4
        y = -1e-6
        roots = cassini_roots(big_n, n, y)
        sel = select_roots(roots, n, big_r=False)
        pinch = 1.0 - n / big_n  # the ovals pinch near w = (N-n)/N..1 gap
        assert all(w.real > pinch for w in sel)
        rest = [w for w in roots if all(abs(w - s) > 1e-12 for s in sel)]
        assert all(w.real < pinch for w in rest)

    def test_big_r_leftmost(self):
        roots = cassini_roots(16, 4, -1e-2)
        sel = select_roots(roots, 4, big_r=True)
        cutoff = sorted(w.real for w in roots)[4]
        assert all(w.real < cutoff for w in sel)

    def test_product_real_positive(self):
        roots = cassini_roots(12, 4, -0.3)
        for big_r in (False, True):
            sel = select_roots(roots, 4, big_r=big_r)
            prod = np.prod(sel)
            assert abs(prod.imag) < 1e-10 * abs(prod)
            assert prod.real > 0.0

    def test_affine_modulus_sorting_agrees(self):
        # sorting by |1-(1-r^2) w| (r<1) selects the same n roots as real part
        r = 0.7
        c = 1 - r * r
        for y in (-1e-5, -1e-2, -10.0):
            roots = cassini_roots(16, 6, y)
            sel_re = set(np.round(select_roots(roots, 6, big_r=False), 10))
            by_mod = sorted(roots, key=lambda w: abs(1 - c * w))
            sel_mod = set(np.round(np.array(by_mod[:6]), 10))
            assert sel_re == sel_mod


class TestConsistency:
    def test_out_of_range_small_r(self):
        r = 0.5
        with pytest.raises(RangeError):
            solve_consistency(8, 4, ModelParams(r, 0.0, y_upper_bound_small_r(r) + 0.1))

    def test_residual(self):
        params = ModelParams(0.5, 0.0, -1.5)
        sol = solve_consistency(8, 4, params)
        assert sol.y < 0
        resid = selected_log_product(8, 4, sol.log_abs_y) - consistency_target(params)
        assert abs(resid) < 1e-12
        # every root satisfies the polynomial equation with the common y
        assert poly_residual(8, 4, sol.roots, sol.y) < 1e-10 * abs(sol.y)

    def test_product_monotone_in_y(self):
        for big_n, n, big_r in ((16, 4, False), (16, 4, True), (20, 10, False)):
            grid = np.linspace(-30.0, 30.0, 50)
            vals = [selected_log_product(big_n, n, L, big_r) for L in grid]
            assert np.all(np.diff(vals) > 0.0)

    def test_y_to_field_monotone(self):
        # along the solved family, larger |y| means smaller Y (r < 1)
        big_n, n, r = 12, 6, 0.6
        ys = []
        for Y in np.linspace(-2.0, 0.2, 8):
            sol = solve_consistency(big_n, n, ModelParams(r, 0.0, Y))
            ys.append(-sol.y)
        assert np.all(np.diff(ys) < 0.0)


class TestEigenvalue:
    def test_forms_agree_and_match_oracle(self):
        params = ModelParams(0.7, 0.1, -1.0)
        sol = solve_consistency(6, 2, params)
        lam1 = eigenvalue_product_form(sol, params)
        lam3 = math.exp(log_eigenvalue(sol, params))
        assert abs(lam1 - lam3) < 1e-10 * abs(lam3)
        lam_oracle = oracle_leading(transfer_matrix_oracle(6, 2, params))
        assert abs(lam3 - lam_oracle) < 1e-9 * abs(lam_oracle)

    def test_verify_record(self):
        rec = verify_record(8, 4, ModelParams(1.3, 1.0, 1.0))
        assert rec["rel_err"] < 1e-9
        assert set(rec) == {"N", "n", "r", "X", "Y", "lambda_bethe",
                            "lambda_oracle", "rel_err"}

    def test_large_size_log_form(self):
        params = ModelParams(0.6, 0.0, -2.0)
        sol = solve_consistency(160, 80, params)
        assert math.isfinite(sol.log_lam)
        assert eigenvalue(sol, params) > 0


class TestOracle:
    def test_empty_block(self):
        params = ModelParams(0.7, 0.3, -0.4)
        T = transfer_matrix_oracle(8, 0, params)
        assert T.shape == (1, 1)
        assert abs(T[0, 0] - (1.0 + math.exp(-0.4 * 8))) < 1e-14

    def test_full_block(self):
        params = ModelParams(0.7, 0.3, -0.4)
        T = transfer_matrix_oracle(6, 6, params)
        assert T.shape == (1, 1)
        assert abs(T[0, 0] - math.exp(0.3 * 6)) < 1e-12

    def test_single_path_block_is_circulant(self):
        params = ModelParams(0.8, 0.2, -0.3)
        big_n = 6
        T = transfer_matrix_oracle(big_n, 1, params)
        for shift in range(1, big_n):
            assert np.allclose(np.roll(np.roll(T, shift, 0), shift, 1), T)
        spec = np.linalg.eigvals(T)
        formula = circulant_block_eigenvalues(big_n, params)
        cost = np.abs(spec[:, None] - formula[None, :])
        ri, ci = linear_sum_assignment(cost)
        assert cost[ri, ci].max() < 1e-10 * np.max(np.abs(formula))

    def test_size_cap(self):
        with pytest.raises(SizeError):
            transfer_matrix_oracle(16, 2, ModelParams(0.7))


class TestCompleteness:
    @pytest.mark.parametrize("big_n,n,r", [(8, 2, 0.7), (8, 4, 0.7), (8, 4, 1.3)])
    def test_full_spectrum(self, big_n, n, r):
        rep = spectrum_completeness(big_n, n, ModelParams(r))
        assert rep.expected == comb(big_n, n)
        assert rep.solved == rep.expected
        assert not rep.failures
        assert rep.max_match_distance < 1e-6


class TestMahler:
    def test_both_outside(self):
        assert abs(mahler_integral([2.0, -2.0], 1.0) - math.log(4.0)) < 1e-14

    def test_inside(self):
        assert mahler_integral([0.5], 1.0) == 0.0

    def test_mixed_with_quadrature(self):
        roots = [0.5, 3.0]
        val = mahler_integral(roots, 1.0)
        assert abs(val - math.log(3.0)) < 1e-14

        def logq(t):
            z = np.exp(1j * t)
            return math.log(abs((z - 0.5) * (z - 3.0)))

        integral, _ = quad(logq, 0.0, 2.0 * math.pi, limit=200)
        assert abs(integral / (2.0 * math.pi) - val) < 1e-8

    def test_on_circle_degenerate(self):
        with pytest.raises(DomainError):
            mahler_integral([1.0], 1.0)
