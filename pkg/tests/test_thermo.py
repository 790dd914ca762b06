"""Tests for free energies, the slope geometry, surface tension and duality."""

import math

import numpy as np
import pytest

from fivevertex.bethe import ModelParams, solve_consistency
from fivevertex.complexfn import b_fn
from fivevertex.errors import InfeasibleSlopeError, RangeError
from fivevertex.thermo import (
    FreeEnergyResult,
    SlopePoint,
    dual_fields,
    feasible,
    free_energy,
    legendre_dual_value,
    microcanonical_f,
    solve_tilt,
    solve_w0,
    split_oval_threshold,
    surface_tension,
    u0_from_w0,
    y_upper_bound_small_r,
)


class TestSolveW0:
    def test_small_r_residual(self):
        params = ModelParams(0.6)
        w0 = solve_w0(0.5, -2.0, params)
        target = 2.0 - math.log(1.0 - 0.36)
        assert abs(b_fn(w0) - target) < 1e-10
        # angle-ratio constraint: arg w / arg(1/(1-w)) = s/(1-s)
        import cmath
        ratio = cmath.phase(w0) / (-cmath.phase(1 - w0))
        assert abs(ratio - 1.0) < 1e-10

    def test_big_r_residual(self):
        params = ModelParams(1.3)
        w0 = solve_w0(0.5, 0.0, params)
        target = -math.log(1.3 ** 2 - 1.0)
        lhs = math.log(abs(w0 * (1 - w0))) - b_fn(w0)
        assert abs(lhs - target) < 1e-10

    def test_pinch_limit(self):
        # Y -> upper bound: w0 tends to a real point in (0, 1) and B -> 0
        r = 0.6
        params = ModelParams(r)
        bound = y_upper_bound_small_r(r)
        for dy, tol in ((1e-4, 0.2), (1e-7, 0.01)):
            w0 = solve_w0(0.5, bound - dy, params)
            assert 0.0 < w0.real < 1.0
            assert w0.imag < tol
            assert b_fn(w0) < 2 * dy

    def test_out_of_range(self):
        with pytest.raises(RangeError):
            solve_w0(0.5, y_upper_bound_small_r(0.6) + 0.1, ModelParams(0.6))
        with pytest.raises(RangeError):
            # s = 1/2 for r > 1 cannot reach the split-oval range
            solve_w0(0.5, split_oval_threshold(1.3) + 0.5, ModelParams(1.3))


class TestTiltGeometry:
    @pytest.mark.parametrize("r", [0.6, 1.3])
    def test_symmetric_slope_on_circle(self, r):
        params = ModelParams(r)
        tilt = solve_tilt(SlopePoint(0.2, 0.2), params)
        assert abs(tilt.rho - r) < 1e-8

    @pytest.mark.parametrize("r,s,t", [(0.6, 0.2, 0.3), (0.6, 0.05, 0.4),
                                       (1.3, 0.3, 0.5), (1.3, 0.6, 0.1)])
    def test_roundtrip_and_invariants(self, r, s, t):
        params = ModelParams(r)
        tilt = solve_tilt(SlopePoint(s, t), params)
        assert tilt.u0.imag > 0
        # the defining plane-curve relation for (w, z)
        w, z = tilt.w0, tilt.z0
        resid = 1.0 - w - z + (1.0 - r * r) * w * z
        assert abs(resid) < 1e-10
        # angle bookkeeping
        assert abs(tilt.phi - (1.0 - s - t) * tilt.theta) < 1e-9

    def test_curved_edge_parameterization(self):
        # u -> p in (r^2, 1) from above lands on the hyperbola with the
        # explicit densities s = (p - r^2)/(1 - r^2), t = r^2 (1-p)/((1-r^2) p)
        r = 0.6
        r2 = r * r
        params = ModelParams(r)
        p = 0.7
        s_expect = (p - r2) / (1 - r2)
        t_expect = r2 * (1 - p) / ((1 - r2) * p)
        from fivevertex.thermo import _slope_of_u
        s, t, _, _ = _slope_of_u(complex(p, 1e-8), params)
        assert abs(s - s_expect) < 1e-6
        assert abs(t - t_expect) < 1e-6

    def test_vertex_limits(self):
        # u in (1, inf), (-inf, 0), (0, r^2) map to the corners of the triangle
        r = 0.6
        params = ModelParams(r)
        from fivevertex.thermo import _slope_of_u
        for u, corner in ((complex(5.0, 1e-7), (1.0, 0.0)),
                          (complex(-4.0, 1e-7), (0.0, 0.0)),
                          (complex(0.2, 1e-7), (0.0, 1.0))):
            s, t, _, _ = _slope_of_u(u, params)
            assert abs(s - corner[0]) < 1e-2
            assert abs(t - corner[1]) < 1e-2

    def test_infeasible_rejected(self):
        params = ModelParams(0.6)
        with pytest.raises(InfeasibleSlopeError):
            solve_tilt(SlopePoint(0.45, 0.45), params)  # outside the hyperbola


class TestFeasible:
    def test_boundary_point(self):
        # s = t on the hyperbola: ((1-r^2)/r^2) s^2 + 2 s - 1 = 0
        r = 0.6
        c = (1 - r * r) / (r * r)
        s = (-2 + math.sqrt(4 + 4 * c)) / (2 * c)
        assert abs(c * s * s + 2 * s - 1) < 1e-12
        assert not feasible(SlopePoint(s, s), ModelParams(r))
        assert feasible(SlopePoint(0.2, 0.2), ModelParams(r))

    def test_degenerates_to_diagonal_as_r_to_1(self):
        c = (1 - 0.999 ** 2) / 0.999 ** 2
        s = (-2 + math.sqrt(4 + 4 * c)) / (2 * c)
        assert abs(s - 0.5) < 1e-3  # hyperbola -> line s + t = 1

    def test_big_r_full_triangle(self):
        assert feasible(SlopePoint(0.49, 0.49), ModelParams(1.3))
        assert not feasible(SlopePoint(0.5, 0.5), ModelParams(1.3))


class TestMicrocanonical:
    def test_boundary_value_small_r(self):
        r, s = 0.6, 0.3
        bound = y_upper_bound_small_r(r)
        val = microcanonical_f(s, bound, ModelParams(r))
        assert abs(val - (-(1 - s) * math.log(1 - r * r))) < 1e-12

    def test_collapsed_regime_linear(self):
        r = 0.6
        val = microcanonical_f(0.25, 1.2, ModelParams(r))
        assert abs(val - 0.75 * 1.2) < 1e-12

    def test_split_oval_value_and_continuity(self):
        r = 1.3
        thr = split_oval_threshold(r)
        params = ModelParams(r)
        assert abs(microcanonical_f(0.5, thr + 1.0, params)
                   - (0.5 * (thr + 1.0) + math.log(r))) < 1e-12
        below = microcanonical_f(0.5, thr - 1e-6, params)
        at = microcanonical_f(0.5, thr, params)
        assert abs(below - (at - 0.5e-6)) < 1e-8

    @pytest.mark.parametrize("r,Y", [(0.6, -2.0), (1.3, 0.0)])
    def test_finite_size_agreement(self, r, Y):
        fm = microcanonical_f(0.5, Y, ModelParams(r))
        sol = solve_consistency(160, 80, ModelParams(r, 0.0, Y))
        assert abs(sol.log_lam / 160 - fm) < 2e-4

    def test_endpoints(self):
        params = ModelParams(0.6)
        assert microcanonical_f(0.0, -1.0, params) == 0.0
        assert microcanonical_f(0.0, 0.4, params) == 0.4
        assert microcanonical_f(1.0, -1.0, params) == 0.0


class TestFreeEnergy:
    def test_at_upper_bound(self):
        r = 0.7
        b = y_upper_bound_small_r(r)
        for X in (-1.0, 0.2, 1.5):
            res = free_energy(ModelParams(r, X, b))
            assert abs(res.value - max(b, X)) < 1e-8

    def test_above_upper_bound(self):
        r = 0.7
        b = y_upper_bound_small_r(r)
        for X in (-0.5, 2.0):
            res = free_energy(ModelParams(r, X, b + 0.7))
            assert abs(res.value - max(b + 0.7, X)) < 1e-8

    def test_interior_maximum_consistency(self):
        # F(X, Y) >= X s + F_m(s, Y) with equality at the reported argmax
        params = ModelParams(0.8, 0.3, -0.8)
        res = free_energy(params)
        assert isinstance(res, FreeEnergyResult)
        for s in np.linspace(0.05, 0.95, 7):
            assert res.value >= params.X * s + microcanonical_f(s, params.Y, params) - 1e-9
        assert abs(res.value - (params.X * res.s_star
                                + microcanonical_f(res.s_star, params.Y, params))) < 1e-9


class TestSurfaceTension:
    @pytest.mark.parametrize("r", [0.8, 1.3])
    def test_symmetry(self, r):
        params = ModelParams(r)
        for (s, t) in ((0.2, 0.3), (0.15, 0.42), (0.05, 0.1)):
            a = surface_tension(SlopePoint(s, t), params)
            b = surface_tension(SlopePoint(t, s), params)
            assert abs(a - b) < 1e-10

    @pytest.mark.parametrize("r", [0.8, 1.3])
    def test_gradients_match_duals(self, r):
        params = ModelParams(r)
        pts = [(0.2, 0.3), (0.3, 0.2), (0.25, 0.25)]
        h = 1e-5
        for (s, t) in pts:
            X, Y = dual_fields(SlopePoint(s, t), params)
            dds = (surface_tension(SlopePoint(s + h, t), params)
                   - surface_tension(SlopePoint(s - h, t), params)) / (2 * h)
            ddt = (surface_tension(SlopePoint(s, t + h), params)
                   - surface_tension(SlopePoint(s, t - h), params)) / (2 * h)
            assert abs(dds - X) < 1e-4
            assert abs(ddt - Y) < 1e-4

    def test_big_r_edge_laws(self):
        r = 1.3
        params = ModelParams(r)
        for s in (0.2, 0.5, 0.7):
            val = surface_tension(SlopePoint(s, 1.0 - s), params)
            assert abs(val - (-2.0 * min(s, 1 - s) * math.log(r))) < 1e-12
        for s in (0.2, 0.8):
            assert surface_tension(SlopePoint(s, 0.0), params) == 0.0
            assert surface_tension(SlopePoint(0.0, s), params) == 0.0
        # interior values approach the edge law
        s = 0.3
        edge = -2.0 * min(s, 1 - s) * math.log(r)
        errs = [abs(surface_tension(SlopePoint(s, 1 - s - eps), params) - edge)
                for eps in (1e-2, 1e-3, 1e-4)]
        assert errs[2] < errs[1] < errs[0]
        assert errs[2] < 1e-2

    def test_small_r_envelope_region(self):
        r = 0.6
        params = ModelParams(r)
        lg = math.log(1 - r * r)
        # affine beyond the hyperbola, continuous across it
        assert abs(surface_tension(SlopePoint(0.42, 0.42), params)
                   - (1 - 0.84) * lg) < 1e-12
        c = (1 - r * r) / (r * r)
        sb = (-2 + math.sqrt(4 + 4 * c)) / (2 * c)
        inner = surface_tension(SlopePoint(sb - 1e-7, sb - 1e-7), params)
        outer = surface_tension(SlopePoint(sb + 1e-7, sb + 1e-7), params)
        assert abs(inner - outer) < 1e-6

    def test_small_r_affine_along_segments(self):
        # beyond the hyperbola sigma is affine: check along a segment
        r = 0.6
        params = ModelParams(r)
        pts = [(0.40 + 0.05 * k, 0.58 - 0.05 * k) for k in range(4)]
        vals = [surface_tension(SlopePoint(s, t), params) for s, t in pts]
        second_diff = np.diff(vals, 2)
        assert np.max(np.abs(second_diff)) < 1e-12

    @pytest.mark.parametrize("r", [0.8, 1.3])
    def test_convexity_on_grid(self, r):
        params = ModelParams(r)
        h = 1e-3
        for (s, t) in ((0.2, 0.2), (0.3, 0.15), (0.12, 0.35)):
            f = lambda a, b: surface_tension(SlopePoint(a, b), params)
            fss = (f(s + h, t) - 2 * f(s, t) + f(s - h, t)) / h ** 2
            ftt = (f(s, t + h) - 2 * f(s, t) + f(s, t - h)) / h ** 2
            fst = (f(s + h, t + h) - f(s + h, t - h) - f(s - h, t + h)
                   + f(s - h, t - h)) / (4 * h ** 2)
            hess = np.array([[fss, fst], [fst, ftt]])
            assert np.linalg.eigvalsh(hess).min() > -1e-6


class TestLegendre:
    @pytest.mark.parametrize("r", [0.8, 1.3])
    def test_duality_at_point(self, r):
        params = ModelParams(r)
        st = SlopePoint(0.3, 0.25)
        sig = surface_tension(st, params)
        dual = legendre_dual_value(st, params)
        assert abs(sig - dual) < 1e-5
