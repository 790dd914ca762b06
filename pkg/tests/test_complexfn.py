"""Tests for the dilogarithm / Bloch-Wigner / Lobachevsky / B-function suite."""

import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from fivevertex.complexfn import (
    a_fn,
    b_deriv,
    b_fn,
    b_fn_triangle,
    b_laplacian,
    bloch_wigner,
    dilog,
    lobachevsky,
    triangle_angles,
)
from fivevertex.errors import DomainError


def dilog_series_oracle(z: complex, nmax: int = 400) -> complex:
    """Independent oracle: plain power series, valid for |z| < 1."""
    return sum(z ** k / k ** 2 for k in range(1, nmax + 1))


def lobachevsky_quadrature_oracle(theta: float) -> float:
    """Independent oracle: adaptive quadrature of -log(2 sin t)."""
    val, err = quad(lambda t: -math.log(2.0 * math.sin(t)), 0.0, theta,
                    points=[0.0], limit=200)
    assert err < 1e-9
    return val


class TestDilog:
    def test_zero(self):
        assert dilog(0.0) == 0.0

    def test_limit_to_one_is_pi2_over_6(self):
        # classical value pi^2/6 approached along the real axis
        for eps in (1e-4, 1e-6, 1e-8):
            val = dilog(1.0 - eps)
            assert abs(val.real - math.pi ** 2 / 6.0) < 20 * eps * abs(math.log(eps))

    def test_series_oracle_half(self):
        assert abs(dilog(0.5) - dilog_series_oracle(0.5)) < 1e-14

    @pytest.mark.parametrize("z", [0.3 + 0.4j, -0.7 + 0.1j, 0.9j, -0.95,
                                   0.62 + 0.62j, 0.1 - 0.85j])
    def test_series_oracle_in_disk(self, z):
        ref = dilog_series_oracle(z, nmax=3000)
        assert abs(dilog(z) - ref) < 1e-12 * max(1.0, abs(ref))

    @pytest.mark.parametrize("z", [3.0 + 4.0j, -5.2 + 0.3j, 1.2 + 0.9j,
                                   0.99 + 0.01j, 2.0 - 3.0j, -17.0])
    def test_functional_equation_inversion(self, z):
        # Li(z) + Li(1/z) = -pi^2/6 - log(-z)^2/2 off the cut
        lhs = dilog(z) + dilog(1.0 / z)
        rhs = -math.pi ** 2 / 6.0 - 0.5 * cmath.log(-z) ** 2
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))

    def test_branch_cut_errors(self):
        for x in (1.0, 1.5, 10.0):
            with pytest.raises(DomainError):
                dilog(x)

    def test_integral_representation(self):
        # Li(z) = -int_0^1 log(1 - z t)/t dt along the straight segment
        z = 0.4 + 1.3j

        def f(t):
            return -cmath.log(1.0 - z * t) / t

        re, _ = quad(lambda t: f(t).real, 0, 1, limit=200, points=[0.0])
        im, _ = quad(lambda t: f(t).imag, 0, 1, limit=200, points=[0.0])
        assert abs(dilog(z) - (re + 1j * im)) < 1e-10


class TestBackIntegral:
    @pytest.mark.parametrize("rho", [0.3, 0.9, 1.5])
    @pytest.mark.parametrize("theta", [0.2, 1.0])
    def test_circular_log_integral(self, rho, theta):
        # int_theta^{2pi-theta} log|1 - rho e^{it}| dt = 2 Im Li(rho e^{i theta})
        val, err = quad(lambda t: math.log(abs(1.0 - rho * cmath.exp(1j * t))),
                        theta, 2.0 * math.pi - theta, limit=400)
        target = 2.0 * dilog(rho * cmath.exp(1j * theta)).imag
        assert abs(val - target) < 1e-8


class TestBlochWigner:
    @pytest.mark.parametrize("x", [-3.0, -0.2, 0.0, 0.4, 1.0, 2.5])
    def test_vanishes_on_reals(self, x):
        assert bloch_wigner(x) == 0.0

    def test_conjugation_antisymmetry(self):
        z = 0.3 + 0.4j
        assert abs(bloch_wigner(z) + bloch_wigner(z.conjugate())) < 1e-15
        assert bloch_wigner(z) != 0.0

    def test_sixfold_identities(self):
        rng = np.random.default_rng(7)
        zs = rng.uniform(-2, 2, size=1000) + 1j * rng.uniform(1e-3, 2, size=1000)
        for z in zs:
            z = complex(z)
            d = bloch_wigner(z)
            assert abs(bloch_wigner(1 - 1 / z) - d) < 1e-10
            assert abs(bloch_wigner(1 / (1 - z)) - d) < 1e-10
            assert abs(bloch_wigner(1 / z) + d) < 1e-10
            assert abs(bloch_wigner(1 - z) + d) < 1e-10
            assert abs(bloch_wigner(-z / (1 - z)) + d) < 1e-10

    def test_equilateral_triangle_decomposition(self):
        # D(e^{i pi/3}) = 3 L(pi/3), with L checked against quadrature
        z = cmath.exp(1j * math.pi / 3.0)
        lob = lobachevsky_quadrature_oracle(math.pi / 3.0)
        assert abs(bloch_wigner(z) - 3.0 * lob) < 1e-10

    def test_triangle_decomposition_generic(self):
        z = 0.3 + 0.9j
        ang = triangle_angles(z)
        total = (lobachevsky(ang.alpha) + lobachevsky(ang.beta)
                 + lobachevsky(ang.gamma))
        assert abs(bloch_wigner(z) - total) < 1e-12


class TestLobachevsky:
    def test_zero(self):
        assert lobachevsky(0.0) == 0.0

    def test_half_pi_is_zero(self):
        # the integrand log(2 sin t) is antisymmetric about pi/2 over [0, pi]
        assert abs(lobachevsky(math.pi / 2.0)) < 1e-14
        assert abs(lobachevsky_quadrature_oracle(math.pi / 2.0)) < 1e-10

    def test_maximum_at_pi_over_6(self):
        ref = lobachevsky_quadrature_oracle(math.pi / 6.0)
        assert abs(lobachevsky(math.pi / 6.0) - ref) < 1e-10
        # global maximum of the pi-periodic odd extension
        grid = np.linspace(-4.0, 4.0, 2001)
        vals = [lobachevsky(t) for t in grid]
        assert max(vals) <= lobachevsky(math.pi / 6.0) + 1e-12

    @pytest.mark.parametrize("theta", [0.1, 0.7, 1.2, 2.9])
    def test_quadrature(self, theta):
        assert abs(lobachevsky(theta) - lobachevsky_quadrature_oracle(theta)) < 1e-10

    def test_periodic_odd_extension(self):
        t = 0.43
        assert abs(lobachevsky(t + math.pi) - lobachevsky(t)) < 1e-13
        assert abs(lobachevsky(-t) + lobachevsky(t)) < 1e-13


class TestBFunction:
    def test_zero_on_unit_interval(self):
        for x in (0.0, 0.25, 0.5, 0.99, 1.0):
            assert b_fn(x) == 0.0

    def test_real_axis_closed_forms(self):
        # limits from the upper half plane
        for x, expect in [(-2.0, math.log(3.0)), (3.0, math.log(3.0))]:
            assert abs(b_fn(x) - expect) < 1e-15
            assert abs(b_fn(x + 1e-9j) - expect) < 1e-7

    def test_lower_half_plane_rejected(self):
        with pytest.raises(DomainError):
            b_fn(0.5 - 0.5j)

    def test_inversion_identity(self):
        # B(z) - log|z| = B(1 - 1/z)
        rng = np.random.default_rng(11)
        for _ in range(500):
            z = complex(rng.uniform(-3, 3), rng.uniform(1e-3, 3))
            lhs = b_fn(z) - math.log(abs(z))
            assert abs(lhs - b_fn(1 - 1 / z)) < 1e-10

    def test_two_forms_agree(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            z = complex(rng.uniform(-3, 3), rng.uniform(1e-3, 3))
            assert abs(b_fn(z) - b_fn_triangle(z)) < 1e-10

    def test_value_at_i_against_quadrature(self):
        # Im Li(i) from the circular-average integral with rho = 1, theta = pi/2
        val, _ = quad(lambda t: math.log(abs(1.0 - cmath.exp(1j * t))),
                      math.pi / 2.0, 3.0 * math.pi / 2.0, limit=400)
        im_li = 0.5 * val
        expect = ((math.pi / 2.0) * math.log(abs(1.0 - 1j)) + im_li) / math.pi
        assert abs(b_fn(1j) - expect) < 1e-9

    def test_shift_identity_spec_point(self):
        z = 0.2 + 0.6j
        assert abs((b_fn(z) - math.log(abs(z))) - b_fn(1 - 1 / z)) < 1e-12


class TestBDerivative:
    def test_closed_form_at_i(self):
        z = 1j
        expect = -(math.pi / 2.0 / (1 - z) + cmath.phase(1 - z) / z) / math.pi
        assert abs(b_deriv(z) - expect) < 1e-15

    @pytest.mark.parametrize("z", [0.3 + 0.3j, -0.8 + 1.1j, 1.7 + 0.4j])
    def test_finite_differences(self, z):
        h = 1e-6
        bx = (b_fn(z + h) - b_fn(z - h)) / (2 * h)
        by = (b_fn(z + 1j * h) - b_fn(z - 1j * h)) / (2 * h)
        # the derivative convention is B_x - i B_y (no half)
        fd = bx - 1j * by
        assert abs(b_deriv(z) - fd) < 1e-6

    def test_laplacian(self):
        z = 0.4 + 0.5j
        h = 1e-4
        lap = (b_fn(z + h) + b_fn(z - h) + b_fn(z + 1j * h) + b_fn(z - 1j * h)
               - 4 * b_fn(z)) / h ** 2
        # the formula value is half the coordinate Laplacian
        assert abs(lap - 2.0 * b_laplacian(z)) < 1e-5

    def test_singularities_rejected(self):
        for z in (0.0, 1.0, 0.5 - 1j):
            with pytest.raises(DomainError):
                b_deriv(z)


class TestTriangleDifferential:
    def test_edge_length_differential_along_family(self):
        # along a path of triangles z(t), dB = sum (angle/pi) dlog(side)
        def sides(z):
            return abs(1.0 - z), 1.0, abs(z)  # opposite alpha, beta, gamma

        t0, dt = 0.35, 1e-6
        path = lambda t: complex(0.2 + 0.3 * t, 0.8 + 0.4 * t * t)
        z0, zp, zm = path(t0), path(t0 + dt), path(t0 - dt)
        db_fd = (b_fn(zp) - b_fn(zm)) / (2 * dt)
        ang = triangle_angles(z0)
        ap, bp, cp = sides(zp)
        am, bm, cm = sides(zm)
        a0, b0, c0 = sides(z0)
        rhs = (ang.alpha * (ap - am) / a0 + ang.beta * (bp - bm) / b0
               + ang.gamma * (cp - cm) / c0) / (2 * dt) / math.pi
        assert abs(db_fd - rhs) < 1e-5


class TestAFunction:
    def test_real_on_unit_interval(self):
        assert a_fn(0.3).imag == 0.0

    def test_matches_b_derivative_combination(self):
        # A(z) = pi z (1-z) dB/dz
        for z in (0.4 + 0.7j, -1.2 + 0.5j, 2.1 + 0.9j):
            lhs = a_fn(z)
            rhs = math.pi * z * (1 - z) * b_deriv(z)
            assert abs(lhs - rhs) < 1e-12
