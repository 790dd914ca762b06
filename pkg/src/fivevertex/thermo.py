"""Asymptotic thermodynamics: free energies, surface tension, Legendre duality.

All quantities reduce to finite combinations of the function B from
`fivevertex.complexfn` evaluated at points determined by simple plane
geometry:

* Fixing the path density s picks a curve of triangles 0, 1, w in the upper
  half plane (angle ratios at 0 and 1 prescribed by s); the field Y picks a
  point w0 on that curve.  The microcanonical free energy F_m(s, Y) is then
  explicit in B at u0 and 1 - r^2/u0, where u0 is an affine image of w0.
* Fixing a slope (s, t) picks a unique u0 in the upper half plane (three
  prescribed angle ratios); the surface tension is the Legendre transform
  sigma(s, t) = sup_Y (t Y - F_m(s, Y)) evaluated in closed form at u0.

Sign conventions.  F(X, Y) is the convex growth rate of the partition
function, and sigma is its convex conjugate,

    sigma(s, t) = max_{X, Y} { s X + t Y - F(X, Y) },

equivalently -sigma(s, t) = min_{X, Y} { F(X, Y) - s X - t Y }.  With this
orientation sigma is convex, vanishes on the coordinate edges of the slope
triangle, and is negative in the interior.

For r < 1 the strictly convex domain of sigma is the region bounded by the
axes and the hyperbola ((1-r^2)/r^2) s t + s + t = 1; outside it sigma is the
affine function (1 - s - t) log(1 - r^2), which glues C^1 across the
hyperbola (the gradients (X, Y) both equal -log(1 - r^2) there), i.e. the
lower convex envelope completion.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize, minimize_scalar

from .bethe import ModelParams, y_upper_bound_small_r
from .complexfn import b_fn
from .errors import (
    InfeasibleSlopeError,
    NonconvergenceError,
    RangeError,
)

EDGE_TOL = 1e-12


@dataclass(frozen=True)
class SlopePoint:
    """Vertical/horizontal edge densities; lives in the closed triangle."""
    s: float
    t: float

    def __post_init__(self) -> None:
        if self.s < -EDGE_TOL or self.t < -EDGE_TOL or self.s + self.t > 1.0 + EDGE_TOL:
            raise InfeasibleSlopeError(f"({self.s}, {self.t}) outside the slope triangle")

    def swapped(self) -> "SlopePoint":
        return SlopePoint(self.t, self.s)


@dataclass
class TiltSolve:
    """Geometry attached to one interior slope: u0 and its derived points."""
    u0: complex
    w0: complex
    z0: complex
    theta: float
    phi: float
    rho: float


@dataclass
class FreeEnergyResult:
    value: float
    s_star: float


def _b_upper(z: complex) -> float:
    """B on the closed upper half plane, conjugating if slightly below axis."""
    if z.imag < 0.0:
        if z.imag < -1e-9:
            raise NonconvergenceError(f"expected upper-half-plane point, got {z}")
        z = complex(z.real, 0.0)
    return b_fn(z)


# ---------------------------------------------------------------------------
# w0 from (s, Y): 1D monotone solve along the angle-ratio curve
# ---------------------------------------------------------------------------

def _w_on_curve_small_r(s: float, theta: float) -> complex:
    """Triangle with angles s*theta at 0 and (1-s)*theta at 1 (law of sines)."""
    return cmath.exp(1j * s * theta) * math.sin((1.0 - s) * theta) / math.sin(theta)


def _w_on_curve_big_r(s: float, theta: float) -> complex:
    """Triangle with *exterior* angle ratio: angles pi - s*theta and pi - (1-s)*theta."""
    t1 = math.pi - s * theta
    t2 = math.pi - (1.0 - s) * theta
    return cmath.exp(1j * t1) * math.sin(t2) / math.sin(t1 + t2)


def solve_w0(s: float, big_y: float, params: ModelParams,
             xtol: float = 4e-16) -> complex:
    """Point w0 in the upper half plane encoding (s, Y) for the current regime.

    r < 1: B(w0) = -Y - log(1-r^2) on the curve arg(w)/arg(1/(1-w)) = s/(1-s);
    r > 1: log|w0 (1-w0)| - B(w0) = -Y - log(r^2-1) on the exterior-angle curve.
    Both target functions are strictly monotone along their curves.
    """
    if not (0.0 < s < 1.0):
        raise RangeError("solve_w0 needs 0 < s < 1")
    r = params.r
    if r < 1.0:
        target = -big_y - math.log(1.0 - r * r)
        if target <= 0.0:
            raise RangeError(
                f"Y = {big_y} >= {y_upper_bound_small_r(r):.6g}: collapsed-oval regime")

        def f(theta: float) -> float:
            return b_fn(_w_on_curve_small_r(s, theta)) - target

        lo, hi = 1e-12, math.pi - 1e-12
        if f(hi) < 0.0:
            raise NonconvergenceError("foliation bracket failed at theta -> pi")
        theta = brentq(f, lo, hi, xtol=xtol, rtol=8.9e-16)
        return _w_on_curve_small_r(s, theta)

    # r > 1: theta ranges over (pi, pi / max(s, 1-s))
    target = -big_y - math.log(r * r - 1.0)

    def g(theta: float) -> float:
        w = _w_on_curve_big_r(s, theta)
        return math.log(abs(w * (1.0 - w))) - b_fn(w) - target

    theta_max = math.pi / max(s, 1.0 - s)
    lo = math.pi + 1e-12
    hi = theta_max - 1e-12
    glo, ghi = g(lo), g(hi)
    if glo < 0.0:
        raise NonconvergenceError("exterior-angle bracket failed at theta -> pi")
    if ghi > 0.0:
        # attainable only for s = 1/2, where the target bottoms out at log(1/4)
        raise RangeError(
            f"Y = {big_y} unreachable on the s = {s} curve (split-oval regime)")
    theta = brentq(g, lo, hi, xtol=xtol, rtol=8.9e-16)
    return _w_on_curve_big_r(s, theta)


def u0_from_w0(w0: complex, params: ModelParams) -> complex:
    if params.big_r:
        return 1.0 + (params.r ** 2 - 1.0) * w0
    return 1.0 - (1.0 - params.r ** 2) * w0.conjugate()


def split_oval_threshold(r: float) -> float:
    """Y above which the s = 1/2 consistency point migrates to the split oval (r > 1)."""
    if r <= 1.0:
        raise RangeError("defined for r > 1")
    return math.log(4.0 / (r * r - 1.0))


# ---------------------------------------------------------------------------
# microcanonical and grand free energy
# ---------------------------------------------------------------------------

def _fm_interior(s: float, big_y: float, params: ModelParams) -> float:
    w0 = solve_w0(s, big_y, params)
    u0 = u0_from_w0(w0, params)
    return ((1.0 - s) * big_y + (1.0 - s) * _b_upper(u0)
            + s * _b_upper(1.0 - params.r ** 2 / u0))


def microcanonical_f(s: float, big_y: float, params: ModelParams) -> float:
    """F_m(s, Y) = lim (1/N) log Lambda - X s at fixed density s = n/N.

    At the endpoints the exact single-block values are returned
    (max(0, Y) at s = 0, 0 at s = 1); for 0 < s < 1 the closed forms are used,
    with the r < 1 collapsed-oval regime giving the linear (1-s) Y and the
    r > 1 half-filling split-oval regime giving Y/2 + log r.
    """
    if not (0.0 <= s <= 1.0):
        raise RangeError("need 0 <= s <= 1")
    if s == 0.0:
        return max(0.0, big_y)
    if s == 1.0:
        return 0.0
    r = params.r
    if r == 1.0:
        raise RangeError("r = 1 not covered by the root asymptotics")
    if r < 1.0:
        if big_y >= y_upper_bound_small_r(r) - 1e-12:
            return (1.0 - s) * big_y
        return _fm_interior(s, big_y, params)
    if s == 0.5 and big_y >= split_oval_threshold(r):
        # On the split oval the selected roots fill the component around the
        # origin; the explicit product evaluation gives Y/2 + log r, which the
        # one-component formula matches continuously at the threshold.
        return 0.5 * big_y + math.log(r)
    return _fm_interior(s, big_y, params)


def free_energy(params: ModelParams) -> FreeEnergyResult:
    """Grand free energy F(X, Y) = max_s { X s + F_m(s, Y) } with its argmax."""
    X, Y, r = params.X, params.Y, params.r
    if r < 1.0 and Y >= y_upper_bound_small_r(r) - 1e-12:
        # F_m is linear in s here, so the max sits at an endpoint
        return FreeEnergyResult(max(X, Y), 1.0 if X >= Y else 0.0)

    def neg(s: float) -> float:
        return -(X * s + microcanonical_f(s, Y, params))

    res = minimize_scalar(neg, bounds=(1e-9, 1.0 - 1e-9), method="bounded",
                          options={"xatol": 1e-11})
    candidates = [(X * 0.0 + max(0.0, Y), 0.0), (X, 1.0),
                  (-res.fun, float(res.x))]
    value, s_star = max(candidates, key=lambda c: c[0])
    return FreeEnergyResult(value, s_star)


# ---------------------------------------------------------------------------
# slope geometry: u0 from (s, t)
# ---------------------------------------------------------------------------

def feasible(st: SlopePoint, params: ModelParams) -> bool:
    """Strict interior of the convexity region of sigma.

    r < 1: below the hyperbola ((1-r^2)/r^2) s t + s + t = 1;
    r > 1: the whole open triangle.
    """
    s, t = st.s, st.t
    if s <= 0.0 or t <= 0.0 or s + t >= 1.0:
        return False
    if params.big_r:
        return True
    r2 = params.r ** 2
    return ((1.0 - r2) / r2) * s * t + s + t - 1.0 < 0.0


def _slope_of_u(u: complex, params: ModelParams) -> tuple[float, float, float, float]:
    """(s, t, theta, phi) induced by a point u in the upper half plane."""
    r2 = params.r ** 2
    if params.big_r:
        w = (u - 1.0) / (r2 - 1.0)
        wstar = (r2 / u.conjugate() - 1.0) / (r2 - 1.0)
        theta = 2.0 * math.pi - cmath.phase(w / (1.0 - w))
        s = (math.pi - cmath.phase(w)) / theta
        theta_t = 2.0 * math.pi - cmath.phase(wstar / (1.0 - wstar))
        t = (math.pi - cmath.phase(wstar)) / theta_t
    else:
        w = (1.0 - u.conjugate()) / (1.0 - r2)
        wstar = (1.0 - r2 / u) / (1.0 - r2)
        theta = cmath.phase(w / (1.0 - w))
        s = cmath.phase(w) / theta
        theta_t = cmath.phase(wstar / (1.0 - wstar))
        t = cmath.phase(wstar) / theta_t
    return s, t, theta, cmath.phase(u)


def solve_tilt(st: SlopePoint, params: ModelParams, tol: float = 1e-12) -> TiltSolve:
    """The unique u0 in the upper half plane whose induced slope is (s, t).

    A coarse scan over (log|u|, arg u) seeds a damped 2D Newton iteration with
    finite-difference Jacobian.
    """
    if not feasible(st, params):
        raise InfeasibleSlopeError(f"({st.s}, {st.t}) not strictly inside the "
                                   f"feasible region at r = {params.r}")
    s0, t0 = st.s, st.t
    r = params.r

    def resid(x: np.ndarray) -> np.ndarray:
        u = cmath.exp(complex(x[0], 0.0)) * cmath.exp(1j * x[1])
        s, t, _, _ = _slope_of_u(u, params)
        return np.array([s - s0, t - t0])

    best, best_err = None, math.inf
    for lr in np.linspace(math.log(r) - 4.0, math.log(r) + 4.0, 33):
        for ph in np.linspace(1e-4, math.pi - 1e-4, 37):
            e = resid(np.array([lr, ph]))
            err = float(e @ e)
            if err < best_err:
                best, best_err = np.array([lr, ph]), err
    x = best
    err_old = best_err
    for _ in range(80):
        e = resid(x)
        err = float(e @ e)
        if err < tol * tol:
            break
        h = 1e-7
        J = np.empty((2, 2))
        for k in range(2):
            dx = np.zeros(2)
            dx[k] = h
            J[:, k] = (resid(x + dx) - resid(x - dx)) / (2.0 * h)
        try:
            step = np.linalg.solve(J, e)
        except np.linalg.LinAlgError as exc:
            raise NonconvergenceError(f"tilt Jacobian singular at {x}") from exc
        lam = 1.0
        for _ in range(40):
            xn = x - lam * step
            if 0.0 < xn[1] < math.pi:
                en = resid(xn)
                if float(en @ en) < err:
                    break
            lam *= 0.5
        else:
            raise NonconvergenceError(f"tilt line search stalled at ({s0}, {t0})")
        x = x - lam * step
        err_old = err
    else:
        raise NonconvergenceError(f"tilt Newton did not converge at ({s0}, {t0})")

    u0 = cmath.exp(complex(x[0], 0.0)) * cmath.exp(1j * x[1])
    r2 = r * r
    if params.big_r:
        w0 = (u0 - 1.0) / (r2 - 1.0)
        z0 = (r2 / u0 - 1.0) / (r2 - 1.0)
        theta = 2.0 * math.pi - cmath.phase(w0 / (1.0 - w0))
    else:
        w0 = (1.0 - u0.conjugate()) / (1.0 - r2)
        z0 = (1.0 - r2 / u0.conjugate()) / (1.0 - r2)
        theta = cmath.phase(w0 / (1.0 - w0))
    return TiltSolve(u0=u0, w0=w0, z0=z0, theta=theta,
                     phi=cmath.phase(u0), rho=abs(u0))


# ---------------------------------------------------------------------------
# surface tension and duality
# ---------------------------------------------------------------------------

def dual_fields(st: SlopePoint, params: ModelParams,
                tilt: TiltSolve | None = None) -> tuple[float, float]:
    """(X, Y) = grad sigma at an interior slope."""
    tilt = tilt or solve_tilt(st, params)
    r2 = params.r ** 2
    w0, zbar = tilt.w0, tilt.z0.conjugate()
    if params.big_r:
        lg = math.log(r2 - 1.0)
        Y = -lg + b_fn(w0) - math.log(abs(w0 * (1.0 - w0)))
        X = -lg + b_fn(zbar) - math.log(abs(zbar * (1.0 - zbar)))
    else:
        lg = math.log(1.0 - r2)
        Y = -lg - b_fn(w0)
        X = -lg - b_fn(zbar)
    return X, Y


def surface_tension(st: SlopePoint, params: ModelParams) -> float:
    """sigma(s, t), the convex conjugate of F; see the module docstring.

    Interior slopes use the closed form at the tilt point; coordinate-edge and
    (for r < 1) envelope-region values use their exact limits.
    """
    s, t = st.s, st.t
    r = params.r
    r2 = r * r
    if min(s, t) <= EDGE_TOL:
        return 0.0
    if params.big_r:
        if s + t >= 1.0 - EDGE_TOL:
            return -2.0 * min(s, t) * math.log(r)
        tilt = solve_tilt(st, params)
        _, Y = dual_fields(st, params, tilt)
        return (-(1.0 - s - t) * Y - (1.0 - s) * _b_upper(tilt.u0)
                - s * _b_upper(1.0 - r2 / tilt.u0))
    if r == 1.0:
        raise RangeError("r = 1 not covered")
    if not feasible(st, params):
        return (1.0 - s - t) * math.log(1.0 - r2)
    tilt = solve_tilt(st, params)
    return ((1.0 - s - t) * (math.log(1.0 - r2) + b_fn(tilt.w0))
            - (1.0 - s) * _b_upper(tilt.u0)
            - s * _b_upper(1.0 - r2 / tilt.u0))


def legendre_dual_value(st: SlopePoint, params: ModelParams,
                        x0: tuple[float, float] | None = None) -> float:
    """max_{X, Y} { s X + t Y - F(X, Y) } by direct 2D maximization.

    Independent of the closed-form surface tension path; used to verify the
    duality -sigma(s, t) = min(F - s X - t Y).
    """
    s, t = st.s, st.t

    def neg(v: np.ndarray) -> float:
        p = ModelParams(params.r, float(v[0]), float(v[1]))
        return -(s * v[0] + t * v[1] - free_energy(p).value)

    start = np.array(x0 if x0 is not None else (0.0, 0.0))
    res = minimize(neg, start, method="Nelder-Mead",
                   options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 4000})
    if not res.success:
        raise NonconvergenceError(f"dual maximization failed at ({s}, {t})")
    return -float(res.fun)
