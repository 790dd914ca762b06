"""Explicit macroscopic height surfaces and their arctic boundaries.

A limit shape is parameterized by a point u in the upper half plane.  Boundary
data enters through one real-analytic function g; define

    F(u) = int r^2 g(u) / ((1-u)(u-r^2)) du        (an antiderivative)

and k(u) = Im g(u) / Im u.  The plane coordinates and height are then, with
w = (1 - conj u)/(1 - r^2), z = (1 - r^2/conj u)/(1 - r^2), rho = |u|,
theta = -arg(z/(1-z)) and A(z) = -z arg z - (1-z) arg(1-z):

    x = -[Im F(u) + Re(-F'(u)(1-u)(u-r^2) theta/(1-r^2) + A(z) rho^2 k(u))]
        / (r^2 A(w) - rho^2 A(z)),
    y = (rho^2 / r^2) (x - k(u)),
    H = (-g(conj u) + (conj u - r^2) x + r^2 (1/conj u - 1) y) / (1 - r^2).

The denominator r^2 A(w) - rho^2 A(z) is real, and it is minus the potential
whose u-derivative is the numerator's A(z)-coefficient, which is what makes
the first-order PDE integrable in closed form.

As u approaches the real axis the map degenerates onto a piecewise-analytic
arctic boundary with four pieces (split by the poles and 0); each piece is an
explicit rational expression in the derivatives of F restricted to the real
axis, plus one per-facet constant fixed by the declared facet height.

Supported boundary data: g = 0 (closed forms in both regimes), the quadratic
g(u) = (1-u)(u-r^2)/r^2 whose antiderivative is F(u) = u, the boxed-plane-
partition g (square-root expression, r > 1/3), and user-supplied evaluators.
For r > 1 the interior map is implemented only for g = 0; the arctic-boundary
formulas cover both regimes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .bethe import ModelParams
from .complexfn import a_fn
from .errors import DomainError, RangeError, UnsupportedRegimeError

POLE_CLEARANCE = 1e-6
DEFAULT_MIN_IM = 1e-4


@dataclass
class BoundaryFunction:
    """Real-analytic boundary data g with derivatives and optional closed forms."""
    kind: str
    g: Callable[[complex], complex]
    dg: Callable[[complex], complex]
    d2g: Callable[[complex], complex] | None = None
    d3g: Callable[[complex], complex] | None = None
    real_analytic: bool = True
    antiderivative: Callable[[complex], complex] | None = None  # closed-form F
    cut_height: float | None = None  # branch-cut ray height (bpp kind)

    def g_conj(self, u: complex) -> complex:
        """g(conj u); uses the reflection principle when g is real analytic."""
        if self.real_analytic:
            return complex(self.g(u)).conjugate()
        return complex(self.g(u.conjugate()))


@dataclass(frozen=True)
class FacetHeights:
    """Additive height constants on the facets adjoining each boundary piece.

    The facet heights are H = c1 (constant facet), H = y + c2, H = x + c3
    (r < 1); for r > 1 the four pieces carry c1..c4 analogously.
    """
    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0
    c4: float = 0.0


@dataclass
class LimitShapeSample:
    u: complex
    x: float
    y: float
    H: float


@dataclass
class BoundaryPiece:
    name: str
    interval: tuple[float, float]
    p: np.ndarray
    x: np.ndarray
    y: np.ndarray


@dataclass
class ArcticCurve:
    regime: str                      # "r<1" or "r>1"
    pieces: list[BoundaryPiece]
    facet_heights: FacetHeights


# ---------------------------------------------------------------------------
# boundary-data constructors
# ---------------------------------------------------------------------------

def zero_boundary() -> BoundaryFunction:
    z = lambda u: 0.0 + 0.0j
    return BoundaryFunction(kind="zero", g=z, dg=z, d2g=z, d3g=z,
                            antiderivative=lambda u: 0.0 + 0.0j)


def quadratic_boundary(params: ModelParams) -> BoundaryFunction:
    """g(u) = (1-u)(u-r^2)/r^2, for which F(u) = u exactly."""
    r2 = params.r ** 2
    return BoundaryFunction(
        kind="quadratic",
        g=lambda u: (1.0 - u) * (u - r2) / r2,
        dg=lambda u: (1.0 + r2 - 2.0 * u) / r2,
        d2g=lambda u: -2.0 / r2 + 0.0j,
        d3g=lambda u: 0.0 + 0.0j,
        antiderivative=lambda u: complex(u),
    )


def bpp_coefficient(r: float) -> float:
    """Linear coefficient of the quadratic under the square root."""
    return (-3.0 + 2.0 * r - 3.0 * r * r) / 4.0


def bpp_branch_points(r: float) -> tuple[complex, complex]:
    """Roots of u^2 + bpp_coefficient(r) u + r^2 (conjugate pair for 1/3<r<3)."""
    b = bpp_coefficient(r)
    disc = b * b - 4.0 * r * r
    sq = cmath.sqrt(complex(disc))
    return (-b + sq) / 2.0, (-b - sq) / 2.0


def bpp_boundary(params: ModelParams) -> BoundaryFunction:
    """Boxed-plane-partition boundary data g(u) = (1 - r/u) sqrt(q(u)).

    The square root is the branch real and positive for large real u > 0,
    analytic off two horizontal rays running left from the branch points;
    it is real on the real axis wherever q >= 0.  Valid for r > 1/3 (at
    r = 1/3 the repulsive region collapses to a segment).
    """
    r = params.r
    if r <= 1.0 / 3.0:
        raise RangeError(f"boxed-plane-partition data degenerate for r <= 1/3 (r={r})")
    b = bpp_coefficient(r)
    up, um = bpp_branch_points(r)

    def sq(u: complex) -> complex:
        return cmath.sqrt(u - up) * cmath.sqrt(u - um)

    def q(u: complex) -> complex:
        return u * u + b * u + r * r

    def g(u: complex) -> complex:
        return (1.0 - r / u) * sq(u)

    def dg(u: complex) -> complex:
        s = sq(u)
        return (r / (u * u)) * s + (1.0 - r / u) * (2.0 * u + b) / (2.0 * s)

    def d2g(u: complex) -> complex:
        s = sq(u)
        qp = 2.0 * u + b
        sp = qp / (2.0 * s)
        spp = 1.0 / s - qp * qp / (4.0 * s ** 3)
        return (-2.0 * r / u ** 3) * s + (2.0 * r / u ** 2) * sp + (1.0 - r / u) * spp

    def d3g(u: complex) -> complex:
        s = sq(u)
        qp = 2.0 * u + b
        sp = qp / (2.0 * s)
        spp = 1.0 / s - qp * qp / (4.0 * s ** 3)
        sppp = -1.5 * qp / s ** 3 + 3.0 * qp ** 3 / (8.0 * s ** 5)
        return ((6.0 * r / u ** 4) * s + (-6.0 * r / u ** 3) * sp
                + (3.0 * r / u ** 2) * spp + (1.0 - r / u) * sppp)

    return BoundaryFunction(kind="bpp", g=g, dg=dg, d2g=d2g, d3g=d3g,
                            cut_height=abs(up.imag) if up.imag != 0.0 else None)


# ---------------------------------------------------------------------------
# the antiderivative F
# ---------------------------------------------------------------------------

def script_f_prime(bf: BoundaryFunction, u: complex, params: ModelParams) -> complex:
    r2 = params.r ** 2
    return r2 * bf.g(u) / ((1.0 - u) * (u - r2))


def default_basepoint(params: ModelParams) -> complex:
    """Real point midway between the poles; F is normalized to vanish there."""
    return complex(0.5 * (1.0 + params.r ** 2), 0.0)


def _quad_segment(f: Callable[[complex], complex], a: complex, b: complex) -> complex:
    d = b - a
    if d == 0.0:
        return 0.0 + 0.0j
    re, _ = quad(lambda t: (f(a + t * d) * d).real, 0.0, 1.0, limit=200)
    im, _ = quad(lambda t: (f(a + t * d) * d).imag, 0.0, 1.0, limit=200)
    return complex(re, im)


def _check_pole_clearance(u: complex, params: ModelParams) -> None:
    r2 = params.r ** 2
    if min(abs(u - 1.0), abs(u - r2)) < POLE_CLEARANCE:
        raise DomainError(f"u = {u} within {POLE_CLEARANCE} of a pole (1 or r^2)")


def script_f(bf: BoundaryFunction, u: complex, params: ModelParams,
             basepoint: complex | None = None) -> complex:
    """Antiderivative F(u) of r^2 g /((1-u)(u-r^2)), vanishing at the basepoint.

    Closed forms are used for the built-in kinds; otherwise an adaptive
    contour quadrature runs along basepoint -> basepoint + i Im u -> u, which
    stays clear of the real-axis poles and (for the bpp kind, whose basepoint
    is to the right of the branch points) of the square root's leftward cut
    rays as long as Im u is not at the exact cut height.
    """
    u = complex(u)
    if bf.antiderivative is not None and basepoint is None:
        return bf.antiderivative(u)
    b0 = default_basepoint(params) if basepoint is None else complex(basepoint)
    if u.imag < 0.0:
        raise DomainError("script_f evaluates in the closed upper half plane")
    _check_pole_clearance(u, params)
    _check_pole_clearance(b0, params)
    if bf.cut_height is not None and u.imag > 0.0:
        if abs(u.imag - bf.cut_height) < 1e-6:
            raise DomainError("path would graze the square-root cut ray")
    if bf.antiderivative is not None:
        return bf.antiderivative(u) - bf.antiderivative(b0)
    f = lambda zz: script_f_prime(bf, zz, params)
    arch = 0.25
    if bf.cut_height is not None:
        arch = min(arch, 0.5 * bf.cut_height)
    if u.imag >= arch:
        # straight up from the basepoint, then across at the target height
        corner = complex(b0.real, u.imag)
        return _quad_segment(f, b0, corner) + _quad_segment(f, corner, u)
    # low targets: arch over the real-axis poles
    p1 = complex(b0.real, arch)
    p2 = complex(u.real, arch)
    return (_quad_segment(f, b0, p1) + _quad_segment(f, p1, p2)
            + _quad_segment(f, p2, u))


def script_f_alt_path(bf: BoundaryFunction, u: complex, params: ModelParams,
                      basepoint: complex | None = None) -> complex:
    """Same integral along a homotopic 3-segment path (path-independence check)."""
    b0 = default_basepoint(params) if basepoint is None else complex(basepoint)
    _check_pole_clearance(u, params)
    h = 0.5 * u.imag if u.imag > 0 else 0.3
    if bf.cut_height is not None:
        h = min(h, 0.5 * bf.cut_height)
    f = lambda zz: script_f_prime(bf, zz, params)
    p1 = complex(b0.real, h)
    p2 = complex(u.real, h)
    return (_quad_segment(f, b0, p1) + _quad_segment(f, p1, p2)
            + _quad_segment(f, p2, u))


def k_of(bf: BoundaryFunction, u: complex) -> float:
    """k(u) = Im g(u) / Im u (equals g'(p) in the real-axis limit)."""
    if u.imag == 0.0:
        return complex(bf.dg(u)).real
    return complex(bf.g(u)).imag / u.imag


# ---------------------------------------------------------------------------
# interior map
# ---------------------------------------------------------------------------

def _wz_small_r(u: complex, r2: float) -> tuple[complex, complex]:
    ub = u.conjugate()
    return (1.0 - ub) / (1.0 - r2), (1.0 - r2 / ub) / (1.0 - r2)


def _wz_big_r(u: complex, r2: float) -> tuple[complex, complex]:
    return (u - 1.0) / (r2 - 1.0), (r2 / u - 1.0) / (r2 - 1.0)


def interior_denominator(u: complex, params: ModelParams) -> complex:
    """r^2 A(w) - rho^2 A(z) (r < 1) or its r > 1 analog; real up to roundoff."""
    r2 = params.r ** 2
    rho2 = abs(u) ** 2
    if params.big_r:
        w, z = _wz_big_r(u, r2)
        return r2 * (a_fn(w) + 2.0 * w - 1.0) - rho2 * (a_fn(z) + 1.0 - 2.0 * z)
    w, z = _wz_small_r(u, r2)
    return r2 * a_fn(w) - rho2 * a_fn(z)


def interior_map(bf: BoundaryFunction, u: complex, params: ModelParams,
                 scale: float = 1.0, min_im: float = DEFAULT_MIN_IM,
                 basepoint: complex | None = None) -> LimitShapeSample:
    """One sample (x, y, H) of the macroscopic surface at parameter u.

    `scale` is the free real constant of the g = 0 closed forms (boundary
    normalization); it is ignored for general g.  Interior sampling is
    restricted to Im u >= min_im because the denominator degenerates near the
    real axis.
    """
    u = complex(u)
    if u.imag < min_im:
        raise DomainError(f"interior map needs Im u >= {min_im}")
    _check_pole_clearance(u, params)
    r2 = params.r ** 2
    rho2 = abs(u) ** 2
    den = interior_denominator(u, params)
    if abs(den.imag) > 1e-8 * max(1.0, abs(den)):
        raise DomainError(f"denominator unexpectedly complex at u={u}: {den}")

    if bf.kind == "zero":
        x = scale / den.real
        y = rho2 / r2 * x
        if params.big_r:
            w, z = _wz_big_r(u, r2)
        else:
            w, z = _wz_small_r(u, r2)
        H = -((w - 1.0) * x + (z - 1.0) * y).real
        return LimitShapeSample(u=u, x=x, y=y, H=H)

    if params.big_r:
        raise UnsupportedRegimeError(
            "interior map for general boundary data is available for r < 1 only")

    w, z = _wz_small_r(u, r2)
    theta = -cmath.phase(z / (1.0 - z))
    Az = a_fn(z)
    F = script_f(bf, u, params, basepoint)
    Fp = script_f_prime(bf, u, params)
    k = k_of(bf, u)
    num = F.imag + (-Fp * (1.0 - u) * (u - r2) * theta / (1.0 - r2)
                    + Az * rho2 * k).real
    x = -num / den.real
    y = rho2 / r2 * (x - k)
    ub = u.conjugate()
    Hc = (-bf.g_conj(u) + (ub - r2) * x + r2 * (1.0 / ub - 1.0) * y) / (1.0 - r2)
    if abs(Hc.imag) > 1e-8 * max(1.0, abs(Hc)):
        raise DomainError(f"height has stray imaginary part {Hc.imag} at u={u}")
    return LimitShapeSample(u=u, x=x, y=y, H=Hc.real)


# ---------------------------------------------------------------------------
# arctic boundary
# ---------------------------------------------------------------------------

def _f_derivatives(bf: BoundaryFunction, p: float, params: ModelParams,
                   need_third: bool) -> tuple[float, float, float]:
    """(F_p, F_pp, F_ppp) on the real axis, from g and its derivatives."""
    r2 = params.r ** 2
    d1 = (1.0 - p) * (p - r2)
    d1p = 1.0 + r2 - 2.0 * p
    g0 = complex(bf.g(complex(p)))
    g1 = complex(bf.dg(complex(p)))
    if abs(g0.imag) > 1e-9 * max(1.0, abs(g0)):
        raise DomainError(f"g not real at p={p} (branch region)")
    fp = r2 * g0.real / d1
    fpp = r2 * (g1.real / d1 - g0.real * d1p / d1 ** 2)
    fppp = 0.0
    if need_third:
        if bf.d2g is None:
            raise DomainError("third derivative requested but d2g not supplied")
        g2 = complex(bf.d2g(complex(p)))
        fppp = r2 * (g2.real / d1 - 2.0 * g1.real * d1p / d1 ** 2
                     + g0.real * (2.0 * d1p ** 2 / d1 ** 3 + 2.0 / d1 ** 2))
    return fp, fpp, fppp


def boundary_k(bf: BoundaryFunction, p: float, params: ModelParams) -> float:
    """k on the real axis: (F_p (1 + r^2 - 2p) + F_pp (p - r^2)(1 - p)) / r^2."""
    r2 = params.r ** 2
    fp, fpp, _ = _f_derivatives(bf, p, params, need_third=False)
    return (fp * (1.0 + r2 - 2.0 * p) + fpp * (p - r2) * (1.0 - p)) / r2


def _piece_x_small_r(name: str, p: float, fp: float, fpp: float, fppp: float,
                     r2: float, fh: FacetHeights) -> float:
    pi = math.pi
    if name == "left":          # p < 0, constant facet H = c1
        D = p * p - 2.0 * p + r2
        return (fp * (r2 - 2.0 * p) * (1.0 - p) ** 2 / (r2 * D)
                + fpp * p * (r2 - p) * (1.0 - p) ** 2 / (r2 * D)
                - fh.c1 * (1.0 - r2) / (pi * r2 * D))
    if name == "inner":         # 0 < p < r^2, facet H = y + c2
        return (fp * (1.0 - 2.0 * p) / r2 + fpp * p * (1.0 - p) / r2
                - fh.c2 * (1.0 - r2) / (pi * (p - r2) ** 2))
    if name == "middle":        # r^2 < p < 1
        return (fp * (1.0 + r2 - 3.0 * p) / r2
                + fpp * (-r2 + 2.0 * p + 2.0 * r2 * p - 3.0 * p * p) / r2
                + fppp * (1.0 - p) * (p - r2) * p / (2.0 * r2))
    if name == "right":         # p > 1, facet H = x + c3
        return (fp * (r2 - 2.0 * p) / r2 + fpp * p * (r2 - p) / r2
                - fh.c3 * (1.0 - r2) / (pi * r2 * (p - 1.0) ** 2))
    raise ValueError(name)


def _piece_x_big_r(name: str, p: float, fp: float, fpp: float,
                   r2: float, fh: FacetHeights) -> float:
    pi = math.pi
    if name == "left":          # p < 0
        D = p * p - 2.0 * p + r2
        return (fp * (r2 - 2.0 * p) * (1.0 - p) ** 2 / (r2 * D)
                + fpp * p * (r2 - p) * (1.0 - p) ** 2 / (r2 * D)
                - fh.c1 * (1.0 - r2) / (pi * r2 * D))
    if name == "inner":         # 0 < p < 1
        return (fp * (1.0 - 2.0 * p) / r2 + fpp * p * (1.0 - p) / r2
                - fh.c2 * (1.0 - r2) / (pi * (p - r2) ** 2))
    if name == "middle":        # 1 < p < r^2
        D2 = p * p * r2 + p * p - 4.0 * p * r2 + r2 * r2 + r2
        num_fp = (r2 * r2 * p * p - 4.0 * r2 * r2 * p + 2.0 * r2 * r2
                  - 2.0 * r2 * p ** 3 + 8.0 * r2 * p * p - 4.0 * r2 * p
                  - 2.0 * p ** 3 + p * p)
        return (fp * num_fp / (r2 * D2)
                + fpp * (p - 1.0) * p * (r2 - p) * (p * r2 + p - 2.0 * r2) / (r2 * D2)
                + 2.0 * fh.c3 * (r2 - 1.0) / (pi * D2))
    if name == "right":         # p > r^2
        return (fp * (r2 - 2.0 * p) / r2 + fpp * p * (r2 - p) / r2
                - fh.c4 * (1.0 - r2) / (pi * r2 * (p - 1.0) ** 2))
    raise ValueError(name)


def piece_intervals(params: ModelParams,
                    span: float = 3.0) -> list[tuple[str, float, float]]:
    """The four real-axis intervals, ordered left to right."""
    r2 = params.r ** 2
    if params.big_r:
        return [("left", -span, 0.0), ("inner", 0.0, 1.0),
                ("middle", 1.0, r2), ("right", r2, r2 + span)]
    return [("left", -span, 0.0), ("inner", 0.0, r2),
            ("middle", r2, 1.0), ("right", 1.0, 1.0 + span)]


def boundary_point(bf: BoundaryFunction, piece: str, p: float,
                   params: ModelParams,
                   facet_heights: FacetHeights = FacetHeights()) -> tuple[float, float]:
    """(x, y) on the named piece at real parameter p."""
    r2 = params.r ** 2
    singular = (0.0, 1.0, r2)
    if min(abs(p - sp) for sp in singular) < POLE_CLEARANCE:
        raise DomainError(f"p = {p} too close to a piece endpoint")
    need_third = (not params.big_r) and piece == "middle"
    fp, fpp, fppp = _f_derivatives(bf, p, params, need_third)
    if params.big_r:
        x = _piece_x_big_r(piece, p, fp, fpp, r2, facet_heights)
    else:
        x = _piece_x_small_r(piece, p, fp, fpp, fppp, r2, facet_heights)
    k = (fp * (1.0 + r2 - 2.0 * p) + fpp * (p - r2) * (1.0 - p)) / r2
    y = p * p / r2 * (x - k)
    return x, y


def arctic_boundary(bf: BoundaryFunction, params: ModelParams,
                    p_grid: dict[str, np.ndarray] | None = None,
                    facet_heights: FacetHeights | None = None,
                    samples_per_piece: int = 200,
                    span: float = 3.0) -> ArcticCurve:
    """Sample the four analytic boundary pieces.

    `p_grid` optionally maps piece names to explicit p arrays; otherwise each
    open interval is sampled uniformly away from its endpoints.  Points where
    g is not real (square-root branch regions) are skipped.  When no facet
    heights are declared, boundary data whose antiderivative jumps across the
    real-axis poles gets the residue-determined constants (without them the
    piece expressions diverge at the pole-adjacent endpoints).
    """
    if not bf.real_analytic:
        raise DomainError("arctic boundary requires real-analytic boundary data")
    if facet_heights is None:
        facet_heights = (facet_heights_from_residues(bf, params)
                         if bf.kind == "bpp" else FacetHeights())
    pieces = []
    for name, lo, hi in piece_intervals(params, span):
        if p_grid is not None and name in p_grid:
            ps = np.asarray(p_grid[name], dtype=float)
        else:
            pad = max(2e-3 * (hi - lo), 2e-6)
            ps = np.linspace(lo + pad, hi - pad, samples_per_piece)
        xs, ys, kept = [], [], []
        for p in ps:
            try:
                x, y = boundary_point(bf, name, float(p), params, facet_heights)
            except DomainError:
                continue
            if math.isfinite(x) and math.isfinite(y):
                kept.append(p)
                xs.append(x)
                ys.append(y)
        pieces.append(BoundaryPiece(name=name, interval=(lo, hi),
                                    p=np.array(kept), x=np.array(xs),
                                    y=np.array(ys)))
    regime = "r>1" if params.big_r else "r<1"
    return ArcticCurve(regime=regime, pieces=pieces, facet_heights=facet_heights)


# ---------------------------------------------------------------------------
# boxed-plane-partition specifics
# ---------------------------------------------------------------------------

def facet_heights_from_residues(bf: BoundaryFunction,
                                params: ModelParams) -> FacetHeights:
    """Facet constants c_i = -Im F on each real segment, from pole residues.

    F is normalized real on the basepoint segment between the two integrand
    poles; crossing a real pole from right to left through the upper half
    plane shifts Im F by pi times the residue.  Boundary data with g(0) != 0
    contributes additional jumps at 0 (the bpp g has a simple pole there).
    """
    r2 = params.r ** 2
    eps = 1e-7

    def res_at(c: float) -> float:
        # residue of r^2 g / ((1-u)(u-r^2)) at a simple pole c in {0, r^2, 1}
        if c == 0.0:
            val = complex(bf.g(complex(eps))) * eps  # u g(u) at u -> 0
            return (r2 * val / ((1.0 - 0.0) * (0.0 - r2))).real
        if c == r2:
            return (r2 * complex(bf.g(complex(r2))) / (1.0 - r2)).real
        return (-r2 * complex(bf.g(complex(1.0))) / (1.0 - r2)).real

    pole0 = abs(complex(bf.g(complex(eps)))) * eps > 1e-4  # g ~ const/u?
    r0 = res_at(0.0) if pole0 else 0.0
    rr2 = res_at(r2)
    r1 = res_at(1.0)
    pi = math.pi
    if params.big_r:
        # segments left to right: (-inf,0), (0,1), (1,r^2)*, (r^2,inf)
        return FacetHeights(c1=-pi * (r0 + r1), c2=-pi * r1, c3=0.0,
                            c4=pi * rr2)
    # segments: (-inf,0), (0,r^2), (r^2,1)*, (1,inf)
    return FacetHeights(c1=-pi * (r0 + rr2), c2=-pi * rr2, c3=pi * r1, c4=0.0)

def bpp_middle_gap(r: float) -> tuple[float, float] | None:
    """For r > 3: the sub-interval of the middle piece where g turns complex."""
    b = bpp_coefficient(r)
    disc = b * b - 4.0 * r * r
    if disc <= 0.0:
        return None
    sq = math.sqrt(disc)
    return (-b - sq) / 2.0, (-b + sq) / 2.0


def bpp_interior_components(r: float, samples: int = 2000) -> int:
    """Number of interior arctic components for the r > 1 boxed plane partition.

    Counts the maximal sub-intervals of the middle piece (1, r^2) on which the
    boundary parameterization stays real; the square root turning imaginary
    splits the single component in two.
    """
    if r <= 1.0:
        raise RangeError("interior-component count applies to r > 1")
    params = ModelParams(r)
    bf = bpp_boundary(params)
    lo, hi = 1.0, r * r
    pad = 1e-4 * (hi - lo)
    ps = np.linspace(lo + pad, hi - pad, samples)
    ok = np.zeros(len(ps), dtype=bool)
    for i, p in enumerate(ps):
        g0 = complex(bf.g(complex(p)))
        ok[i] = abs(g0.imag) <= 1e-9 * max(1.0, abs(g0))
    # count runs of ok
    runs = 0
    prev = False
    for flag in ok:
        if flag and not prev:
            runs += 1
        prev = flag
    return runs
