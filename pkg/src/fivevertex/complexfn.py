"""Complex special functions used throughout the package.

The central object is the dilogarithm Li(z) = -int_0^z log(1-t) dt/t on its
principal branch (cut along [1, oo)).  From it we build

* the Bloch-Wigner function  D(z) = arg(1-z) log|z| + Im Li(z), a continuous,
  single-valued variant of Im Li;
* the Lobachevsky function   L(t) = -int_0^t log(2 sin u) du;
* the angle-weighted function

      B(z) = (arg z * log|1-z| + Im Li(z)) / pi,

  defined on the closed upper half plane, which carries all thermodynamic
  content of the model (free energies and surface tensions are finite
  combinations of B values);
* A(z) = -z arg z - (1-z) arg(1-z), the coefficient field of the first-order
  PDE satisfied by the macroscopic coordinate maps.

Everything here is pure, scalar, double precision, and reentrant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError

_PI2_6 = math.pi * math.pi / 6.0

# Bernoulli numbers B_0, B_1, B_2, ... (B_1 = -1/2), enough for the log-series
# of Li_2 to reach double precision for |log(1-z)| <= 1.6.
_BERNOULLI = [
    1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0,
    -1.0 / 30.0, 0.0, 5.0 / 66.0, 0.0, -691.0 / 2730.0, 0.0, 7.0 / 6.0, 0.0,
    -3617.0 / 510.0, 0.0, 43867.0 / 798.0, 0.0, -174611.0 / 330.0, 0.0,
    854513.0 / 138.0, 0.0, -236364091.0 / 2730.0, 0.0, 8553103.0 / 6.0, 0.0,
    -23749461029.0 / 870.0, 0.0, 8615841276005.0 / 14322.0, 0.0,
]


def _li2_series(z: complex) -> complex:
    """Power series sum z^k / k^2; accurate for |z| <= 0.5."""
    term = z
    acc = z
    k = 1
    while True:
        k += 1
        term *= z
        inc = term / (k * k)
        acc += inc
        if abs(inc) <= 1e-18 * (abs(acc) + 1e-30) or k > 120:
            return acc


def _li2_log_series(z: complex) -> complex:
    """Expansion in w = -log(1-z); converges for |w| < 2*pi, used near |z| = 1."""
    w = -cmath.log(1.0 - z)
    acc = 0.0 + 0.0j
    wp = w  # w^(k+1) running power
    fact = 1.0
    for k, b in enumerate(_BERNOULLI):
        kk = k + 1
        fact *= kk
        if b != 0.0 or k <= 1:
            acc += b * wp / fact
        wp *= w
    return acc


def dilog(z: complex) -> complex:
    """Principal-branch dilogarithm, cut along [1, oo).

    Relative accuracy ~1e-15 for |z| <= 0.99 and ~1e-13 elsewhere off the cut.
    Raises DomainError on the closed cut.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real >= 1.0:
        raise DomainError(f"dilog branch cut: z = {z}")
    az = abs(z)
    if az <= 0.5:
        return _li2_series(z)
    if az >= 2.0:
        # inversion: Li(z) = -Li(1/z) - pi^2/6 - log(-z)^2 / 2
        lg = cmath.log(-z)
        return -dilog(1.0 / z) - _PI2_6 - 0.5 * lg * lg
    if abs(1.0 - z) <= 0.5:
        # reflection: Li(z) = pi^2/6 - log(z) log(1-z) - Li(1-z)
        return _PI2_6 - cmath.log(z) * cmath.log(1.0 - z) - _li2_series(1.0 - z)
    return _li2_log_series(z)


def dilog_im_above_cut(x: float) -> float:
    """Im Li(x + i0) for real x > 1 (boundary value from the upper half plane)."""
    if x <= 1.0:
        raise DomainError("defined for x > 1 only")
    return math.pi * math.log(x)


def bloch_wigner(z: complex) -> float:
    """Bloch-Wigner function D(z) = arg(1-z) log|z| + Im Li(z).

    Continuous on all of C, zero on the real axis, odd under conjugation.
    """
    z = complex(z)
    if z.imag == 0.0:
        return 0.0
    return cmath.phase(1.0 - z) * math.log(abs(z)) + dilog(z).imag


def lobachevsky(theta: float) -> float:
    """L(theta) = -int_0^theta log(2 sin t) dt, extended pi-periodically (odd)."""
    m = round(theta / math.pi)
    t = theta - m * math.pi  # in [-pi/2, pi/2]
    if abs(t) < 1e-300:
        return 0.0
    return 0.5 * dilog(cmath.exp(2j * t)).imag


@dataclass(frozen=True)
class TriangleAngles:
    """Angles of the triangle with vertices 0, 1, z (z in the upper half plane).

    alpha at 0, beta at z, gamma at 1; alpha + beta + gamma = pi.
    """
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        s = self.alpha + self.beta + self.gamma
        if abs(s - math.pi) > 1e-12:
            raise DomainError(f"angle sum {s} != pi")
        for a in (self.alpha, self.beta, self.gamma):
            if not (-1e-15 <= a <= math.pi + 1e-15):
                raise DomainError(f"angle {a} outside [0, pi]")


def triangle_angles(z: complex) -> TriangleAngles:
    """Angles of the 0, 1, z triangle: arg z, arg(1 - 1/z), arg(1/(1-z))."""
    z = complex(z)
    if z.imag <= 0.0:
        raise DomainError("z must be in the open upper half plane")
    alpha = cmath.phase(z)
    beta = cmath.phase(1.0 - 1.0 / z)
    gamma = cmath.phase(1.0 / (1.0 - z))
    return TriangleAngles(alpha, beta, gamma)


def b_fn(z: complex) -> float:
    """B(z) = (arg z * log|1-z| + Im Li(z)) / pi on the closed upper half plane.

    Real-axis values are the limits from above: 0 on [0, 1], log(1-x) for
    x < 0, log(x) for x > 1.  Raises DomainError for Im z < 0 (callers
    conjugate explicitly and use B(conj z) = -B(z)).
    """
    z = complex(z)
    if z.imag < 0.0:
        raise DomainError(f"b_fn needs Im z >= 0, got {z}")
    if z.imag == 0.0:
        x = z.real
        if 0.0 <= x <= 1.0:
            return 0.0
        if x < 0.0:
            return math.log1p(-x)
        return math.log(x)
    return (cmath.phase(z) * math.log(abs(1.0 - z)) + dilog(z).imag) / math.pi


def b_fn_triangle(z: complex) -> float:
    """B(z) via the geometric form (D(z) + sum angle * log(opposite side)) / pi.

    Sides opposite (alpha, beta, gamma) have lengths |1-z|, 1, |z|.  Agrees
    with b_fn to ~1e-13; kept as an independent formula.
    """
    ang = triangle_angles(z)
    z = complex(z)
    s = (ang.alpha * math.log(abs(1.0 - z))
         + ang.gamma * math.log(abs(z)))  # beta pairs with the unit side
    return (bloch_wigner(z) + s) / math.pi


def b_deriv(z: complex) -> complex:
    """dB/dz = -(arg z / (1-z) + arg(1-z) / z) / pi.

    Convention: dB/dz means B_x - i B_y (no factor 1/2), matching the
    combination in which B enters the coordinate-map PDE.
    """
    z = complex(z)
    if z.imag <= 0.0:
        raise DomainError("b_deriv needs Im z > 0")
    if z == 0.0 or z == 1.0:
        raise DomainError("b_deriv singular at z in {0, 1}")
    return -(cmath.phase(z) / (1.0 - z) + cmath.phase(1.0 - z) / z) / math.pi


def b_laplacian(z: complex) -> float:
    """B_{z zbar}(z) = Im z / (pi |z|^2 |1-z|^2).

    Equals half the coordinate Laplacian of b_fn (same half-free derivative
    convention as b_deriv on the z side only).
    """
    z = complex(z)
    return z.imag / (math.pi * abs(z) ** 2 * abs(1.0 - z) ** 2)


def a_fn(z: complex) -> complex:
    """A(z) = -z arg z - (1-z) arg(1-z); piecewise analytic, real on (0, 1)."""
    z = complex(z)
    return -z * cmath.phase(z) - (1.0 - z) * cmath.phase(1.0 - z)
