"""Exact finite-size diagonalization of the five-vertex row transfer matrix.

On a cylinder of circumference N with n occupied vertical edges per row, every
eigenvector of the block T_n comes with n roots w_1..w_n of a polynomial
equation w^(N-n) (1-w)^n = y, all sharing one constant y.  The N solutions of
that equation lie one on each of the N curves

    (N - n) arg w + n arg(1 - w) = (2k + 1) pi,

and |y| pins the position along each curve (level sets of |w|^(N-n) |1-w|^n
are Cassini ovals).  The leading eigenvector takes the n roots of maximal real
part for r < 1 and minimal real part for r > 1; the remaining freedom (which
curves) enumerates the whole spectrum.

The module provides:

* root location along the curves and the component geometry of the ovals;
* the consistency solve pinning y from (r, Y) by monotone bisection of the
  selected-root log-modulus sum;
* the eigenvalue in its two equivalent product forms, plus an overflow-safe
  logarithmic variant for large N;
* a brute-force dense transfer matrix (exact enumeration) used as an oracle;
* a completeness check: all C(N, n) root systems obtained by homotopy
  continuation in r from the free-fermion point r = 1, matched against the
  dense spectrum as a multiset;
* the circle-average identity for log|polynomial| (Mahler-style two-sided sum)
  used repeatedly in the asymptotic arguments.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq, linear_sum_assignment

from .errors import (
    DomainError,
    NonconvergenceError,
    RangeError,
    SizeError,
)

ORACLE_MAX_N = 14
COMPLETENESS_MAX_N = 12


@dataclass(frozen=True)
class ModelParams:
    """Weight parameters: corner weight r and edge fields (X, Y).

    Vertex weights are (1, 0, e^X, e^Y, r e^((X+Y)/2), r e^((X+Y)/2)).
    """
    r: float
    X: float = 0.0
    Y: float = 0.0

    def __post_init__(self) -> None:
        if not self.r > 0.0:
            raise DomainError(f"corner weight must be positive, got r={self.r}")

    @property
    def big_r(self) -> bool:
        return self.r > 1.0


@dataclass
class BetheSolution:
    """Root data of the leading eigenvector of one block T_n.

    The consistency constant is negative and extensive (log|y| = O(N)), so it
    is carried as log_abs_y; `y` itself is -exp(log_abs_y), possibly -inf.
    """
    big_n: int
    n: int
    log_abs_y: float
    roots: np.ndarray          # the n selected roots, conjugate-closed
    lam: float                 # leading eigenvalue (inf if it overflows)
    log_lam: float

    def __post_init__(self) -> None:
        if self.big_n % 2 or self.n % 2:
            raise DomainError("N and n must both be even")

    @property
    def y(self) -> float:
        try:
            return -math.exp(self.log_abs_y)
        except OverflowError:
            return -math.inf


# ---------------------------------------------------------------------------
# roots on curves
# ---------------------------------------------------------------------------

def curve_labels(big_n: int, n: int) -> list[int]:
    """Odd integers m with -n < m < N-n, one per upper-half-plane curve.

    Curves with m < 0 emanate from w = 1, curves with m > 0 from w = 0; all
    escape to infinity with asymptotic direction (m + n pi)/N.  Conjugation
    supplies the other N/2 curves.
    """
    return list(range(-(n - 1), big_n - n, 2))


def component_threshold(big_n: int, n: int) -> float:
    """|y| below which the oval |w|^(N-n) |1-w|^n = |y| has two components."""
    return math.exp(n * math.log(n) + (big_n - n) * math.log(big_n - n)
                    - big_n * math.log(big_n))


def oval_components(big_n: int, n: int, y: float) -> int:
    """1 or 2, split at component_threshold."""
    return 2 if abs(y) < component_threshold(big_n, n) else 1


def _solve_phase(a: int, b: int, m: int, log_abs_y: float,
                 z0: complex | None, lower: bool) -> complex:
    """Damped Newton for a Log z + b Log(1-z) = log|y| + i m pi.

    `lower` selects the half plane of the sought root (no critical points in
    either open half plane, so the iteration is tame from a crude guess).
    """
    target = log_abs_y + 1j * math.pi * m
    tol = 1e-13 * max(1.0, abs(target))
    if z0 is not None:
        z = z0
    elif log_abs_y >= 0.0:
        off = -b if lower else b
        z = cmath.exp((log_abs_y + 1j * math.pi * (m + off)) / (a + b))
    else:
        z = cmath.exp((log_abs_y + 1j * math.pi * m) / a)
    f = None
    for _ in range(120):
        f = a * cmath.log(z) + b * cmath.log(1.0 - z) - target
        if abs(f) < tol:
            return z
        fp = a / z - b / (1.0 - z)
        step = f / fp
        cap = 0.5 * max(abs(z), abs(1.0 - z), 0.05)
        while abs(step) > cap:
            step *= 0.5
        z -= step
    raise NonconvergenceError(
        f"curve solve stalled: a={a} b={b} m={m} log|y|={log_abs_y} |f|={abs(f)}")


def _right_half(z: complex, lower: bool) -> bool:
    return z.imag < 0.0 if lower else z.imag > 0.0


def _solve_phase_checked(a: int, b: int, m: int, log_abs_y: float,
                         z0: complex | None, lower: bool) -> complex:
    """_solve_phase with half-plane verification.

    The phase equation has one root per curve in each half plane; a fresh
    guess at intermediate |y| can slip into the mirror root.  When that
    happens, re-solve by continuation in log|y| from the small-|y| anchor,
    where the near-singularity expansion makes the guess reliable.
    """
    try:
        z = _solve_phase(a, b, m, log_abs_y, z0, lower)
        if _right_half(z, lower):
            return z
    except NonconvergenceError:
        pass
    anchor = min(log_abs_y, -3.0 * a)
    z = _solve_phase(a, b, m, anchor, None, lower)
    if not _right_half(z, lower):
        raise NonconvergenceError(
            f"anchor solve in wrong half plane: a={a} b={b} m={m}")
    nsteps = max(1, int(2.0 * abs(log_abs_y - anchor)) + 1)
    for lk in np.linspace(anchor, log_abs_y, nsteps + 1)[1:]:
        z = _solve_phase(a, b, m, float(lk), z, lower)
        if not _right_half(z, lower):
            raise NonconvergenceError(
                f"continuation left its half plane: a={a} b={b} m={m} log|y|={lk}")
    return z


def _root_aux(big_n: int, n: int, m: int, log_abs_y: float,
              z0: complex | None = None) -> tuple[complex, complex, float]:
    """(w, solver variable z, log|w|) for the root on curve m.

    Curves from w = 1 (m < 0) are solved in the reflected variable z = 1 - w,
    which keeps log|w| = log|1 - z| fully accurate when the root pinches
    exponentially close to 1.
    """
    if m < 0:
        z = _solve_phase_checked(n, big_n - n, m, log_abs_y, z0, lower=True)
        w = 1.0 - z
        logw = 0.5 * math.log1p(-2.0 * z.real + abs(z) ** 2)
        return w, z, logw
    z = _solve_phase_checked(big_n - n, n, m, log_abs_y, z0, lower=False)
    return z, z, math.log(abs(z))


def root_on_curve(big_n: int, n: int, m: int, log_abs_y: float,
                  w0: complex | None = None) -> complex:
    """Solve (N-n) Log w + n Log(1-w) = log|y| + i m pi for the root on curve m."""
    z0 = None
    if w0 is not None:
        z0 = 1.0 - w0 if m < 0 else w0
    return _root_aux(big_n, n, m, log_abs_y, z0)[0]


def cassini_roots(big_n: int, n: int, y: float) -> np.ndarray:
    """All N solutions of w^(N-n) (1-w)^n = y for y < 0, sorted by real part.

    Each root is located by a 1D solve along its phase curve; residuals are
    verified to |p(w) - y| <= 1e-10 |y|.
    """
    if not (0 < n < big_n):
        raise DomainError("need 0 < n < N")
    if not y < 0.0:
        raise DomainError("y must be negative")
    log_abs_y = math.log(-y)
    roots = []
    worst = 0.0
    for m in curve_labels(big_n, n):
        w, z, _ = _root_aux(big_n, n, m, log_abs_y)
        if m < 0:
            logp = n * cmath.log(z) + (big_n - n) * cmath.log(1.0 - z)
        else:
            logp = (big_n - n) * cmath.log(z) + n * cmath.log(1.0 - z)
        worst = max(worst, abs(cmath.exp(logp - log_abs_y - 1j * math.pi * m) - 1.0))
        roots += [w, w.conjugate()]
    if worst > 1e-10:
        raise NonconvergenceError(f"root residual {worst:.2e} exceeds 1e-10")
    return np.array(sorted(roots, key=lambda zz: (zz.real, zz.imag)))


def select_roots(roots: Sequence[complex], n: int, big_r: bool = False,
                 tie_tol: float = 1e-9) -> np.ndarray:
    """The n roots of maximal (r < 1) or minimal (r > 1) real part.

    Raises a tie error when the cut between selected and rejected roots is
    degenerate; the returned set is checked to be conjugation-closed.
    """
    arr = np.array(sorted(roots, key=lambda z: z.real, reverse=not big_r))
    if len(arr) < n + 1:
        raise DomainError("selection needs n < N roots")
    if abs(arr[n - 1].real - arr[n].real) < tie_tol:
        raise RangeError("degenerate selection: real-part tie at the cut")
    sel = arr[:n]
    if np.max(np.abs(np.sort_complex(sel) - np.sort_complex(np.conj(sel)))) > 1e-9:
        raise NonconvergenceError("selected roots not closed under conjugation")
    return sel


def _selected_uhp_labels(big_n: int, n: int, big_r: bool) -> list[int]:
    labels = curve_labels(big_n, n)
    if big_r:
        return sorted(labels, reverse=True)[: n // 2]  # leftmost roots
    return [m for m in labels if m < 0]                # curves from w = 1


def selected_log_product(big_n: int, n: int, log_abs_y: float,
                         big_r: bool = False,
                         warm: dict | None = None) -> float:
    """(1/n) sum log|w_j| over the leading-eigenvector root selection.

    Strictly increasing in |y|; this is the quantity bisected to enforce the
    consistency constraint.
    """
    total = 0.0
    for m in _selected_uhp_labels(big_n, n, big_r):
        z0 = warm.get(m) if warm is not None else None
        _, z, logw = _root_aux(big_n, n, m, log_abs_y, z0)
        if warm is not None:
            warm[m] = z
        total += 2.0 * logw
    return total / n


def consistency_target(params: ModelParams) -> float:
    """Required (1/n) sum log|w_j|, namely -Y - log|1 - r^2|."""
    return -params.Y - math.log(abs(1.0 - params.r ** 2))


def y_upper_bound_small_r(r: float) -> float:
    """Supremum of attainable Y for r < 1: -log(1 - r^2)."""
    return -math.log(1.0 - r * r)


def solve_consistency(big_n: int, n: int, params: ModelParams,
                      xtol: float = 1e-13) -> BetheSolution:
    """Find y < 0 such that the selected roots satisfy the consistency equation.

    The map log|y| -> (1/n) sum log|w_j| is strictly increasing, so a bracketed
    brentq solve is used.  For r < 1 the attainable range is Y < -log(1-r^2);
    outside it a RangeError is raised (that regime is handled by the closed
    forms in `fivevertex.thermo`).
    """
    if big_n % 2 or n % 2 or not (0 < n < big_n):
        raise DomainError("need N, n even with 0 < n < N")
    if params.r == 1.0:
        raise RangeError("r = 1 excluded from the root asymptotics")
    tau = consistency_target(params)
    if not params.big_r and tau <= 0.0:
        raise RangeError(
            f"Y = {params.Y} >= {y_upper_bound_small_r(params.r):.6g}: outside the "
            "attainable range for r < 1")
    warm: dict = {}

    def f(log_abs_y: float) -> float:
        return selected_log_product(big_n, n, log_abs_y, params.big_r, warm) - tau

    lo, hi = -40.0, 40.0
    while f(lo) > 0.0:
        lo *= 2.0
        if lo < -5e4:
            raise NonconvergenceError("consistency bracket failed (low side)")
    while f(hi) < 0.0:
        hi *= 2.0
        if hi > 5e4:
            raise NonconvergenceError("consistency bracket failed (high side)")
    log_abs_y = brentq(f, lo, hi, xtol=xtol, rtol=8.9e-16)
    roots = []
    for m in _selected_uhp_labels(big_n, n, params.big_r):
        w, _, _ = _root_aux(big_n, n, m, log_abs_y, warm.get(m))
        roots += [w, w.conjugate()]
    sol = BetheSolution(big_n=big_n, n=n, log_abs_y=log_abs_y,
                        roots=np.array(roots), lam=math.nan, log_lam=math.nan)
    sol.log_lam = log_eigenvalue(sol, params)
    sol.lam = math.exp(sol.log_lam) if sol.log_lam < 700.0 else math.inf
    return sol


# ---------------------------------------------------------------------------
# eigenvalue forms
# ---------------------------------------------------------------------------

def eigenvalue_product_form(sol: BetheSolution, params: ModelParams) -> float:
    """Direct two-product eigenvalue (overflows for large N Y; exact otherwise)."""
    r, X, Y = params.r, params.X, params.Y
    c = 1.0 - r * r
    w = sol.roots
    p1 = np.prod((1.0 - w) / (1.0 - c * w))
    p2 = np.prod(r * r * w / (1.0 - c * w))
    lam = math.exp(X * sol.n) * c ** sol.n * (p1 + math.exp(Y * sol.big_n) * p2)
    if abs(lam.imag) > 1e-8 * abs(lam):
        raise NonconvergenceError(f"eigenvalue not real: {lam}")
    return float(lam.real)


def log_eigenvalue(sol: BetheSolution, params: ModelParams) -> float:
    """log Lambda via the reduced absolute-value form; safe for N ~ thousands.

    log Lambda = X n + Y (N - n) + log|1 - y r^(-2n) (1-r^2)^N|
                 + sum_j log(r^2 / |1 - (1-r^2) w_j|),
    where the middle term is evaluated as log(1 + e^L) with
    L = log|y| - 2n log r + N log|1-r^2|  (y < 0 and N even make the product
    with y positive).
    """
    r, X, Y = params.r, params.X, params.Y
    N, n = sol.big_n, sol.n
    c = 1.0 - r * r
    L = sol.log_abs_y - 2 * n * math.log(r) + N * math.log(abs(c))
    mid = np.logaddexp(0.0, L)
    tail = float(np.sum(2.0 * math.log(r) - np.log(np.abs(1.0 - c * sol.roots))))
    return X * n + Y * (N - n) + float(mid) + tail


def eigenvalue(sol: BetheSolution, params: ModelParams) -> float:
    """Leading eigenvalue of T_n; the two product forms are cross-checked."""
    lam3 = math.exp(log_eigenvalue(sol, params))
    if abs(params.Y) * sol.big_n < 600.0:
        lam1 = eigenvalue_product_form(sol, params)
        if abs(lam1 - lam3) > 1e-10 * max(abs(lam1), abs(lam3)):
            raise NonconvergenceError(
                f"eigenvalue forms disagree: {lam1} vs {lam3}")
    return lam3


# ---------------------------------------------------------------------------
# dense oracle
# ---------------------------------------------------------------------------

def _states(big_n: int, n: int) -> list[int]:
    return [sum(1 << i for i in c) for c in combinations(range(big_n), n)]


def transfer_matrix_oracle(big_n: int, n: int, params: ModelParams) -> np.ndarray:
    """Dense T_n by exact enumeration of row configurations.

    Entry (x, y) sums the vertex-weight product over all ice-rule-compliant
    horizontal fillings connecting bottom row x to top row y; the crossing
    vertex is forbidden, and the empty row pair has its two-filling sum.
    """
    if big_n > ORACLE_MAX_N:
        raise SizeError(f"dense oracle capped at N <= {ORACLE_MAX_N}")
    if not (0 <= n <= big_n):
        raise DomainError("need 0 <= n <= N")
    r, X, Y = params.r, params.X, params.Y
    a3, a4, a56 = math.exp(X), math.exp(Y), r * math.exp(0.5 * (X + Y))
    states = _states(big_n, n)
    dim = len(states)
    T = np.zeros((dim, dim))
    bits = [[(s >> i) & 1 for i in range(big_n)] for s in states]
    for xi in range(dim):
        xb = bits[xi]
        for yi in range(dim):
            yb = bits[yi]
            tot = 0.0
            for h0 in (0, 1):
                h = h0
                weight = 1.0
                ok = True
                for i in range(big_n):
                    b, t, l = xb[i], yb[i], h
                    rr = t + l - b
                    if rr < 0 or rr > 1:
                        ok = False
                        break
                    if b:
                        if t:
                            if l:      # all four edges: forbidden crossing
                                ok = False
                                break
                            weight *= a3
                        else:          # in from south, out west
                            weight *= a56
                    else:
                        if t:          # in from east, out north
                            weight *= a56
                        elif l:        # straight horizontal
                            weight *= a4
                    h = rr
                if ok and h == h0:
                    tot += weight
            T[xi, yi] = tot
    return T


def oracle_leading(T: np.ndarray, tol: float = 1e-14, maxit: int = 200000) -> float:
    """Leading eigenvalue of a nonnegative matrix by power iteration."""
    if T.shape == (1, 1):
        return float(T[0, 0])
    v = np.full(T.shape[0], 1.0 / math.sqrt(T.shape[0]))
    lam = 0.0
    for _ in range(maxit):
        w = T @ v
        lam_new = float(v @ w)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            raise NonconvergenceError("power iteration hit the zero vector")
        v = w / nw
        if abs(lam_new - lam) <= tol * abs(lam_new):
            # one Rayleigh-quotient polish
            w = T @ v
            return float(v @ w)
        lam = lam_new
    raise NonconvergenceError("power iteration did not converge")


def circulant_block_eigenvalues(big_n: int, params: ModelParams) -> np.ndarray:
    """Closed-form spectrum of the n = 1 block (a circulant matrix)."""
    r, X, Y = params.r, params.X, params.Y
    j = np.arange(big_n)
    om = np.exp(2j * math.pi * j / big_n)
    eY = math.exp(Y)
    lam = math.exp(X) * (1.0 + r * r * eY / (om - eY)
                         + math.exp(Y * big_n) * om * r * r / (eY - om))
    return lam


def verify_record(big_n: int, n: int, params: ModelParams) -> dict:
    """One JSON-ready comparison record: algebraic vs dense leading eigenvalue."""
    sol = solve_consistency(big_n, n, params)
    lam_oracle = oracle_leading(transfer_matrix_oracle(big_n, n, params))
    rel = abs(sol.lam - lam_oracle) / abs(lam_oracle)
    return {
        "N": big_n, "n": n, "r": params.r, "X": params.X, "Y": params.Y,
        "lambda_bethe": sol.lam, "lambda_oracle": lam_oracle, "rel_err": rel,
    }


# ---------------------------------------------------------------------------
# completeness: the full spectrum by continuation from r = 1
# ---------------------------------------------------------------------------

def _free_fermion_roots(big_n: int, subset: Sequence[int]) -> np.ndarray:
    """At r = 1 the unnormalized roots are distinct N-th roots of -1 (n even)."""
    k = np.asarray(subset)
    return np.exp(1j * math.pi * (2 * k + 1) / big_n)


def _bethe_newton_zeta(zeta: np.ndarray, c: float, big_n: int,
                       tol: float = 1e-13, maxit: int = 80) -> tuple[np.ndarray, bool]:
    """Newton for zeta_i^(N-n) (c - zeta_i)^n + prod_j (zeta_j - c)/zeta_j = 0."""
    n = len(zeta)
    for _ in range(maxit):
        P = np.prod((zeta - c) / zeta)
        lead = zeta ** (big_n - n) * (c - zeta) ** n
        F = lead + P
        scale = np.max(np.abs(lead)) + abs(P)
        if np.max(np.abs(F)) < tol * max(scale, 1e-30):
            return zeta, True
        dP = P * (1.0 / (zeta - c) - 1.0 / zeta)
        J = np.tile(dP, (n, 1))
        J[np.diag_indices(n)] += ((big_n - n) * zeta ** (big_n - n - 1) * (c - zeta) ** n
                                  - n * zeta ** (big_n - n) * (c - zeta) ** (n - 1))
        try:
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            return zeta, False
        zeta = zeta - step
    return zeta, False


def bethe_root_system(big_n: int, n: int, params: ModelParams,
                      subset: Sequence[int], steps: int = 48) -> np.ndarray | None:
    """Roots zeta for one curve subset, continued in r from the r = 1 solution.

    Returns None when the continuation fails (reported, not fatal).
    """
    zeta = _free_fermion_roots(big_n, subset)
    for t in np.linspace(0.0, 1.0, steps + 1)[1:]:
        rt = 1.0 + t * (params.r - 1.0)
        c = (1.0 - rt * rt) * math.exp(params.Y)
        zeta, ok = _bethe_newton_zeta(zeta, c, big_n)
        if not ok:
            return None
    return zeta


def eigenvalue_from_zeta(zeta: np.ndarray, big_n: int, params: ModelParams) -> complex:
    """Transfer-matrix eigenvalue attached to a root system (possibly complex)."""
    r, X, Y = params.r, params.X, params.Y
    eY = math.exp(Y)
    p1 = np.prod(1.0 + r * r * eY / (zeta - eY))
    p2 = np.prod(r * r / (eY / zeta - 1.0))
    return math.exp(X * len(zeta)) * (p1 + math.exp(Y * big_n) * p2)


@dataclass
class CompletenessReport:
    big_n: int
    n: int
    expected: int                   # C(N, n)
    solved: int
    failures: list[tuple[int, ...]]
    max_match_distance: float
    spectrum_scale: float
    lambda_bethe: np.ndarray = field(repr=False)
    lambda_oracle: np.ndarray = field(repr=False)


def spectrum_completeness(big_n: int, n: int, params: ModelParams) -> CompletenessReport:
    """Compare the C(N, n) continued root systems against the dense spectrum.

    Matching uses an optimal assignment in the complex plane, so conjugate
    pairs and near-degeneracies are handled without an ordering convention.
    """
    if big_n > COMPLETENESS_MAX_N:
        raise SizeError(f"completeness enumeration capped at N <= {COMPLETENESS_MAX_N}")
    lams = []
    failures = []
    for subset in combinations(range(big_n), n):
        zeta = bethe_root_system(big_n, n, params, subset)
        if zeta is None:
            failures.append(subset)
            continue
        lams.append(eigenvalue_from_zeta(zeta, big_n, params))
    lam_bethe = np.array(lams)
    spec = np.linalg.eigvals(transfer_matrix_oracle(big_n, n, params))
    dist = math.inf
    if len(lam_bethe) == len(spec):
        cost = np.abs(spec[:, None] - lam_bethe[None, :])
        ri, ci = linear_sum_assignment(cost)
        dist = float(cost[ri, ci].max())
    return CompletenessReport(
        big_n=big_n, n=n, expected=comb(big_n, n), solved=len(lam_bethe),
        failures=failures, max_match_distance=dist,
        spectrum_scale=float(np.abs(spec).max()),
        lambda_bethe=lam_bethe, lambda_oracle=spec)


# ---------------------------------------------------------------------------
# Mahler-style circle average
# ---------------------------------------------------------------------------

def mahler_integral(poly_roots: Iterable[complex], radius: float,
                    tol: float = 1e-12) -> float:
    """Circle average of log|q| for monic q with the given roots.

    Equals sum(log|root|) over roots outside the radius plus log(radius) for
    each root inside.  Roots on the circle (within tol) are degenerate.
    """
    if radius <= 0.0:
        raise DomainError("radius must be positive")
    total = 0.0
    for rt in poly_roots:
        a = abs(rt)
        if abs(a - radius) <= tol * radius:
            raise DomainError(f"root {rt} lies on the circle of radius {radius}")
        total += math.log(a) if a > radius else math.log(radius)
    return total
