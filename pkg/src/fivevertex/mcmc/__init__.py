"""Heat-bath Monte Carlo for five-vertex height fields on hexagonal domains.

Configurations are integer height functions h on the faces of a hexagon of
side n drawn on the square grid (a 2n x 2n square with the southeast and
northwest corner staircases removed).  Boundary conditions are of boxed-
plane-partition type: h = 0 along the lower and left sides, h = n along the
upper and right sides, h increasing 0..n face by face along the two diagonal
staircases.  Valid interior heights satisfy

    h(i+1, j) - h(i, j) in {0, 1},   h(i, j+1) - h(i, j) in {0, 1},
    h(i+1, j+1) - h(i, j) <= 1,

the diagonal bound being the non-crossing (five-vertex) constraint: the
2 x 2 plaquette pattern (a; a+1, a+1; a+2) around a lattice vertex is exactly
the forbidden crossing vertex.  Each vertex where a path turns (the two
corner patterns) carries weight r, so a configuration has probability
proportional to r^(number of corner vertices); the edge fields multiply to a
configuration-independent constant under these fixed boundary conditions.

The sweep kernel resamples single faces from their two-point conditionals
(heat bath) in a per-sweep shuffled order.  A compiled Cython kernel is used
when available, with a bit-identical pure-Python fallback; both consume the
same splitmix64 counter stream, so runs are reproducible across backends and
platforms given the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, RangeError

try:  # compiled kernel, built via setup.py
    from . import _sweep as _kernel
except ImportError:  # pragma: no cover - exercised only without the extension
    from . import _sweep_py as _kernel

from . import _sweep_py as _kernel_py

KERNEL_BACKEND: str = _kernel.BACKEND


@dataclass(frozen=True)
class ChainConfig:
    """Run-length and reproducibility parameters of one chain."""
    r: float
    sweeps: int
    burnin: int = 0
    seed: int = 0
    thinning: int = 1

    def __post_init__(self) -> None:
        if self.r <= 0.0:
            raise DomainError("corner weight r must be positive")
        if not self.sweeps > self.burnin >= 0:
            raise RangeError("need sweeps > burnin >= 0")
        if self.thinning < 1:
            raise RangeError("thinning must be >= 1")


def default_config(n: int, r: float, sweeps: int, seed: int = 0) -> ChainConfig:
    """Diffusive-heuristic defaults: burn-in 10 n^2 sweeps, thinning n."""
    return ChainConfig(r=r, sweeps=sweeps, burnin=min(10 * n * n, sweeps // 2),
                       seed=seed, thinning=n)


class HexDomain:
    """Hexagon of side n: faces (i, j) in [0, 2n)^2 with |i - j| <= n - 1."""

    def __init__(self, n: int):
        if n < 1:
            raise DomainError("side length must be >= 1")
        self.n = n
        size = 2 * n
        ii, jj = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
        self.mask = np.abs(ii - jj) <= n - 1
        self.face_i, self.face_j = np.nonzero(self.mask)

    @property
    def n_faces(self) -> int:
        return int(self.mask.sum())

    def collar_value(self, i: int, j: int) -> int:
        """Frozen boundary height continued outside the hexagon."""
        n = self.n
        if i - j >= n:
            return min(max(j, 0), n)
        if j - i >= n:
            return min(max(i, 0), n)
        if i < 0 or j < 0:
            return 0
        return n

    def padded_boundary(self) -> np.ndarray:
        """(2n+2)^2 grid holding collar values everywhere, zeros inside."""
        n = self.n
        size = 2 * n
        H = np.zeros((size + 2, size + 2), dtype=np.int64)
        for i in range(-1, size + 1):
            for j in range(-1, size + 1):
                if not (0 <= i < size and 0 <= j < size and self.mask[i, j]):
                    H[i + 1, j + 1] = self.collar_value(i, j)
        return H

    def min_heights(self) -> np.ndarray:
        """Pointwise-minimal valid height on the faces: max(0, i-n, j-n)."""
        n = self.n
        i, j = self.face_i, self.face_j
        return np.maximum(0, np.maximum(i - n, j - n))

    def max_heights(self) -> np.ndarray:
        """Pointwise-maximal valid height: min(n, i, j)."""
        n = self.n
        i, j = self.face_i, self.face_j
        return np.minimum(n, np.minimum(i, j))


class HeightField:
    """A height configuration on a HexDomain, stored collar-padded."""

    def __init__(self, domain: HexDomain, padded: np.ndarray):
        self.domain = domain
        self.padded = padded

    @classmethod
    def from_interior(cls, domain: HexDomain, values: np.ndarray) -> "HeightField":
        H = domain.padded_boundary()
        H[domain.face_i + 1, domain.face_j + 1] = values
        return cls(domain, H)

    def interior(self) -> np.ndarray:
        return self.padded[self.domain.face_i + 1, self.domain.face_j + 1].copy()

    def grid(self) -> np.ndarray:
        """Heights on the 2n x 2n grid; collar values outside the hexagon."""
        return self.padded[1:-1, 1:-1].copy()

    def copy(self) -> "HeightField":
        return HeightField(self.domain, self.padded.copy())

    def validate(self) -> None:
        """Assert all increment and non-crossing constraints (debug helper)."""
        H = self.padded
        de = H[1:, :] - H[:-1, :]
        dn = H[:, 1:] - H[:, :-1]
        dd = H[1:, 1:] - H[:-1, :-1]
        # constraints only need to hold where a hexagon face is involved
        n = self.domain.n
        size = 2 * n
        inside = np.zeros_like(H, dtype=bool)
        inside[1:-1, 1:-1] = self.domain.mask
        for name, d, pairmask in (
            ("east", de, inside[1:, :] | inside[:-1, :]),
            ("north", dn, inside[:, 1:] | inside[:, :-1]),
        ):
            bad = pairmask & ((d < 0) | (d > 1))
            if bad.any():
                raise DomainError(f"{name} increment violated at {np.argwhere(bad)[0]}")
        diagmask = inside[1:, 1:] | inside[:-1, :-1]
        bad = diagmask & (dd > 1)
        if bad.any():
            raise DomainError(f"non-crossing constraint violated at {np.argwhere(bad)[0]}")

    def six_vertex_height(self) -> np.ndarray:
        """The +-1-increment height 2 h(i,j) - i - j on the 2n x 2n grid."""
        size = 2 * self.domain.n
        ii, jj = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
        return 2 * self.grid() - ii - jj


def init_bpp(n: int) -> HeightField:
    """Minimal valid configuration on the side-n hexagon."""
    domain = HexDomain(n)
    return HeightField.from_interior(domain, domain.min_heights())


def corner_count(field: HeightField) -> int:
    """Number of corner vertices (path turns); the configuration weight is
    r^corner_count times a boundary-determined constant."""
    H = field.padded
    sw = H[:-1, :-1]
    se = H[1:, :-1]
    nw = H[:-1, 1:]
    ne = H[1:, 1:]
    t5 = (se == sw + 1) & (nw == sw + 1) & (ne == sw + 1)
    t6 = (se == sw) & (nw == sw) & (ne == sw + 1)
    return int((t5 | t6).sum())


def _kernel_arrays(field: HeightField) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    dom = field.domain
    fi = (dom.face_i + 1).astype(np.int64)
    fj = (dom.face_j + 1).astype(np.int64)
    order = np.arange(len(fi), dtype=np.int64)
    return order, fi, fj


def heat_bath_sweep(field: HeightField, cfg: ChainConfig,
                    rng_state: np.ndarray, sweeps: int = 1,
                    backend: str | None = None) -> HeightField:
    """Advance `sweeps` full heat-bath sweeps in place; returns the field.

    `rng_state` is a one-element uint64 array (the splitmix64 counter), which
    is advanced in place so successive calls continue the same stream.
    """
    order, fi, fj = _kernel_arrays(field)
    mod = _kernel_py if backend == "python" else _kernel
    mod.run_sweeps(field.padded, order, fi, fj, cfg.r, sweeps, rng_state)
    return field


@dataclass
class MeanHeightResult:
    domain: HexDomain
    mean: np.ndarray      # per-face time-averaged height (flat, domain order)
    stderr: np.ndarray    # batch-mean standard errors, same shape
    n_samples: int
    cfg: ChainConfig
    backend: str

    def mean_grid(self) -> np.ndarray:
        g = np.full(self.domain.mask.shape, np.nan)
        g[self.domain.face_i, self.domain.face_j] = self.mean
        return g


def sample_mean_height(domain: HexDomain, cfg: ChainConfig,
                       n_batches: int = 32, backend: str | None = None,
                       validate_every: int = 0) -> MeanHeightResult:
    """Time-averaged height field with batch-mean standard errors.

    Runs one chain: cfg.burnin sweeps discarded, then measurements every
    cfg.thinning sweeps until cfg.sweeps total sweeps are spent.  Deterministic
    given cfg.seed (and backend-independent).
    """
    field = init_bpp(domain.n)
    mod = _kernel_py if backend == "python" else _kernel
    order, fi, fj = _kernel_arrays(field)
    state = np.array([np.uint64(cfg.seed)], dtype=np.uint64)
    if cfg.burnin:
        mod.run_sweeps(field.padded, order, fi, fj, cfg.r, cfg.burnin, state)
    n_meas_sweeps = cfg.sweeps - cfg.burnin
    n_frames = n_meas_sweeps // cfg.thinning
    if n_frames < n_batches:
        n_batches = max(1, n_frames)
    batch_sums = np.zeros((n_batches, domain.n_faces))
    batch_counts = np.zeros(n_batches, dtype=np.int64)
    for frame in range(n_frames):
        mod.run_sweeps(field.padded, order, fi, fj, cfg.r, cfg.thinning, state)
        if validate_every and frame % validate_every == 0:
            field.validate()
        b = frame * n_batches // n_frames
        batch_sums[b] += field.padded[fi, fj]
        batch_counts[b] += 1
    means = batch_sums / np.maximum(batch_counts[:, None], 1)
    mean = batch_sums.sum(axis=0) / max(batch_counts.sum(), 1)
    if n_batches > 1:
        stderr = means.std(axis=0, ddof=1) / np.sqrt(n_batches)
    else:
        stderr = np.full(domain.n_faces, np.nan)
    return MeanHeightResult(domain=domain, mean=mean, stderr=stderr,
                            n_samples=int(batch_counts.sum()), cfg=cfg,
                            backend=_kernel_py.BACKEND if backend == "python"
                            else KERNEL_BACKEND)


def enumerate_states(n: int) -> list[np.ndarray]:
    """All valid configurations on the side-n hexagon (exponential; n <= 2)."""
    if n > 2:
        raise DomainError("exhaustive enumeration is for n <= 2 only")
    domain = HexDomain(n)
    base = domain.padded_boundary()
    lo = domain.min_heights()
    hi = domain.max_heights()
    faces = list(zip(domain.face_i + 1, domain.face_j + 1))
    out: list[np.ndarray] = []

    def ok_local(H, i, j) -> bool:
        v = H[i, j]
        return (0 <= v - H[i - 1, j] <= 1 and 0 <= v - H[i, j - 1] <= 1
                and v - H[i - 1, j - 1] <= 1)

    def rec(k: int, H: np.ndarray) -> None:
        if k == len(faces):
            f = HeightField(domain, H.copy())
            try:
                f.validate()
            except DomainError:
                return
            out.append(f.interior())
            return
        i, j = faces[k]
        for v in range(lo[k], hi[k] + 1):
            H[i, j] = v
            # prune on already-assigned west/south/southwest neighbors; the
            # full constraint set is re-checked at the leaf
            if ok_local(H, i, j):
                rec(k + 1, H)

    # faces come in (i, j) lexicographic order, so west/south/southwest are set
    Hwork = base.copy()
    Hwork[domain.face_i + 1, domain.face_j + 1] = lo
    rec(0, Hwork)
    return out
