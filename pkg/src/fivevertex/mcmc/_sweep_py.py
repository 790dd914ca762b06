"""Pure-Python fallback for the heat-bath sweep kernel.

Bit-compatible with the compiled version: same splitmix64 stream, same visit
order, same update rule.  Orders of magnitude slower; meant for environments
without a compiler and for cross-checking the compiled kernel.
"""

from __future__ import annotations

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_INV_2_53 = 1.0 / 9007199254740992.0


def _next(s: int) -> tuple[int, int]:
    s = (s + _GAMMA) & _MASK
    z = s
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    z = z ^ (z >> 31)
    return s, z


def _corners(H: np.ndarray, i: int, j: int, v: int) -> int:
    W = H[i - 1, j]
    S = H[i, j - 1]
    E = H[i + 1, j]
    Nn = H[i, j + 1]
    SWd = H[i - 1, j - 1]
    NEd = H[i + 1, j + 1]
    SEd = H[i + 1, j - 1]
    NWd = H[i - 1, j + 1]
    c = 0
    if (S == SWd + 1 and W == SWd + 1 and v == SWd + 1) or \
       (S == SWd and W == SWd and v == SWd + 1):
        c += 1
    if (SEd == S + 1 and v == S + 1 and E == S + 1) or \
       (SEd == S and v == S and E == S + 1):
        c += 1
    if (v == W + 1 and NWd == W + 1 and Nn == W + 1) or \
       (v == W and NWd == W and Nn == W + 1):
        c += 1
    if (E == v + 1 and Nn == v + 1 and NEd == v + 1) or \
       (E == v and Nn == v and NEd == v + 1):
        c += 1
    return c


def run_sweeps(H: np.ndarray, order: np.ndarray, fi: np.ndarray,
               fj: np.ndarray, r: float, sweeps: int, state: np.ndarray) -> None:
    F = len(order)
    s = int(state[0])
    for _ in range(sweeps):
        for ii in range(F - 1, 0, -1):
            s, z = _next(s)
            jj = z % (ii + 1)
            order[ii], order[jj] = order[jj], order[ii]
        for kk in range(F):
            idx = order[kk]
            i = int(fi[idx])
            j = int(fj[idx])
            W = H[i - 1, j]
            S = H[i, j - 1]
            E = H[i + 1, j]
            Nn = H[i, j + 1]
            SWd = H[i - 1, j - 1]
            NEd = H[i + 1, j + 1]
            lo = max(W, S, E - 1, Nn - 1, NEd - 1)
            hi = min(W + 1, S + 1, E, Nn, SWd + 1)
            if hi > lo:
                clo = _corners(H, i, j, lo)
                chi = _corners(H, i, j, hi)
                w = r ** (chi - clo)
                p = w / (1.0 + w)
                s, z = _next(s)
                u = (z >> 11) * _INV_2_53
                H[i, j] = hi if u < p else lo
    state[0] = np.uint64(s)


BACKEND = "python"
