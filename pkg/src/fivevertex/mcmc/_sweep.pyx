# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled heat-bath sweep kernel.

Heights live on a collar-padded int64 grid; one sweep visits every interior
face once in a freshly shuffled order and resamples its height from the
conditional distribution proportional to r^(local corner count).  Randomness
comes from an inlined splitmix64 counter generator so the compiled kernel and
the pure-Python fallback produce bit-identical streams.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport pow


cdef inline unsigned long long _mix(unsigned long long z) nogil:
    z = (z ^ (z >> 30)) * <unsigned long long>0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <unsigned long long>0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline unsigned long long _next(unsigned long long* s) nogil:
    s[0] = s[0] + <unsigned long long>0x9E3779B97F4A7C15ULL
    return _mix(s[0])


cdef inline int _corners(cnp.int64_t[:, ::1] H, Py_ssize_t i, Py_ssize_t j,
                         cnp.int64_t v) nogil:
    """Corner vertices among the four surrounding face (i, j) when its height is v."""
    cdef cnp.int64_t W = H[i - 1, j], S = H[i, j - 1]
    cdef cnp.int64_t E = H[i + 1, j], Nn = H[i, j + 1]
    cdef cnp.int64_t SWd = H[i - 1, j - 1], NEd = H[i + 1, j + 1]
    cdef cnp.int64_t SEd = H[i + 1, j - 1], NWd = H[i - 1, j + 1]
    cdef int c = 0
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


def run_sweeps(cnp.int64_t[:, ::1] H,
               cnp.int64_t[::1] order,
               cnp.int64_t[::1] fi,
               cnp.int64_t[::1] fj,
               double r,
               long sweeps,
               cnp.uint64_t[::1] state):
    """Advance the chain by `sweeps` full sweeps, mutating H, order and state."""
    cdef Py_ssize_t F = order.shape[0]
    cdef unsigned long long s = state[0]
    cdef Py_ssize_t sw, ii, kk, idx, i, j
    cdef unsigned long long jj
    cdef cnp.int64_t tmp, lo, hi, W, S, E, Nn, SWd, NEd
    cdef int clo, chi
    cdef double wgt, p, u
    with nogil:
        for sw in range(sweeps):
            for ii in range(F - 1, 0, -1):
                jj = _next(&s) % <unsigned long long>(ii + 1)
                tmp = order[ii]
                order[ii] = order[<Py_ssize_t>jj]
                order[<Py_ssize_t>jj] = tmp
            for kk in range(F):
                idx = order[kk]
                i = fi[idx]
                j = fj[idx]
                W = H[i - 1, j]
                S = H[i, j - 1]
                E = H[i + 1, j]
                Nn = H[i, j + 1]
                SWd = H[i - 1, j - 1]
                NEd = H[i + 1, j + 1]
                lo = W
                if S > lo:
                    lo = S
                if E - 1 > lo:
                    lo = E - 1
                if Nn - 1 > lo:
                    lo = Nn - 1
                if NEd - 1 > lo:
                    lo = NEd - 1
                hi = W + 1
                if S + 1 < hi:
                    hi = S + 1
                if E < hi:
                    hi = E
                if Nn < hi:
                    hi = Nn
                if SWd + 1 < hi:
                    hi = SWd + 1
                if hi > lo:
                    clo = _corners(H, i, j, lo)
                    chi = _corners(H, i, j, hi)
                    wgt = pow(r, <double>(chi - clo))
                    p = wgt / (1.0 + wgt)
                    u = <double>(_next(&s) >> 11) * (1.0 / 9007199254740992.0)
                    H[i, j] = hi if u < p else lo
    state[0] = s
    return None


BACKEND = "cython"
