# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: sector scanning and character-weighted lattice sums.

Semantics match ``_fallback.py`` exactly; see the docstrings there.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, log, ceil, floor, INFINITY, M_PI, cos, sin

cnp.import_array()

DEF BLOCK = 256


cdef double complex _block_tree(list sums):
    cdef Py_ssize_t i
    while len(sums) > 1:
        nxt = []
        for i in range(0, len(sums) - 1, 2):
            nxt.append(sums[i] + sums[i + 1])
        if len(sums) % 2:
            nxt.append(sums[len(sums) - 1])
        sums = nxt
    return sums[0]


def tree_sum(values, Py_ssize_t block=BLOCK):
    cdef double complex[::1] v = np.ascontiguousarray(values, dtype=np.complex128)
    cdef Py_ssize_t n = v.shape[0], i
    cdef double complex acc = 0
    if n == 0:
        return 0j
    sums = []
    for i in range(n):
        acc = acc + v[i]
        if (i + 1) % block == 0:
            sums.append(acc)
            acc = 0
    if n % block:
        sums.append(acc)
    return complex(_block_tree(sums))


def scan_sector(basis, offset, long a_lo, long a_hi, double x1, double x2,
                double bound, double log_period, double tol):
    cdef double b00 = basis[0, 0], b01 = basis[0, 1]
    cdef double b10 = basis[1, 0], b11 = basis[1, 1]
    cdef double o0 = offset[0], o1 = offset[1]
    cdef long a, b, b_lo, b_hi
    cdef double lo, hi, u, v, base, coef, lim, l1, l2, nrm, c
    cdef int k
    cdef Py_ssize_t cap = 1024, count = 0
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.empty((cap, 2), dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cv = np.empty(cap, dtype=np.float64)
    for a in range(a_lo, a_hi + 1):
        lo = -INFINITY
        hi = INFINITY
        for k in range(2):
            if k == 0:
                base = o0 + a * b00
                coef = b01
                lim = x1
            else:
                base = o1 + a * b10
                coef = b11
                lim = x2
            if coef == 0.0:
                if fabs(base) > lim:
                    lo = 1.0
                    hi = 0.0
                continue
            u = (-lim - base) / coef
            v = (lim - base) / coef
            if u > v:
                u, v = v, u
            if u > lo:
                lo = u
            if v < hi:
                hi = v
        if lo > hi:
            continue
        b_lo = <long>ceil(lo)
        b_hi = <long>floor(hi)
        for b in range(b_lo, b_hi + 1):
            l1 = o0 + a * b00 + b * b01
            l2 = o1 + a * b10 + b * b11
            nrm = fabs(l1 * l2)
            if nrm == 0.0 or nrm > bound:
                continue
            c = log(fabs(l2) / fabs(l1)) / log_period
            if c < -tol or c >= 1.0 + tol:
                continue
            if count == cap:
                cap *= 2
                out = np.resize(out, (cap, 2))
                cv = np.resize(cv, cap)
            out[count, 0] = a
            out[count, 1] = b
            cv[count] = c
            count += 1
    return out[:count].copy(), cv[:count].copy()


def character_sum(coords, numerators, coefficients, long n, int sign, weights):
    cdef cnp.int64_t[:, ::1] m = np.ascontiguousarray(coords, dtype=np.int64)
    cdef cnp.int64_t[:, ::1] c = np.ascontiguousarray(numerators, dtype=np.int64)
    cdef double complex[::1] l = np.ascontiguousarray(coefficients, dtype=np.complex128)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t N = m.shape[0], g = m.shape[1], S = c.shape[0]
    cdef Py_ssize_t i, j, s
    cdef long long idx
    cdef double complex acc = 0, val
    cdef double ang
    if N == 0:
        return 0j
    table_np = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] table = table_np
    for j in range(n):
        ang = sign * 2.0 * M_PI * j / n
        table[j] = cos(ang) + 1j * sin(ang)
    sums = []
    for i in range(N):
        val = 0
        for s in range(S):
            idx = 0
            for j in range(g):
                idx += m[i, j] * c[s, j]
            idx %= n
            if idx < 0:
                idx += n
            val = val + l[s] * table[idx]
        acc = acc + w[i] * val
        if (i + 1) % BLOCK == 0:
            sums.append(acc)
            acc = 0
    if N % BLOCK:
        sums.append(acc)
    return complex(_block_tree(sums))
