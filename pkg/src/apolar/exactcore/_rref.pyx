# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(p) row reduction; same contract as ``_rref_py.rref_modp``."""

import numpy as np

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef inline i64 _mod_small(i64 x, i64 p, double pinv):
    # valid for 0 <= x < 2^52: the float quotient is off by at most one
    cdef i64 r = x - (<i64>(<double>x * pinv)) * p
    if r < 0:
        r += p
    elif r >= p:
        r -= p
    return r


def rref_modp(i64[:, ::1] a not None, i64 p):
    """Reduce ``a`` (entries in [0, p)) to RREF in place; return pivot columns."""
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, t, nnz
    cdef i64 inv, f, v
    cdef bint small = p < (1 << 26)
    cdef double pinv = 1.0 / <double>p
    # columns where the current pivot row is nonzero, and their values
    cdef Py_ssize_t[::1] nzc = np.empty(cols, dtype=np.intp)
    cdef i64[::1] nzv = np.empty(cols, dtype=np.int64)
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, cols):
                v = a[k, j]
                a[k, j] = a[r, j]
                a[r, j] = v
        inv = _inv(a[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
        nnz = 0
        for j in range(c, cols):
            if a[r, j] != 0:
                nzc[nnz] = j
                nzv[nnz] = a[r, j]
                nnz += 1
        for i in range(rows):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            f = p - f  # add (p - f) * row instead of subtracting: stays non-negative
            if small:
                for t in range(nnz):
                    j = nzc[t]
                    a[i, j] = _mod_small(a[i, j] + f * nzv[t], p, pinv)
            else:
                for t in range(nnz):
                    j = nzc[t]
                    a[i, j] = (a[i, j] + f * nzv[t]) % p
        pivots.append(c)
        r += 1
    return pivots
