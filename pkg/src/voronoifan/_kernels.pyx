# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: short-vector enumeration, lattice box scans and the
double-description adjacency test.

Integer inputs only. Floating point is used to size the per-coordinate search
intervals (widened by a safety margin); every accepted vector is checked with
exact 64-bit integer arithmetic.
"""
from libc.math cimport sqrt, floor, ceil, fabs
from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long)

import numpy as np
cimport numpy as cnp

BACKEND = "cython"

# interval widening; the forms handled here have small integer Gram entries,
# so the Cholesky rounding error is many orders of magnitude below this
cdef double SLACK = 1e-6


def short_vectors(gram, bound):
    cdef Py_ssize_t n = len(gram)
    cdef cnp.int64_t[:, :] G = np.asarray(gram, dtype=np.int64)
    cdef long long B = int(bound)
    if B <= 0:
        return []
    cdef double[:, :] a = np.asarray(gram, dtype=np.float64).copy()
    cdef double[:] d = np.zeros(n)
    cdef double[:, :] mu = np.zeros((n, n))
    cdef Py_ssize_t i, j, k
    for i in range(n):
        d[i] = a[i, i]
        if d[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            mu[i, j] = a[i, j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j, k] -= mu[i, j] * a[i, k]

    cdef cnp.int64_t[:] x = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[:] hi = np.zeros(n, dtype=np.int64)
    cdef double[:] rem = np.zeros(n + 1)
    cdef double[:] cen = np.zeros(n)
    cdef char[:] zabove = np.zeros(n + 1, dtype=np.int8)
    cdef double c, r, t, slack
    cdef long long val, row
    out = []
    slack = SLACK * (1.0 + B)

    i = n - 1
    rem[n] = B
    zabove[n] = 1
    # descend: set up level i
    c = 0.0
    r = sqrt((rem[i + 1] + slack) / d[i])
    cen[i] = c
    x[i] = <long long> ceil(-c - r - SLACK)
    if x[i] < 0:
        x[i] = 0
    hi[i] = <long long> floor(-c + r + SLACK)
    while True:
        if x[i] > hi[i]:
            # level exhausted: go up
            i += 1
            if i == n:
                break
            x[i] += 1
            continue
        t = x[i] + cen[i]
        rem[i] = rem[i + 1] - d[i] * t * t
        if rem[i] < -slack:
            x[i] += 1
            continue
        zabove[i] = zabove[i + 1] and x[i] == 0
        if i == 0:
            if not zabove[0]:
                val = 0
                for j in range(n):
                    row = 0
                    for k in range(n):
                        row += G[j, k] * x[k]
                    val += x[j] * row
                if val <= B:
                    out.append(tuple([x[j] for j in range(n)]))
            x[0] += 1
            continue
        i -= 1
        c = 0.0
        for j in range(i + 1, n):
            c += mu[i, j] * x[j]
        cen[i] = c
        r = sqrt(max(rem[i + 1] + slack, 0.0) / d[i])
        x[i] = <long long> ceil(-c - r - SLACK)
        if zabove[i + 1] and x[i] < 0:
            x[i] = 0
        hi[i] = <long long> floor(-c + r + SLACK)

    res = []
    for v in out:
        for e in v:
            if e:
                res.append(v if e > 0 else tuple([-y for y in v]))
                break
    res.sort()
    return res


def box_scan(lo, hi, height, level, ineqs, eqs):
    cdef Py_ssize_t dim = len(lo)
    cdef cnp.int64_t[:] L = np.asarray(lo, dtype=np.int64)
    cdef cnp.int64_t[:] H = np.asarray(hi, dtype=np.int64)
    cdef cnp.int64_t[:] h = np.asarray(height, dtype=np.int64)
    cdef long long lev = int(level)
    cdef Py_ssize_t nf = len(ineqs), ne = len(eqs)
    cdef cnp.int64_t[:, :] F = np.asarray(ineqs, dtype=np.int64).reshape(nf, dim)
    cdef cnp.int64_t[:, :] E = np.asarray(eqs, dtype=np.int64).reshape(ne, dim)
    cdef cnp.int64_t[:] x = np.asarray(lo, dtype=np.int64).copy()
    cdef Py_ssize_t i, k
    cdef long long s
    cdef bint ok, nonzero
    out = []
    if dim == 0:
        return out
    for i in range(dim):
        if L[i] > H[i]:
            return out
    while True:
        nonzero = False
        for i in range(dim):
            if x[i] != 0:
                nonzero = True
                break
        ok = nonzero
        if ok:
            s = 0
            for i in range(dim):
                s += h[i] * x[i]
            ok = s <= lev
        if ok:
            for k in range(ne):
                s = 0
                for i in range(dim):
                    s += E[k, i] * x[i]
                if s != 0:
                    ok = False
                    break
        if ok:
            for k in range(nf):
                s = 0
                for i in range(dim):
                    s += F[k, i] * x[i]
                if s < 0:
                    ok = False
                    break
        if ok:
            out.append(tuple([x[i] for i in range(dim)]))
        # odometer, last coordinate fastest (matches itertools.product)
        i = dim - 1
        while i >= 0:
            if x[i] < H[i]:
                x[i] += 1
                break
            x[i] = L[i]
            i -= 1
        if i < 0:
            break
    return out


def adjacent_pairs(masks, pos, neg, int need):
    """Pairs (p, n) whose common zero set has at least ``need`` rows and lies
    in no other ray's zero set. Masks must fit in 64 bits."""
    cdef Py_ssize_t nr = len(masks), npos = len(pos), nneg = len(neg)
    cdef uint64_t[:] M = np.asarray(masks, dtype=np.uint64)
    cdef cnp.int64_t[:] P = np.asarray(pos, dtype=np.int64)
    cdef cnp.int64_t[:] N = np.asarray(neg, dtype=np.int64)
    cdef Py_ssize_t a, b, t, p, n
    cdef uint64_t z
    cdef bint ok
    out = []
    for a in range(npos):
        p = P[a]
        for b in range(nneg):
            n = N[b]
            z = M[p] & M[n]
            if __builtin_popcountll(z) < need:
                continue
            ok = True
            for t in range(nr):
                if t != p and t != n and (M[t] & z) == z:
                    ok = False
                    break
            if ok:
                out.append((p, n))
    return out
