# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: Legendre-sum point counts and U-series evaluation."""

import numpy as np

from libc.stdlib cimport malloc, free


cdef long long _legendre_sum(long long a, long long b, long long p,
                             signed char* chi) noexcept nogil:
    # chi[r] = legendre(r, p) for 0 <= r < p
    cdef long long x, sq, step, f, d1, d2, six, total
    chi[0] = 0
    for x in range(1, p):
        chi[x] = -1
    sq = 0
    for x in range(1, (p - 1) // 2 + 1):
        step = 2 * x - 1
        sq += step
        while sq >= p:
            sq -= p
        chi[sq] = 1
    # f(x) = x^3 + a x + b by forward differences, all residues in [0, p)
    f = b % p
    d1 = (1 + a) % p
    d2 = 6 % p
    six = 6 % p
    total = 0
    for x in range(p):
        total += chi[f]
        f += d1
        if f >= p:
            f -= p
        d1 += d2
        if d1 >= p:
            d1 -= p
        d2 += six
        if d2 >= p:
            d2 -= p
    return total


def ec_ap_many(long long a, long long b, primes):
    """a_p = -sum_x legendre(x^3 + a x + b, p) for each odd prime p."""
    cdef const long long[::1] ps = np.ascontiguousarray(primes, dtype=np.int64)
    cdef Py_ssize_t n = ps.shape[0], i
    out = np.zeros(n, dtype=np.int64)
    cdef long long[::1] res = out
    if n == 0:
        return out
    cdef long long pmax = 0
    for i in range(n):
        if ps[i] < 3:
            raise ValueError("primes must be odd")
        if ps[i] > pmax:
            pmax = ps[i]
    cdef signed char* chi = <signed char*> malloc(pmax * sizeof(signed char))
    if chi == NULL:
        raise MemoryError()
    cdef long long p, aa, bb
    try:
        with nogil:
            for i in range(n):
                p = ps[i]
                aa = a % p
                if aa < 0:
                    aa += p
                bb = b % p
                if bb < 0:
                    bb += p
                res[i] = -_legendre_sum(aa, bb, p, chi)
    finally:
        free(chi)
    return out


def clenshaw_u(coeffs, t):
    """sum_n c_n U_n(t) at each point of t."""
    cdef const double[::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef const double[::1] tt = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t m = tt.shape[0], nc = c.shape[0], i, k
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] res = out
    cdef double x, b1, b2, b0
    with nogil:
        for i in range(m):
            x = 2.0 * tt[i]
            b1 = 0.0
            b2 = 0.0
            for k in range(nc - 1, -1, -1):
                b0 = c[k] + x * b1 - b2
                b2 = b1
                b1 = b0
            res[i] = b1
    return out
