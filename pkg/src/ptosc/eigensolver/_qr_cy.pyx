# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled eigensolver kernels; mirrors ``_qr_py`` operation for operation."""

import numpy as np

cimport cython
from libc.math cimport hypot, sqrt

ctypedef double complex zdouble


cdef inline double _cabs(zdouble z) nogil:
    return hypot(z.real, z.imag)


cdef zdouble _csqrt(zdouble z) nogil:
    cdef double r = _cabs(z)
    cdef double re, im
    re = sqrt(0.5 * (r + z.real))
    im = sqrt(0.5 * (r - z.real))
    if z.imag < 0.0:
        im = -im
    return re + 1j * im


def hessenberg(zdouble[:, ::1] h):
    """In-place Householder reduction to upper Hessenberg form."""
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t k, i, j
    cdef double norm, vnorm
    cdef zdouble x0, phase, alpha, dot
    cdef zdouble[::1] v = np.empty(n, dtype=np.complex128)
    cdef bint tail_nonzero
    for k in range(n - 2):
        tail_nonzero = False
        for i in range(k + 2, n):
            if h[i, k] != 0.0:
                tail_nonzero = True
                break
        if not tail_nonzero:
            continue  # column already in Hessenberg form; transform is identity
        norm = 0.0
        for i in range(k + 1, n):
            norm = hypot(norm, _cabs(h[i, k]))
        x0 = h[k + 1, k]
        if x0 != 0.0:
            phase = x0 / _cabs(x0)
        else:
            phase = 1.0
        alpha = -phase * norm
        for i in range(k + 1, n):
            v[i - k - 1] = h[i, k]
        v[0] = v[0] - alpha
        vnorm = 0.0
        for i in range(n - k - 1):
            vnorm = hypot(vnorm, _cabs(v[i]))
        if vnorm == 0.0:
            continue
        for i in range(n - k - 1):
            v[i] = v[i] / vnorm
        # left: rows k+1.., columns k+1..
        for j in range(k + 1, n):
            dot = 0.0
            for i in range(k + 1, n):
                dot = dot + v[i - k - 1].conjugate() * h[i, j]
            dot = 2.0 * dot
            for i in range(k + 1, n):
                h[i, j] = h[i, j] - dot * v[i - k - 1]
        # right: all rows, columns k+1..
        for i in range(n):
            dot = 0.0
            for j in range(k + 1, n):
                dot = dot + h[i, j] * v[j - k - 1]
            dot = 2.0 * dot
            for j in range(k + 1, n):
                h[i, j] = h[i, j] - dot * v[j - k - 1].conjugate()
        h[k + 1, k] = alpha
        for i in range(k + 2, n):
            h[i, k] = 0.0


cdef inline void _eig2x2(zdouble a, zdouble b, zdouble c, zdouble d,
                         zdouble *z1, zdouble *z2) nogil:
    cdef zdouble tr = a + d
    cdef zdouble s = _csqrt((a - d) * (a - d) + 4.0 * b * c)
    if _cabs(tr + s) < _cabs(tr - s):
        s = -s
    z1[0] = 0.5 * (tr + s)
    z2[0] = tr - z1[0]


cdef inline zdouble _wilkinson(zdouble a, zdouble b, zdouble c, zdouble d) nogil:
    cdef zdouble z1, z2
    _eig2x2(a, b, c, d, &z1, &z2)
    if _cabs(z1 - d) <= _cabs(z2 - d):
        return z1
    return z2


def qr_eigvals(zdouble[:, ::1] h, Py_ssize_t max_sweeps_per_eig,
               Py_ssize_t max_total_sweeps, double eps, double hnorm):
    """Shifted QR eigenvalues of an upper Hessenberg matrix, in place.

    Same contract as ``_qr_py.qr_eigvals``.
    """
    cdef Py_ssize_t n = h.shape[0]
    eig_arr = np.empty(n, dtype=np.complex128)
    cdef zdouble[::1] eigs = eig_arr
    cdef zdouble[::1] galpha = np.empty(n, dtype=np.complex128)
    cdef zdouble[::1] gsigma = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t hi = n - 1
    cdef Py_ssize_t total = 0, stagnant = 0
    cdef Py_ssize_t lo, k, i, top
    cdef double t, tol
    cdef zdouble mu, a, b, ga, gs, u, w, z1, z2

    while hi >= 0:
        if hi == 0:
            eigs[0] = h[0, 0]
            break
        tol = _cabs(h[hi - 1, hi - 1]) + _cabs(h[hi, hi])
        if tol < hnorm:
            tol = hnorm
        tol = eps * tol
        if _cabs(h[hi, hi - 1]) <= tol:
            h[hi, hi - 1] = 0.0
            eigs[hi] = h[hi, hi]
            hi -= 1
            stagnant = 0
            continue
        lo = 0
        for k in range(hi - 1, 0, -1):
            tol = _cabs(h[k - 1, k - 1]) + _cabs(h[k, k])
            if tol < hnorm:
                tol = hnorm
            tol = eps * tol
            if _cabs(h[k, k - 1]) <= tol:
                h[k, k - 1] = 0.0
                lo = k
                break
        if lo == hi - 1:
            _eig2x2(h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi], &z1, &z2)
            eigs[hi] = z1
            eigs[lo] = z2
            hi = lo - 1
            stagnant = 0
            continue
        if total >= max_total_sweeps or stagnant >= max_sweeps_per_eig:
            return eig_arr, total, hi

        stagnant += 1
        total += 1
        if stagnant % 10 == 0:
            mu = h[hi, hi] + 0.75 * _cabs(h[hi, hi - 1])
        else:
            mu = _wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])

        for k in range(lo, hi + 1):
            h[k, k] = h[k, k] - mu
        for k in range(lo, hi):
            a = h[k, k]
            b = h[k + 1, k]
            t = hypot(_cabs(a), _cabs(b))
            if t == 0.0:
                galpha[k] = 1.0
                gsigma[k] = 0.0
                continue
            ga = a.conjugate() / t
            gs = b.conjugate() / t
            galpha[k] = ga
            gsigma[k] = gs
            h[k, k] = t
            h[k + 1, k] = 0.0
            for i in range(k + 1, hi + 1):
                u = h[k, i]
                w = h[k + 1, i]
                h[k, i] = ga * u + gs * w
                h[k + 1, i] = -gs.conjugate() * u + ga.conjugate() * w
        for k in range(lo, hi):
            ga = galpha[k]
            gs = gsigma[k]
            top = k + 2
            if top > hi + 1:
                top = hi + 1
            for i in range(lo, top):
                u = h[i, k]
                w = h[i, k + 1]
                h[i, k] = u * ga.conjugate() + w * gs.conjugate()
                h[i, k + 1] = -u * gs + w * ga
        for k in range(lo, hi + 1):
            h[k, k] = h[k, k] + mu
    return eig_arr, total, -1


def lu_factor(zdouble[:, ::1] a, long long[::1] piv):
    """In-place LU with partial pivoting; returns 0 on an exact zero pivot."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t k, i, j, p
    cdef double best, cur
    cdef zdouble tmp, m, inv
    for k in range(n):
        p = k
        best = _cabs(a[k, k])
        for i in range(k + 1, n):
            cur = _cabs(a[i, k])
            if cur > best:
                best = cur
                p = i
        piv[k] = p
        if a[p, k] == 0.0:
            return 0
        if p != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
        inv = 1.0 / a[k, k]
        for i in range(k + 1, n):
            a[i, k] = a[i, k] * inv
            m = a[i, k]
            if m != 0.0:
                for j in range(k + 1, n):
                    a[i, j] = a[i, j] - m * a[k, j]
    return 1


def lu_solve(zdouble[:, ::1] a, long long[::1] piv, zdouble[::1] b):
    """Solve L U x = P b in place with (a, piv) from ``lu_factor``."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t k, i, p
    cdef zdouble tmp
    for k in range(n):
        p = piv[k]
        if p != k:
            tmp = b[k]
            b[k] = b[p]
            b[p] = tmp
    for k in range(n - 1):
        tmp = b[k]
        if tmp != 0.0:
            for i in range(k + 1, n):
                b[i] = b[i] - a[i, k] * tmp
    for k in range(n - 1, -1, -1):
        b[k] = b[k] / a[k, k]
        tmp = b[k]
        if tmp != 0.0:
            for i in range(k):
                b[i] = b[i] - a[i, k] * tmp
    return None
