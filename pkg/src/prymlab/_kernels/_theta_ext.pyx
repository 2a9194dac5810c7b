# cython: language_level=3
"""Compiled lattice sum for theta functions with real characteristics."""
from libc.math cimport exp, cos, sin, M_PI
from libc.stdlib cimport malloc, free

import numpy as np


def theta_sum(tau, z, a, b, int radius):
    """Sum exp(pi i m tau m + 2 pi i m (z + b)), m = n + a, over |n|_inf <= radius."""
    cdef const double[:, ::1] X = np.ascontiguousarray(np.real(tau), dtype=np.float64)
    cdef const double[:, ::1] Y = np.ascontiguousarray(np.imag(tau), dtype=np.float64)
    cdef const double[::1] zr = np.ascontiguousarray(np.real(z) + np.asarray(b, dtype=np.float64))
    cdef const double[::1] zi = np.ascontiguousarray(np.imag(z), dtype=np.float64)
    cdef const double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef Py_ssize_t g = X.shape[0]
    cdef Py_ssize_t i, j, k
    cdef long *n = <long *> malloc(g * sizeof(long))
    cdef double *m = <double *> malloc(g * sizeof(double))
    cdef double qr, qi, lr, li, mi, er, ei, w
    cdef double sr = 0.0, si = 0.0
    if n == NULL or m == NULL:
        free(n)
        free(m)
        raise MemoryError()
    try:
        for i in range(g):
            n[i] = -radius
        while True:
            for i in range(g):
                m[i] = n[i] + av[i]
            qr = 0.0
            qi = 0.0
            lr = 0.0
            li = 0.0
            for i in range(g):
                mi = m[i]
                # off-diagonal terms counted twice; tau is symmetric
                qr += X[i, i] * mi * mi
                qi += Y[i, i] * mi * mi
                for j in range(i + 1, g):
                    qr += 2.0 * X[i, j] * mi * m[j]
                    qi += 2.0 * Y[i, j] * mi * m[j]
                lr += mi * zr[i]
                li += mi * zi[i]
            # exponent = pi i (qr + i qi) + 2 pi i (lr + i li)
            er = -M_PI * qi - 2.0 * M_PI * li
            ei = M_PI * qr + 2.0 * M_PI * lr
            w = exp(er)
            sr += w * cos(ei)
            si += w * sin(ei)
            k = 0
            while k < g:
                if n[k] < radius:
                    n[k] += 1
                    break
                n[k] = -radius
                k += 1
            if k == g:
                break
    finally:
        free(n)
        free(m)
    return complex(sr, si)
