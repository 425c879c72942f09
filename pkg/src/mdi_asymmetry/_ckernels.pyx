# cython: language_level=3
"""Compiled batched Hermitian kernels (cyclic Jacobi, PSD square root).

Same algorithm and outputs as ``_pykernels``; one matrix at a time, GIL released.
"""

import numpy as np

from libc.math cimport sqrt, hypot, fabs

OFF_TOL = 1e-13
MAX_SWEEPS = 60


cdef inline double cabs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef int _jacobi_one(double complex[:, ::1] a, double complex[:, ::1] v,
                     double off_tol, int max_sweeps) noexcept nogil:
    """Diagonalize ``a`` in place, accumulating rotations in ``v``.

    Returns the number of sweeps used, or -1 without convergence.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, k, p, q
    cdef int sweep
    cdef double off, g, theta, t, c, s, sgn
    cdef double complex e, ec, xp, xq

    for i in range(n):
        for k in range(n):
            v[i, k] = 1.0 if i == k else 0.0

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for k in range(n):
                if i != k:
                    off += cabs2(a[i, k])
        if sqrt(off) <= off_tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = sqrt(cabs2(a[p, q]))
                if g == 0.0:
                    continue
                e = a[p, q] / g
                ec = e.conjugate()
                theta = (a[q, q].real - a[p, p].real) / (2.0 * g)
                sgn = 1.0 if theta >= 0.0 else -1.0
                t = sgn / (fabs(theta) + hypot(theta, 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    xp = a[k, p]
                    xq = a[k, q]
                    a[k, p] = c * xp - s * (ec * xq)
                    a[k, q] = s * xp + c * (ec * xq)
                for k in range(n):
                    xp = a[p, k]
                    xq = a[q, k]
                    a[p, k] = c * xp - s * (e * xq)
                    a[q, k] = s * xp + c * (e * xq)
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    xp = v[k, p]
                    xq = v[k, q]
                    v[k, p] = c * xp - s * (ec * xq)
                    v[k, q] = s * xp + c * (ec * xq)
    return -1


def jacobi_eigh_batch(a, double off_tol=OFF_TOL, int max_sweeps=MAX_SWEEPS):
    """Eigendecompose a stack of Hermitian matrices; see ``_pykernels``."""
    cdef double complex[:, :, ::1] w = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t nb = w.shape[0]
    cdef Py_ssize_t n = w.shape[1]
    vecs = np.empty((nb, n, n), dtype=np.complex128)
    evals = np.empty((nb, n), dtype=np.float64)
    sweeps = np.empty(nb, dtype=np.int64)
    cdef double complex[:, :, ::1] v = vecs
    cdef double[:, ::1] ev = evals
    cdef long long[::1] sw = sweeps
    cdef Py_ssize_t b, k
    with nogil:
        for b in range(nb):
            sw[b] = _jacobi_one(w[b], v[b], off_tol, max_sweeps)
            for k in range(n):
                ev[b, k] = w[b, k, k].real
    return evals, vecs, sweeps


def sqrt_psd_batch(a, double neg_tol=1e-10, double zero_floor=1e-14,
                   double off_tol=OFF_TOL, int max_sweeps=MAX_SWEEPS):
    """Principal square roots of a stack of PSD matrices; see ``_pykernels``."""
    evals, vecs, sweeps = jacobi_eigh_batch(a, off_tol, max_sweeps)
    cdef double[:, ::1] ev = evals
    cdef double complex[:, :, ::1] v = vecs
    cdef Py_ssize_t nb = ev.shape[0]
    cdef Py_ssize_t n = ev.shape[1]
    root = np.empty((nb, n, n), dtype=np.complex128)
    min_eig = np.empty(nb, dtype=np.float64)
    cdef double complex[:, :, ::1] r = root
    cdef double[::1] mn = min_eig
    cdef Py_ssize_t b, i, j, k
    cdef double lam, m
    cdef double complex acc
    cdef double[64] rt
    if n > 64:
        raise ValueError("sqrt_psd_batch supports n <= 64")
    with nogil:
        for b in range(nb):
            m = ev[b, 0]
            for k in range(n):
                lam = ev[b, k]
                if lam < m:
                    m = lam
                rt[k] = sqrt(lam) if lam > zero_floor else 0.0
            mn[b] = m
            for i in range(n):
                for j in range(n):
                    acc = 0.0
                    for k in range(n):
                        acc = acc + v[b, i, k] * rt[k] * v[b, j, k].conjugate()
                    r[b, i, j] = acc
            for i in range(n):
                for j in range(i, n):
                    acc = 0.5 * (r[b, i, j] + r[b, j, i].conjugate())
                    r[b, i, j] = acc
                    r[b, j, i] = acc.conjugate()
    return root, min_eig, sweeps
