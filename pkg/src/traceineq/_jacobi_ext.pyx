# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic complex Jacobi kernel (see ``_jacobi_py`` for the reference)."""
from libc.math cimport sqrt, fabs, hypot


cdef inline double _abs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef double _off_norm(double complex[:, ::1] a) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], i, j
    cdef double total = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                total += _abs2(a[i, j])
    return sqrt(total)


cdef void _rotate(double complex[:, ::1] a, double complex[:, ::1] v,
                  Py_ssize_t p, Py_ssize_t q) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], k
    cdef double complex apq = a[p, q]
    cdef double mag = sqrt(_abs2(apq))
    cdef double theta, t, c, s
    cdef double complex phase, cph, wqp, wqq, xp, xq
    if mag == 0.0:
        return
    phase = apq / mag
    theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    t = 1.0 / (fabs(theta) + hypot(theta, 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / sqrt(t * t + 1.0)
    s = t * c
    cph = phase.conjugate()
    wqp = -s * cph
    wqq = c * cph

    for k in range(n):
        xp = a[k, p]
        xq = a[k, q]
        a[k, p] = xp * c + xq * wqp
        a[k, q] = xp * s + xq * wqq
    for k in range(n):
        xp = a[p, k]
        xq = a[q, k]
        a[p, k] = xp * c + xq * wqp.conjugate()
        a[q, k] = xp * s + xq * wqq.conjugate()
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    for k in range(n):
        xp = v[k, p]
        xq = v[k, q]
        v[k, p] = xp * c + xq * wqp
        v[k, q] = xp * s + xq * wqq


cdef int _sweeps(double complex[:, ::1] a, double complex[:, ::1] v,
                 double tol, int max_sweeps) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], p, q
    cdef int sweep
    for sweep in range(max_sweeps + 1):
        if _off_norm(a) <= tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    return -1


def jacobi_sweeps(double complex[:, ::1] a, double complex[:, ::1] v,
                  double tol, int max_sweeps):
    cdef int result
    with nogil:
        result = _sweeps(a, v, tol, max_sweeps)
    return result
