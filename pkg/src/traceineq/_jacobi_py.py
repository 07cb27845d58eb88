"""Pure-Python cyclic complex Jacobi kernel.

Same contract as the compiled ``_jacobi_ext.jacobi_sweeps``; used when the
extension is not built.
"""
import math

import numpy as np


def _rotate(a, v, p, q):
    apq = a[p, q]
    mag = abs(apq)
    if mag == 0.0:
        return
    phase = apq / mag
    theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    t = 1.0 / (abs(theta) + math.hypot(theta, 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    cph = phase.conjugate()
    # W = [[c, s], [-s conj(e), c conj(e)]] on the (p, q) plane; A <- W* A W
    wqp = -s * cph
    wqq = c * cph

    col_p = a[:, p].copy()
    col_q = a[:, q]
    a[:, p] = col_p * c + col_q * wqp
    a[:, q] = col_p * s + col_q * wqq

    row_p = a[p, :].copy()
    row_q = a[q, :]
    a[p, :] = row_p * c + row_q * wqp.conjugate()
    a[q, :] = row_p * s + row_q * wqq.conjugate()

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vp = v[:, p].copy()
    vq = v[:, q]
    v[:, p] = vp * c + vq * wqp
    v[:, q] = vp * s + vq * wqq


def _off_norm(a):
    n = a.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                z = a[i, j]
                total += z.real * z.real + z.imag * z.imag
    return math.sqrt(total)


def jacobi_sweeps(a, v, tol, max_sweeps):
    """Diagonalize Hermitian ``a`` in place, accumulating rotations into ``v``.

    Returns the number of completed sweeps, or -1 if the off-diagonal norm is
    still above ``tol`` after ``max_sweeps`` sweeps.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        if _off_norm(a) <= tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    return -1


