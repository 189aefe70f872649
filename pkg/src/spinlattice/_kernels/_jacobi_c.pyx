# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Cyclic-by-row Jacobi eigensolver for dense real symmetric matrices."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


cdef inline void _rotate(double[:, ::1] a, double[:, ::1] v, Py_ssize_t n,
                         Py_ssize_t p, Py_ssize_t q, double c, double s) noexcept nogil:
    cdef Py_ssize_t r
    cdef double x, y
    for r in range(n):
        x = a[p, r]
        y = a[q, r]
        a[p, r] = c * x - s * y
        a[q, r] = s * x + c * y
    for r in range(n):
        x = a[r, p]
        y = a[r, q]
        a[r, p] = c * x - s * y
        a[r, q] = s * x + c * y
    for r in range(n):
        x = v[r, p]
        y = v[r, q]
        v[r, p] = c * x - s * y
        v[r, q] = s * x + c * y


def jacobi_eigh(a_in, double tol=2.220446049250313e-16, int max_sweeps=100):
    """Diagonalize a real symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, v, sweeps)`` with ascending eigenvalues ``w`` and the
    eigenvectors as columns of ``v``.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a_arr = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] v_arr = np.eye(n)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] v = v_arr
    cdef Py_ssize_t p, q
    cdef int sweep = 0
    cdef bint rotated
    cdef double apq, app, aqq, theta, t, c, s, thresh
    cdef double floor = np.linalg.norm(a_arr) * 1e-20 if n else 0.0

    with nogil:
        for sweep in range(1, max_sweeps + 1):
            rotated = False
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    app = a[p, p]
                    aqq = a[q, q]
                    thresh = tol * sqrt(fabs(app * aqq))
                    if thresh < floor:
                        thresh = floor
                    if fabs(apq) <= thresh:
                        continue
                    rotated = True
                    theta = (aqq - app) / (2.0 * apq)
                    if theta == 0.0:
                        t = 1.0
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    _rotate(a, v, n, p, q, c, s)
                    a[p, p] = app - t * apq
                    a[q, q] = aqq + t * apq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
            if not rotated:
                break

    w = np.diag(a_arr).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v_arr[:, order], sweep
