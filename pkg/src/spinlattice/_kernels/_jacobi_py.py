"""Pure numpy Jacobi eigensolver.

Uses the round-robin (parallel) ordering: every step rotates n/2 disjoint
index pairs at once, so each step is a handful of vectorized row and column
updates instead of n/2 Python-level rotations.
"""
import numpy as np

EPS = np.finfo(float).eps


def _round_robin(n):
    """Yield n - 1 (or n) rounds of disjoint pairs covering every p < q once."""
    m = n if n % 2 == 0 else n + 1
    players = list(range(m))
    for _ in range(m - 1):
        p = np.array(players[: m // 2])
        q = np.array(players[m // 2:][::-1])
        keep = (p < n) & (q < n)
        p, q = p[keep], q[keep]
        lo, hi = np.minimum(p, q), np.maximum(p, q)
        yield lo, hi
        players = [players[0]] + [players[-1]] + players[1:-1]


def jacobi_eigh(a, tol=EPS, max_sweeps=100):
    """Diagonalize a real symmetric matrix by Jacobi rotations.

    Returns ``(w, v, sweeps)`` with ascending eigenvalues ``w`` and the
    eigenvectors as columns of ``v``.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    if n == 0:
        return np.zeros(0), v, 0
    floor = np.linalg.norm(a) * 1e-20
    rounds = list(_round_robin(n)) if n > 1 else []
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        rotated = False
        for p, q in rounds:
            apq = a[p, q]
            app = a[p, p]
            aqq = a[q, q]
            thresh = np.maximum(tol * np.sqrt(np.abs(app * aqq)), floor)
            live = np.abs(apq) > thresh
            if not live.any():
                continue
            rotated = True
            p, q, apq, app, aqq = p[live], q[live], apq[live], app[live], aqq[live]
            theta = (aqq - app) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            rp = a[p, :].copy()
            rq = a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp = a[:, p].copy()
            cq = a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, p] = app - t * apq
            a[q, q] = aqq + t * apq
            a[p, q] = 0.0
            a[q, p] = 0.0

            vp = v[:, p].copy()
            vq = v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
        if not rotated:
            break
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], sweeps
