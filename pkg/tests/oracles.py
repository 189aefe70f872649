"""Reference computations that share no code with the package."""
import numpy as np


def charpoly_coefficients(a):
    """Faddeev-LeVerrier: coefficients of det(x I - A), highest degree first."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    coeffs = [1.0]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(a @ m) / k)
    return np.array(coeffs)


def charpoly_roots(a):
    """Real roots of the characteristic polynomial, Newton-polished, ascending."""
    c = charpoly_coefficients(a)
    roots = np.sort(np.roots(c).real)
    dc = np.polyder(c)
    for _ in range(3):
        d = np.polyval(dc, roots)
        step = np.where(d != 0, np.polyval(c, roots) / np.where(d != 0, d, 1.0), 0.0)
        roots = roots - step
    return np.sort(roots)


def jordan_wigner(n_modes):
    """Dense annihilation matrices a_k on 2**n_modes states.

    Basis index = sum_k occ_k 2**k; ket |occ> = prod_{k ascending} (a_k^+)^occ_k |0>.
    """
    dim = 2 ** n_modes
    ops = []
    for k in range(n_modes):
        a = np.zeros((dim, dim))
        for s in range(dim):
            if (s >> k) & 1:
                below = bin(s & ((1 << k) - 1)).count("1")
                a[s ^ (1 << k), s] = (-1) ** below
        ops.append(a)
    return ops
