import subprocess
import sys

import numpy as np
import pytest

from spinlattice._kernels import BACKEND, available_backends, jacobi_eigh

from oracles import charpoly_roots


def random_symmetric(rng, n):
    a = rng.normal(size=(n, n))
    return a + a.T


def test_backend_selected():
    assert BACKEND in available_backends()
    assert jacobi_eigh is available_backends()[BACKEND]


def test_diagonal_matrix(solver):
    w, v, _ = solver(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_array_equal(w, [-1.0, 2.0, 3.0])
    np.testing.assert_array_equal(np.abs(v), np.eye(3)[:, [1, 2, 0]])


def test_two_by_two(solver):
    w, _, _ = solver(np.array([[0.0, -1.0], [-1.0, 0.0]]))
    np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-15)


@pytest.mark.parametrize("n", [0, 1])
def test_trivial_sizes(solver, n):
    a = np.full((n, n), 2.5)
    w, v, _ = solver(a)
    np.testing.assert_array_equal(w, np.diag(a))
    assert v.shape == (n, n)


def test_zero_matrix(solver):
    w, v, sweeps = solver(np.zeros((4, 4)))
    np.testing.assert_array_equal(w, 0.0)
    np.testing.assert_array_equal(v, np.eye(4))
    assert sweeps == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_matches_characteristic_polynomial(solver, rng, n):
    for _ in range(20):
        a = random_symmetric(rng, n)
        np.testing.assert_allclose(solver(a)[0], charpoly_roots(a), atol=1e-9)


@pytest.mark.parametrize("n", [5, 17, 60])
def test_decomposition(solver, rng, n):
    a = random_symmetric(rng, n)
    w, v, _ = solver(a)
    scale = np.abs(a).max()
    assert np.all(np.diff(w) >= 0)
    np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-13)
    np.testing.assert_allclose(a @ v, v * w, atol=1e-12 * scale * n)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), rtol=0, atol=1e-12 * scale * n)


def test_degenerate_spectrum(solver, rng):
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)))
    d = np.array([1.0, 1.0, 1.0, 2.0, 2.0, -3.0])
    a = (q * d) @ q.T
    a = 0.5 * (a + a.T)
    np.testing.assert_allclose(solver(a)[0], np.sort(d), atol=1e-13)


def test_backends_agree(rng):
    backends = available_backends()
    a = random_symmetric(rng, 40)
    results = [f(a)[0] for f in backends.values()]
    for w in results[1:]:
        np.testing.assert_allclose(w, results[0], rtol=0, atol=1e-12)


def test_input_not_modified(solver, rng):
    a = random_symmetric(rng, 5)
    before = a.copy()
    solver(a)
    np.testing.assert_array_equal(a, before)


def test_fallback_selected_without_extension():
    code = ("import sys; sys.modules['spinlattice._kernels._jacobi_c'] = None\n"
            "import spinlattice, numpy as np\n"
            "from spinlattice._kernels import jacobi_eigh, jacobi_eigh_python\n"
            "assert spinlattice.KERNEL_BACKEND == 'python'\n"
            "assert jacobi_eigh is jacobi_eigh_python\n"
            "print(jacobi_eigh(np.diag([2.0, 1.0]))[0])\n")
    r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert r.stdout.strip() == "[1. 2.]"
