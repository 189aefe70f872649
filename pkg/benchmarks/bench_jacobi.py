"""Compare the compiled and numpy Jacobi eigensolvers.

    python3 benchmarks/bench_jacobi.py [--sizes 36 100 200] [--repeat 3]

Also times one plaquette AFM/FM scan with each backend.
"""
import argparse
import time

import numpy as np

from spinlattice import _kernels, cluster, model
from spinlattice._kernels import available_backends


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_matrices(sizes, repeat):
    rng = np.random.default_rng(0)
    backends = available_backends()
    print(f"{'n':>5} " + " ".join(f"{name:>12}" for name in backends) + "   max |dw|")
    for n in sizes:
        a = rng.normal(size=(n, n))
        a = a + a.T
        ref = np.linalg.eigvalsh(a)
        row, err = [], 0.0
        for solve in backends.values():
            row.append(best_of(lambda: solve(a), repeat))
            err = max(err, float(np.max(np.abs(solve(a)[0] - ref))))
        print(f"{n:>5} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in row) + f"   {err:.1e}")


def bench_scan(repeat):
    # the scan resolves jacobi_eigh through the cluster module at call time
    for name, solve in available_backends().items():
        orig = cluster.jacobi_eigh
        cluster.jacobi_eigh = solve
        try:
            t = best_of(lambda: cluster.rvb_scan(model.plaquette_ring(), 3, 0, 0.5, 101), repeat)
        finally:
            cluster.jacobi_eigh = orig
        print(f"plaquette scan, 101 rows, {name:>8}: {t:.3f}s")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[36, 100, 200])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"default backend: {_kernels.BACKEND}")
    bench_matrices(args.sizes, args.repeat)
    bench_scan(args.repeat)


if __name__ == "__main__":
    main()
