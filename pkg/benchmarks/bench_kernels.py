"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 20]

The first numba call compiles (or loads from cache) and is excluded.
"""

import argparse
import time

import numpy as np

from opineq import _kernels
from opineq.classes import gen_matrix
from opineq.linalg import imag_part, real_part


def _time(fn, repeat):
    fn()  # warm-up
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(n, count, rng):
    T = gen_matrix("ginibre", n, rng)
    A = T.conj().T @ T
    B = T @ T.conj().T
    X = _kernels.random_unit_vectors(rng, count, n)
    Y = _kernels.random_unit_vectors(rng, count, n)
    thetas = np.linspace(0, 2 * np.pi, 720, endpoint=False)
    R, J = real_part(T), imag_part(T)
    return {
        "lambda_max_grid": lambda: _kernels.lambda_max_grid(R, J, thetas),
        "abs_quad_forms": lambda: _kernels.abs_quad_forms(T, X),
        "schwarz_slack": lambda: _kernels.schwarz_slack(A, B, T, X, Y),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--count", type=int, default=10_000)
    args = ap.parse_args()
    print(f"{'kernel':18s} {'n':>3s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for n in (2, 4, 8):
        timings = {}
        for name in ("numpy", "numba"):
            _kernels.use_backend(name)
            rng = np.random.default_rng(0)
            for kernel, fn in cases(n, args.count, rng).items():
                timings.setdefault(kernel, {})[name] = _time(fn, args.repeat)
        for kernel, t in timings.items():
            print(f"{kernel:18s} {n:3d} {1e3 * t['numpy']:10.3f} {1e3 * t['numba']:10.3f} "
                  f"{t['numpy'] / t['numba']:8.2f}")
    _kernels.use_backend("numba")


if __name__ == "__main__":
    main()
