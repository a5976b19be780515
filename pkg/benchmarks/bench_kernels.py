#!/usr/bin/env python3
"""Benchmark the compiled eigensolver kernels against the pure-python twins.

Usage: python benchmarks/bench_kernels.py [--sizes 50,100,200]
"""

import argparse
import time

import numpy as np


def _rand_herm(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def _time(fn, *args, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="50,100,200")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    from ptlind.linalg import _kernels_py

    try:
        from ptlind.linalg import _kernels as _kernels_cy
    except ImportError:
        print("compiled kernels unavailable; benchmarking pure python only")
        _kernels_cy = None

    rng = np.random.default_rng(0)
    print(f"{'kernel':<14} {'n':>5} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for n in sizes:
        herm = _rand_herm(rng, n)
        gen = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        off = 1e-13 * np.abs(herm).max()
        t_py = _time(_kernels_py.jacobi_eigh, herm, off, repeats=args.repeats)
        if _kernels_cy is not None:
            t_cy = _time(_kernels_cy.jacobi_eigh, herm, off, repeats=args.repeats)
            print(f"{'jacobi_eigh':<14} {n:>5} {t_py:>9.3f}s {t_cy:>9.3f}s {t_py / t_cy:>7.1f}x")
        else:
            print(f"{'jacobi_eigh':<14} {n:>5} {t_py:>9.3f}s {'-':>10} {'-':>8}")
        t_py = _time(_kernels_py.hessenberg_qr_eigvals, gen, 100 * n, repeats=args.repeats)
        if _kernels_cy is not None:
            t_cy = _time(_kernels_cy.hessenberg_qr_eigvals, gen, 100 * n, repeats=args.repeats)
            print(f"{'qr_eigvals':<14} {n:>5} {t_py:>9.3f}s {t_cy:>9.3f}s {t_py / t_cy:>7.1f}x")
        else:
            print(f"{'qr_eigvals':<14} {n:>5} {t_py:>9.3f}s {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
