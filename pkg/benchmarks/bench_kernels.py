"""Benchmark the hot kernels: compiled extension vs numpy reference.

Usage:  python benchmarks/bench_kernels.py [--repeat N]

The transport benchmark mirrors the dominant workload of surface generation
and oracle verification: many RK4 substeps over frame rows.
"""
import argparse
import time

import numpy as np

from isorev._kernels import _reference as ref

try:
    from isorev._kernels import _fastcore as fast
except ImportError:
    fast = None


def timeit(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def transport_case(n_rows):
    rng = np.random.default_rng(1)
    state0 = np.empty((n_rows, 12))
    state0[:, 0:3] = rng.normal(size=(n_rows, 3))
    for i in range(n_rows):
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        if np.linalg.det(q) < 0:
            q[:, 2] *= -1
        state0[i, 3:6], state0[i, 6:9], state0[i, 9:12] = q.T
    rho = 1.0 + rng.random(n_rows)
    drho = 0.5 * rng.normal(size=n_rows)
    lam1 = rng.normal(size=n_rows)
    lam2 = rng.normal(size=n_rows)
    v_out = np.linspace(0.05, 2 * np.pi, 120)
    return state0, rho, drho, lam1, lam2, v_out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rows = []

    u = np.linspace(-1, 1, 200)
    v = np.linspace(0, 2 * np.pi, 600)
    for name, fn_args in (
            ("minimal_grid 200x600", (0.9, 1.2, 1.4, u, v)),
            ("cylinder_grid 200x600", (1.0, 1.0, 0.5, u, v))):
        kernel = name.split()[0]
        t_py = timeit(lambda: getattr(ref, kernel)(*fn_args), args.repeat)
        t_cy = (timeit(lambda: getattr(fast, kernel)(*fn_args), args.repeat)
                if fast else None)
        rows.append((name, t_py, t_cy))

    for n_rows, h in ((60, 1e-3), (60, 1e-4), (240, 1e-4)):
        case = transport_case(n_rows)
        name = f"transport_v rows={n_rows} h={h:g}"
        t_py = timeit(lambda: ref.transport_v(*case[:5], 0.8, 0.0, case[5], h),
                      args.repeat)
        t_cy = (timeit(lambda: fast.transport_v(*case[:5], 0.8, 0.0,
                                                case[5], h), args.repeat)
                if fast else None)
        rows.append((name, t_py, t_cy))

    print(f"{'kernel':<32}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for name, t_py, t_cy in rows:
        if t_cy is None:
            print(f"{name:<32}{t_py:>11.4f}s{'n/a':>12}{'':>10}")
        else:
            print(f"{name:<32}{t_py:>11.4f}s{t_cy:>11.4f}s"
                  f"{t_py / t_cy:>9.1f}x")
    if fast is None:
        print("\ncompiled backend not built; install with a working C "
              "toolchain to compare")


if __name__ == "__main__":
    main()
