"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first numba call compiles (or loads from cache) and is excluded.
"""
import argparse
import time

import numpy as np

from mosg import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--steps", type=int, default=20000, help="RK4 steps per call")
    ap.add_argument("--points", type=int, default=4096, help="grid points for the field kernels")
    args = ap.parse_args()

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)) - 3 * np.eye(5)
    f = rng.normal(size=5) + 0j
    y0 = np.zeros(5, complex)
    x = np.linspace(-20, 20, args.points, endpoint=False)
    psi = np.exp(-x**2).astype(complex)
    phase = np.exp(1j * 0.01 * x**2)
    dx = x[1] - x[0]

    cases = {
        "rk4_linear": (
            lambda: _kernels.rk4_linear_numpy(a, f, y0, 1e-3, args.steps),
            lambda: _kernels.rk4_linear_numba(a, f, y0, 1e-3, args.steps),
        ),
        "apply_phase x1000": (
            lambda: [_kernels.apply_phase_numpy(psi, phase) for _ in range(1000)],
            lambda: [_kernels.apply_phase_numba(psi, phase) for _ in range(1000)],
        ),
        "moments x1000": (
            lambda: [_kernels.moments_numpy(x, psi, dx) for _ in range(1000)],
            lambda: [_kernels.moments_numba(x, psi, dx) for _ in range(1000)],
        ),
    }
    print(f"{'kernel':<20}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, (slow, fast) in cases.items():
        fast()  # warm-up / compile
        t_np = best_of(slow, args.repeat)
        t_nb = best_of(fast, args.repeat)
        print(f"{name:<20}{t_np:>12.4g}{t_nb:>12.4g}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
