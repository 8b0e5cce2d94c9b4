"""Warm timings of the pairing kernel: numba loop vs blocked numpy.

    python benchmarks/bench_kernels.py [--repeat 5]

Two workloads: the raw kernel on random exponent arrays, and an end-to-end
series product (a tau-function-sized multiplication) under each backend.
"""

import argparse
import time

import numpy as np

from fockchern import _kernels
from fockchern.toda import tau, TauRequest


def raw_arrays(n, nvars, rng):
    ea = rng.integers(0, 5, size=(n, nvars)).astype(np.int64)
    eb = rng.integers(0, 5, size=(n, nvars)).astype(np.int64)
    lo = np.zeros(nvars, np.int64)
    hi = np.full(nvars, 6, np.int64)
    wa = ea.sum(axis=1, keepdims=True)
    wb = eb.sum(axis=1, keepdims=True)
    lim = np.array([nvars * 3], np.int64)
    ka = rng.integers(0, 1 << 20, size=n).astype(np.int64)
    kb = rng.integers(0, 1 << 20, size=n).astype(np.int64)
    return ea, eb, lo, hi, wa, wb, lim, ka, kb


def best_of(fn, repeat):
    fn()  # warm up (jit compile, caches)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    if _kernels.pairs_numba is None:
        print("numba not installed; only the numpy kernel is available")

    rng = np.random.default_rng(0)
    print(f"{'workload':<28}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for n in (200, 1000, 3000):
        arrays = raw_arrays(n, 8, rng)
        t_np = best_of(lambda: _kernels.pairs_numpy(*arrays), args.repeat)
        if _kernels.pairs_numba is not None:
            a = _kernels.pairs_numba(*arrays)
            b = _kernels.pairs_numpy(*arrays)
            assert all(np.array_equal(x, y) for x, y in zip(a, b))
            t_nb = best_of(lambda: _kernels.pairs_numba(*arrays), args.repeat)
            print(f"{f'kernel {n}x{n}':<28}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>10.1f}")
        else:
            print(f"{f'kernel {n}x{n}':<28}{t_np * 1e3:>12.2f}{'-':>12}{'-':>10}")

    req = TauRequest(1, 3, 3, 4)
    ring = req.ring
    x = tau(req)
    timings = {}
    for name in ("numpy", "numba"):
        if name == "numba" and _kernels.pairs_numba is None:
            continue
        _kernels.set_backend(name)
        timings[name] = best_of(lambda: x * x, args.repeat)
    nb = timings.get("numba")
    print(f"{'series product tau*tau':<28}{timings['numpy'] * 1e3:>12.2f}"
          f"{(nb or float('nan')) * 1e3:>12.2f}{(timings['numpy'] / nb if nb else float('nan')):>10.1f}")
    print(f"({len(x)} terms per operand, ring {ring.names})")


if __name__ == "__main__":
    main()
