"""Time one walk step on the numpy and numba backends.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported side by side, so the ``QWTRANSFER_NUMBA`` flag
does not matter here. JIT compilation is triggered before timing.
"""

import argparse
import time

import numpy as np

from qwtransfer import kernels
from qwtransfer._accel import NUMBA_AVAILABLE

CASES = {
    "star": (10**4, 10**5, 10**6, 4 * 10**6),
    "complete-loops": (250, 500, 1000, 2000),
    "szegedy": (250, 500, 1000, 2000),
}


def best_of(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(family, n, backend, repeat, rng):
    size = 2 * n if family == "star" else n * n
    shape = (size,) if family == "star" else (n, n)
    a = (rng.standard_normal(size) + 1j * rng.standard_normal(size)).reshape(shape)
    out = np.empty_like(a)
    kernel = kernels.BACKENDS[backend][family]
    kernel(a, 0, 1, out)
    return best_of(lambda: kernel(a, 0, 1, out), repeat)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    backends = ["numpy", "numba"] if NUMBA_AVAILABLE else ["numpy"]
    rng = np.random.default_rng(0)
    print(f"{'family':<16}{'N':>10}{'amplitudes':>12}" + "".join(f"{b + ' ms':>12}" for b in backends) + f"{'speedup':>10}")
    for family, sizes in CASES.items():
        for n in sizes:
            times = [bench(family, n, b, args.repeat, rng) for b in backends]
            amps = 2 * n if family == "star" else n * n
            speed = f"{times[0] / times[1]:>9.2f}x" if len(times) == 2 else ""
            print(f"{family:<16}{n:>10}{amps:>12}" + "".join(f"{t * 1e3:>12.2f}" for t in times) + speed)
    if not NUMBA_AVAILABLE:
        print("numba not installed; only the numpy backend was timed")


if __name__ == "__main__":
    main()
