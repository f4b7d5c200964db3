"""Benchmark the compiled recurrence core against the pure-Python fallback.

Times the Miller backward pass itself across argument/order regimes, then
one end-to-end kernel workload (a Poisson row by subordination, which
funnels hundreds of recurrence passes).  Run as

    python benchmarks/bench_backends.py
"""

import math
import time

from zharm import _core_py

try:
    from zharm import _core
except ImportError:
    _core = None

from zharm import kernels
from zharm.bessel import _half_row_cached


def time_call(fn, *args, repeat=5):
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_miller():
    cases = [
        # (z, radius): start index grows like radius + 4 sqrt(radius * z / 2)
        (2.0, 64),
        (200.0, 256),
        (2e4, 512),
        (2e5, 2048),
    ]
    print(f"{'z':>10} {'radius':>7} {'start':>8} "
          f"{'compiled':>12} {'python':>12} {'speedup':>8}")
    for z, radius in cases:
        start = radius + int(math.ceil(40 + 4 * math.sqrt(radius * max(z / 2, 1))))
        t_py = time_call(_core_py.miller_row, z, radius, start, repeat=3)
        if _core is None:
            print(f"{z:10.0f} {radius:7d} {start:8d} {'n/a':>12} "
                  f"{t_py * 1e3:10.2f}ms {'':>8}")
            continue
        t_cy = time_call(_core.miller_row, z, radius, start)
        print(f"{z:10.0f} {radius:7d} {start:8d} {t_cy * 1e3:10.3f}ms "
              f"{t_py * 1e3:10.2f}ms {t_py / t_cy:7.1f}x")


def bench_poisson_row():
    def workload():
        _half_row_cached.cache_clear()
        kernels._subordinate_window_cached.cache_clear()
        kernels.poisson_half_row(1.0, 120, rel_tol=1e-10)

    t = time_call(workload, repeat=3)
    backend = "compiled" if _core is not None else "python"
    print(f"\nPoisson row radius 120 (t = 1), active backend = {backend}: "
          f"{t * 1e3:.1f} ms")


if __name__ == "__main__":
    bench_miller()
    bench_poisson_row()
