"""Benchmark the compiled kernels against the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from sievecraft import _kernels_py as kpy

try:
    from sievecraft import _kernels_cy as kcy
except ImportError:
    kcy = None


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def row(name, tpy, tcy):
    speedup = "" if tcy is None else f"{tpy / tcy:7.1f}x"
    tc = "     n/a" if tcy is None else f"{tcy * 1e3:8.1f}"
    print(f"{name:<34} {tpy * 1e3:8.1f} {tc} {speedup}")


def main():
    print(f"{'kernel':<34} {'py (ms)':>8} {'cy (ms)':>8} {'speedup':>8}")

    tpy, mpy = timeit(kpy.squarefree_mask, 10**7)
    tcy, mcy = (None, None) if kcy is None else timeit(kcy.squarefree_mask, 10**7)
    if mcy is not None:
        assert np.array_equal(mpy, mcy)
    row("squarefree_mask(1e7)", tpy, tcy)

    coeffs = [2, 0, 0, 1]  # x^3 + 2
    primes = [p for p in range(2, 3000) if all(p % q for q in range(2, p))]

    def roots_all(mod):
        return [mod.poly_roots_mod_p(coeffs, p) for p in primes]

    tpy, rpy = timeit(roots_all, kpy)
    tcy, rcy = (None, None) if kcy is None else timeit(roots_all, kcy)
    if rcy is not None:
        assert rpy == rcy
    row("poly_roots_mod_p (430 primes)", tpy, tcy)

    n, b = 200000, 10**4
    tpy, ppy = timeit(kpy.value_square_profile, coeffs, n, b, repeat=1)
    tcy, pcy = (None, None) if kcy is None else timeit(
        kcy.value_square_profile, coeffs, n, b, repeat=1
    )
    if pcy is not None:
        key = lambda r: set(zip(r[0].tolist(), r[1].tolist(), r[2].tolist()))
        assert key(ppy) == key(pcy) and np.array_equal(ppy[3], pcy[3])
    row("value_square_profile(x^3+2, 2e5)", tpy, tcy)


if __name__ == "__main__":
    main()
