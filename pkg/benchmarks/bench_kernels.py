#!/usr/bin/env python3
"""Compare the numba kernels with the pure-numpy fallback.

Both paths are called directly, so the SEMITHETA_DISABLE_NUMBA flag does not
matter here. Run: python3 benchmarks/bench_kernels.py [--order 4] [--repeat 3]
"""

import argparse
import time

import numpy as np

from semitheta import _kernels


def best_time(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_enumerate(n, repeat, numpy_prefix_rows):
    empty = np.zeros(0, dtype=np.int64)
    _kernels.enumerate_numba(1, empty)  # compile or load from cache
    t_numba, out_numba = best_time(lambda: _kernels.enumerate_numba(n, empty), repeat)
    if n < 4:
        t_numpy, out_numpy = best_time(lambda: _kernels.enumerate_numpy(n, empty), repeat)
        same = np.array_equal(out_numba, out_numpy)
        scale = 1.0
    else:
        # the numpy path is slow at order 4; time a few first rows and extrapolate
        prefixes = [np.array(p, dtype=np.int64) for p in np.ndindex(*(n,) * n)][:numpy_prefix_rows]
        t_numpy, parts = best_time(lambda: [_kernels.enumerate_numpy(n, p) for p in prefixes], 1)
        ref = [_kernels.enumerate_numba(n, p) for p in prefixes]
        same = all(np.array_equal(a, b) for a, b in zip(parts, ref))
        scale = n**n / len(prefixes)
    print(f"enumerate order {n}: {len(out_numba)} tables")
    print(f"  {'numba':<18} {t_numba * 1e3:10.2f} ms")
    label = "numpy" if scale == 1.0 else f"numpy (x{scale:.0f} est.)"
    print(f"  {label:<18} {t_numpy * scale * 1e3:10.2f} ms")
    print(f"  speedup {t_numpy * scale / t_numba:8.1f}x   results match: {same}")


def bench_associativity(n, count, repeat, seed):
    rng = np.random.default_rng(seed)
    # mix random magmas with genuine semigroups (which force a full scan)
    tables = [rng.integers(0, n, size=(n, n)) for _ in range(count // 2)]
    tables += [np.zeros((n, n), dtype=np.int64)] * (count - len(tables))
    _kernels.first_nonassociative_numba(tables[0])
    t_numba, a = best_time(lambda: [_kernels.first_nonassociative_numba(t) for t in tables], repeat)
    t_numpy, b = best_time(lambda: [_kernels.first_nonassociative_numpy(t) for t in tables], repeat)
    same = [tuple(map(int, x)) for x in a] == [tuple(map(int, x)) for x in b]
    print(f"associativity check, {count} tables of order {n}")
    print(f"  {'numba':<18} {t_numba * 1e3:10.2f} ms")
    print(f"  {'numpy':<18} {t_numpy * 1e3:10.2f} ms")
    print(f"  speedup {t_numpy / t_numba:8.1f}x   results match: {same}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--order", type=int, default=4)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--prefix-rows", type=int, default=8, help="numpy rows sampled at order 4")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    for n in range(2, args.order + 1):
        bench_enumerate(n, args.repeat, args.prefix_rows)
    for n in (5, 16, 48):
        bench_associativity(n, 200, args.repeat, args.seed)


if __name__ == "__main__":
    main()
