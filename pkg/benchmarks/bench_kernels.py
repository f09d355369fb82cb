"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both paths are imported directly, so the BICOARSE_NUMBA flag does not matter
here.  The first numba call (compilation) is reported separately.
"""
import argparse
import time

import numpy as np

from bicoarse import kernels
from bicoarse.words import random_reduced, random_word


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases(rng):
    words = {n: [random_word(rng, n).codes() for _ in range(50)] for n in (16, 64, 200)}
    small = [random_reduced(rng, 14).codes() for _ in range(20)]
    primes = np.array([p for p in range(2, 20003) if all(p % d for d in range(2, int(p ** 0.5) + 1))],
                      dtype=np.int64)
    return [
        ("max_matching n=16 x50", kernels.max_matching_numba, kernels.max_matching_numpy, words[16]),
        ("max_matching n=64 x50", kernels.max_matching_numba, kernels.max_matching_numpy, words[64]),
        ("max_matching n=200 x50", kernels.max_matching_numba, kernels.max_matching_numpy, words[200]),
        ("min_deletions n=14 x20", kernels.min_deletions_numba, kernels.min_deletions_numpy, small),
        ("sumset primes N=1e4 m=4",
         lambda g: kernels.signed_sumset_layers_numba(g, 10_000 + int(g.max()), 4),
         lambda g: kernels.signed_sumset_layers_numpy(g, 10_000 + int(g.max()), 4),
         [primes]),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"numba available: {kernels.HAVE_NUMBA}")
    print(f"{'kernel':28s} {'compile':>9s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, fast, slow, inputs in cases(rng):
        t0 = time.perf_counter()
        fast(inputs[0])
        compile_time = time.perf_counter() - t0
        t_fast, a = best_of(lambda: [fast(x) for x in inputs], args.repeat)
        t_slow, b = best_of(lambda: [slow(x) for x in inputs], max(1, args.repeat // 2))
        assert all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(a, b)), name
        print(f"{name:28s} {compile_time:9.3f} {t_fast:10.4f} {t_slow:10.4f} {t_slow / t_fast:8.1f}x")


if __name__ == "__main__":
    main()
