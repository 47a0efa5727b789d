"""Compare the numpy and numba quaternion kernels.

    python benchmarks/bench_kernels.py [--repeat 20]

The numba timings exclude the first (compiling) call.
"""
import argparse
import timeit

import numpy as np

from isorev.kernels import loop_is_compiled, qmatmul_loop, qmatmul_numpy, qmul_loop, qmul_numpy


def bench(fn, args, repeat):
    fn(*args)  # warm-up / compile
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"numba available: {loop_is_compiled()}")
    print(f"{'kernel':<10}{'size':>10}{'numpy [ms]':>14}{'numba [ms]':>14}{'ratio':>8}")
    for n in (4, 16, 64, 128):
        a, b = rng.standard_normal((n, n, 4)), rng.standard_normal((n, n, 4))
        assert np.allclose(qmatmul_numpy(a, b), qmatmul_loop(a, b))
        t_np = bench(qmatmul_numpy, (a, b), args.repeat)
        t_nb = bench(qmatmul_loop, (a, b), args.repeat)
        print(f"{'qmatmul':<10}{n:>10}{1e3 * t_np:>14.3f}{1e3 * t_nb:>14.3f}{t_np / t_nb:>8.2f}")
    for m in (10, 10_000, 1_000_000):
        p, q = rng.standard_normal((m, 4)), rng.standard_normal((m, 4))
        t_np = bench(qmul_numpy, (p, q), args.repeat)
        t_nb = bench(qmul_loop, (p, q), args.repeat)
        print(f"{'qmul':<10}{m:>10}{1e3 * t_np:>14.3f}{1e3 * t_nb:>14.3f}{t_np / t_nb:>8.2f}")


if __name__ == "__main__":
    main()
