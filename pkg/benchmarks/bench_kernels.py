"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--n 100 200 400] [--repeat 3]

The first numba call per shape includes compilation and is excluded.
"""

import argparse
import time

import numpy as np

from labelpcor.fast1d import UnivariateScorer, class_gap_sums
from labelpcor.pcor import angle_pair_sums, equal_rows


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18}{'n':>6}{'numba s':>12}{'numpy s':>12}{'speedup':>10}{'max diff':>12}")
    for n in args.n:
        x = rng.normal(size=(n, 3))
        same = equal_rows(x)
        ref = {b: angle_pair_sums(x, same, b) for b in ("numba", "numpy")}
        t = {b: best_of(lambda b=b: angle_pair_sums(x, same, b), args.repeat) for b in ref}
        diff = np.abs(ref["numba"] - ref["numpy"]).max()
        print(f"{'angle_pair_sums':<18}{n:>6}{t['numba']:>12.4f}{t['numpy']:>12.4f}"
              f"{t['numpy'] / t['numba']:>10.1f}{diff:>12.2e}")

        v = np.sort(rng.normal(size=n))
        codes = rng.integers(0, 3, size=(2000, n))
        ref = {b: class_gap_sums(v, codes, 3, b)[0] for b in ("numba", "numpy")}
        t = {b: best_of(lambda b=b: class_gap_sums(v, codes, 3, b), args.repeat) for b in ref}
        diff = np.abs(ref["numba"] - ref["numpy"]).max()
        print(f"{'class_gap_sums':<18}{n:>6}{t['numba']:>12.4f}{t['numpy']:>12.4f}"
              f"{t['numpy'] / t['numba']:>10.1f}{diff:>12.2e}")

        sc = {b: UnivariateScorer(v, backend=b) for b in ("numba", "numpy")}
        t = {b: best_of(lambda b=b: sc[b].score_many(codes), args.repeat) for b in sc}
        print(f"{'score_many x2000':<18}{n:>6}{t['numba']:>12.4f}{t['numpy']:>12.4f}"
              f"{t['numpy'] / t['numba']:>10.1f}{'':>12}")


if __name__ == "__main__":
    main()
