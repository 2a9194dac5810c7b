"""Compiled against fallback theta kernels.

    python benchmarks/bench_theta.py [--repeat N]

Prints one JSON line per genus with the median time per call of each kernel.
"""
import argparse
import json
import statistics
import time

import numpy as np

from prymlab import _kernels
from prymlab.theta_num import random_period_matrix, truncation_radius


def median_time(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()
    rng = np.random.default_rng(0)
    for g in (1, 2, 3):
        tau = random_period_matrix(g, rng, min_eig=0.4)
        z = rng.normal(size=g) * 0.2 + 0.05j
        a, b = np.full(g, 0.5), np.zeros(g)
        R = truncation_radius(tau, z, 1e-12)
        row = {"genus": g, "radius": R, "terms": (2 * R + 1) ** g}
        row["python_ms"] = 1e3 * median_time(
            lambda: _kernels.python_theta_sum(tau.entries, z, a, b, R), args.repeat)
        if _kernels.compiled_theta_sum is not None:
            row["cython_ms"] = 1e3 * median_time(
                lambda: _kernels.compiled_theta_sum(tau.entries, z, a, b, R), args.repeat)
            row["speedup"] = row["python_ms"] / row["cython_ms"]
        print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()
