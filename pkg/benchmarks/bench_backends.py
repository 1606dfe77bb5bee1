#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_backends.py [--trials N]

Both backends produce identical counts (asserted here); the point of this
script is the speed ratio, which is what you give up when the extension
did not build.
"""

import argparse
import time

from ibltlab._bits import KEYS_DISTINCT, KEYS_IID, SCHEME_PARTITIONED, SCHEME_SS_AVOIDING
from ibltlab.backend import available_backends, load_backend


def time_call(fn, *args):
    started = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - started


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=20_000,
                        help="Monte Carlo trials per simulation case")
    args = parser.parse_args()

    backends = {name: load_backend(name) for name in available_backends()}
    if "compiled" not in backends:
        print("compiled extension not available; nothing to compare")
        return

    census_cases = [(2, 20), (5, 9), (10, 7)]
    sim_cases = [
        ("uniform iid n=210 m=840", 210, 280, 3, 32, SCHEME_PARTITIONED, KEYS_IID),
        ("ss-avoiding n=210 m=768", 210, 256, 3, 24, SCHEME_SS_AVOIDING, KEYS_DISTINCT),
    ]

    print(f"{'case':<42} {'compiled':>10} {'python':>10} {'ratio':>8}")
    for ell, n in census_cases:
        times = {}
        counts = {}
        for name, mod in backends.items():
            counts[name], times[name] = time_call(mod.count_stopping_matrices, ell, n)
        assert counts["compiled"] == counts["python"]
        label = f"census ell={ell} n={n} ({ell**n:.0e} matrices)"
        print(f"{label:<42} {times['compiled']:>9.3f}s {times['python']:>9.3f}s "
              f"{times['python'] / times['compiled']:>7.1f}x")

    for label, n, ell, k, b, scheme, key_model in sim_cases:
        times = {}
        counts = {}
        for name, mod in backends.items():
            counts[name], times[name] = time_call(
                mod.run_trials, 0, 0, args.trials, n, ell, k, b, scheme, key_model
            )
        assert counts["compiled"] == counts["python"]
        label = f"{label} x{args.trials}"
        print(f"{label:<42} {times['compiled']:>9.3f}s {times['python']:>9.3f}s "
              f"{times['python'] / times['compiled']:>7.1f}x")


if __name__ == "__main__":
    main()
