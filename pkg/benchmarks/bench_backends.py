#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Times the hot kernels and the end-to-end metric paths on zero-inflated
lognormal populations. The compiled extension is optional; when it is
missing only the fallback column is reported.

Usage:
    python benchmarks/bench_backends.py [--sizes 100000,1000000,10000000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from ineqkit import _kernels_py

try:
    from ineqkit import _kernels as compiled
except ImportError:
    compiled = None


def _population(size, seed=5):
    rng = np.random.default_rng(seed)
    values = rng.lognormal(0.0, 3.0, size)
    values[rng.random(size) < 0.85] = 0.0
    return np.sort(values)


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _kernel_cases(module, values):
    mu = values.mean()
    return [
        ("rank_weighted_sum", lambda: module.rank_weighted_sum(values)),
        ("prefix_sums", lambda: module.prefix_sums(values)),
        ("scaled_power_sum(0.5)", lambda: module.scaled_power_sum(values, mu, 0.5)),
        ("scaled_log_sum", lambda: module.scaled_log_sum(values, mu)),
    ]


def bench_kernels(sizes, repeat):
    print(f"{'kernel':<24} {'size':>10} {'numpy':>10} {'compiled':>10} {'speedup':>8}")
    for size in sizes:
        values = _population(size)
        numpy_cases = _kernel_cases(_kernels_py, values)
        compiled_cases = _kernel_cases(compiled, values) if compiled else None
        for i, (name, fn) in enumerate(numpy_cases):
            numpy_t = _time(fn, repeat)
            if compiled_cases:
                compiled_t = _time(compiled_cases[i][1], repeat)
                ratio = f"{numpy_t / compiled_t:7.2f}x"
                compiled_text = f"{compiled_t * 1e3:9.2f}ms"
            else:
                ratio = "-"
                compiled_text = "missing"
            print(f"{name:<24} {size:>10,} {numpy_t * 1e3:9.2f}ms {compiled_text:>10} {ratio:>8}")


def bench_end_to_end(sizes, repeat):
    import importlib
    import os
    import subprocess
    import sys

    print()
    print("end-to-end full_report (subprocess per backend):")
    script = (
        "import time, numpy as np\n"
        "import ineqkit\n"
        "from ineqkit import Distribution, MetricConfig, full_report\n"
        "rng = np.random.default_rng(5)\n"
        "values = rng.lognormal(0.0, 3.0, {size})\n"
        "values[rng.random({size}) < 0.85] = 0.0\n"
        "config = MetricConfig(epsilons=(0.5, 1.0, 2.0))\n"
        "start = time.perf_counter()\n"
        "full_report(Distribution(values), config)\n"
        "print(f'{{ineqkit.BACKEND}} {{time.perf_counter() - start:.3f}}')\n"
    )
    for size in sizes:
        for force_python in (True, False):
            env = dict(os.environ)
            if force_python:
                env["INEQKIT_PURE_PYTHON"] = "1"
            else:
                env.pop("INEQKIT_PURE_PYTHON", None)
            out = subprocess.run(
                [sys.executable, "-c", script.format(size=size)],
                capture_output=True,
                text=True,
                env=env,
            )
            backend, elapsed = out.stdout.split()
            print(f"  size {size:>10,}  backend {backend:<8} {float(elapsed):6.3f}s")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100000,1000000", help="comma-separated sizes")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    if compiled is None:
        print("note: compiled kernels not built; showing the NumPy fallback only")
    bench_kernels(sizes, args.repeat)
    bench_end_to_end(sizes, args.repeat)


if __name__ == "__main__":
    main()
