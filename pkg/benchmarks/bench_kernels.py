#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Run from the repository root after building the extension in place:

    python setup.py build_ext --inplace
    python benchmarks/bench_kernels.py [--limit 1e7]

Each kernel is timed on the same inputs with both backends; the compiled
column is skipped when the extension is not built.
"""

import argparse
import sys
import time
from math import isqrt

import numpy as np

from legwalk.experiments import parse_int_scalar
from legwalk.kernels import pykernels

try:
    from legwalk.kernels import _ckernels as ckernels
except ImportError:
    ckernels = None


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=parse_int_scalar, default=10**7)
    args = parser.parse_args()
    limit = args.limit

    base = pykernels.sieve_range(0, isqrt(limit) + 1, np.array([], dtype=np.int64))
    # seed base primes with a tiny bootstrap sieve
    boot = pykernels.sieve_range(0, isqrt(isqrt(limit)) + 2, np.array([], dtype=np.int64))
    base = pykernels.sieve_range(0, isqrt(limit) + 1, boot)

    cases = [
        ("sieve_range [0, %.0e)" % limit, "sieve_range", (0, limit, base)),
    ]
    primes = pykernels.sieve_range(0, limit, base)
    qs = primes[primes >= 3]
    cases.append(("legendre_batch p=97, %d values" % qs.size, "legendre_batch", (qs, 97)))
    cases.append(
        ("legendre_fixed_top a=97, %d moduli" % qs.size, "legendre_fixed_top", (97, qs))
    )
    lead = primes[primes % 4 == 3]
    lag = primes[primes % 4 == 1]
    cases.append(
        ("lead_measure X=%.0e" % (limit - 1), "lead_measure", (lead, lag, limit - 1))
    )

    backends = [("python", pykernels)]
    if ckernels is not None:
        backends.append(("c", ckernels))
    else:
        print("compiled kernels not built; showing fallback only", file=sys.stderr)

    width = max(len(label) for label, _, _ in cases)
    header = f"{'kernel':<{width}}  " + "".join(f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, attr, call_args in cases:
        times = []
        results = []
        for _, module in backends:
            t, result = timed(getattr(module, attr), *call_args)
            times.append(t)
            results.append(result)
        if len(results) == 2:
            a, b = results
            if isinstance(a, np.ndarray):
                assert np.array_equal(a, b), f"backend mismatch in {attr}"
            else:
                assert abs(a - b) <= 1e-9 * max(1.0, abs(a)), f"backend mismatch in {attr}"
        row = f"{label:<{width}}  " + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
