"""Measure the optimized transform against the brute-force baseline.

Run from the repository root:  python3 demos/benchmark.py
Timings use a single worker thread for comparability.
"""

import statistics
import time

import numba
import numpy as np

import minirocket as mr

numba.set_num_threads(1)
rng = np.random.default_rng(0)


def median_ms(fn, repeats=3):
    fn()  # warm-up (also triggers compilation on the first ever call)
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return 1e3 * statistics.median(samples)


# ---------------------------------------------------------------------------
# 1. Optimized versus naive at a fixed size.
# ---------------------------------------------------------------------------
values = rng.normal(size=(100, 1024))
params = mr.fit_biases(values, mr.plan_dilations(1024), seed=0)
fast = median_ms(lambda: mr.transform(values, params))
naive = median_ms(lambda: mr.transform_naive(values, params))
print(f"100 x 1024, 9996 features: fast {fast:.0f} ms, naive {naive:.0f} ms, "
      f"speedup {naive / fast:.1f}x")

# ---------------------------------------------------------------------------
# 2. Cost grows linearly with series length ...
# ---------------------------------------------------------------------------
previous = None
for length in (256, 512, 1024, 2048):
    data = rng.normal(size=(50, length))
    p = mr.fit_biases(data, mr.plan_dilations(length), seed=0)
    ms = median_ms(lambda: mr.transform(data, p))
    note = "" if previous is None else f"  ({ms / previous:.2f}x the previous length)"
    print(f"length {length:>5}: {ms:7.1f} ms{note}")
    previous = ms

# ---------------------------------------------------------------------------
# 3. ... and with the number of examples.
# ---------------------------------------------------------------------------
previous = None
for n in (50, 100, 200):
    data = rng.normal(size=(n, 512))
    p = mr.fit_biases(data, mr.plan_dilations(512), seed=0)
    ms = median_ms(lambda: mr.transform(data, p))
    note = "" if previous is None else f"  ({ms / previous:.2f}x the previous count)"
    print(f"{n:>4} examples: {ms:7.1f} ms{note}")
    previous = ms
