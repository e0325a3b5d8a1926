"""Walk through the building blocks: kernels, dilations, biases, features.

Run from the repository root:  python3 demos/transform_basics.py
"""

import numpy as np

import minirocket as mr

# ---------------------------------------------------------------------------
# 1. The kernel set: all 84 ways to place three +2 taps among nine positions.
# ---------------------------------------------------------------------------
triples = mr.generate_kernel_indices()
print(f"{len(triples)} kernels; first {triples[0]}, last {triples[-1]}")
print("weights of the last kernel:", mr.kernel_weights(triples[-1]))

# ---------------------------------------------------------------------------
# 2. The dilation schedule adapts to the input length.  Shorter series get
#    fewer usable dilations; the per-kernel feature budget (119 by default)
#    concentrates on small dilations.
# ---------------------------------------------------------------------------
for length in (64, 512, 4096):
    plan = mr.plan_dilations(length)
    print(
        f"length {length:>5}: {plan.dilations.size:>2} dilations "
        f"(max {plan.dilations.max()}), features/dilation {plan.features_per_dilation[:6]}..."
    )

# ---------------------------------------------------------------------------
# 3. One convolution, two ways: the multiplication-free path and the naive
#    nine-term multiply-add agree to float precision.
# ---------------------------------------------------------------------------
rng = np.random.default_rng(0)
x = rng.normal(size=200)
fast = mr.convolve_one(x, triples[40], dilation=3)
slow = mr.convolve_naive(x, mr.kernel_weights(triples[40]), dilation=3)
print("single convolution, max |fast - naive|:", np.abs(fast - slow).max())

# ---------------------------------------------------------------------------
# 4. Fit biases and transform.  Every feature is a proportion of positive
#    values, so the whole matrix lives in [0, 1].
# ---------------------------------------------------------------------------
series = rng.normal(size=(8, 200))
params = mr.fit_biases(series, mr.plan_dilations(200), seed=1)
features = mr.transform(series, params)
print(f"feature matrix {features.shape}, range [{features.min()}, {features.max()}]")

# The deterministic variant pools the whole training set instead of one
# random example per combination, and needs no seed at all.
det = mr.fit_biases_deterministic(series, mr.plan_dilations(200))
print("deterministic variant, same layout:", mr.transform(series, det).shape)

# ---------------------------------------------------------------------------
# 5. The optimized transform is an exact reformulation: compare it against
#    the brute-force oracle on this dataset.
# ---------------------------------------------------------------------------
delta = np.abs(features - mr.transform_naive(series, params)).max()
print("full transform, max per-feature |fast - naive|:", delta)
