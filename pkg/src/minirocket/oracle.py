"""Plain reference implementation, used as ground truth and speed baseline.

Everything here evaluates the defining formulas directly: each convolution
output value is an explicit nine-term multiply-add, every kernel is convolved
from scratch, and every feature gets its own pass over the pooled window.
No shared accumulators, no factored multiplications, no output reuse.
"""

import numpy as np

from .kernels import KERNEL_LENGTH, NUM_KERNELS, generate_kernel_indices, kernel_weights, plan_dilations
from .transform import _series_matrix

__all__ = ["convolve_naive", "transform_naive", "equivalence_fuzz"]


def convolve_naive(series, weights, dilation: int) -> np.ndarray:
    """Direct evaluation of the centered zero-padded dilated convolution.

    ``out[i] = sum_j weights[j] * x[i + (j - 4) * dilation]`` with zero for
    out-of-range indices; output length equals input length.
    """
    x = np.asarray(series, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("series must be one-dimensional")
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (KERNEL_LENGTH,):
        raise ValueError(f"expected {KERNEL_LENGTH} kernel weights, got {w.shape}")
    length = x.size
    if dilation < 1 or (KERNEL_LENGTH - 1) * dilation > length - 1:
        raise ValueError(f"dilation {dilation} is out of range for length {length}")

    out = np.zeros(length)
    for j in range(KERNEL_LENGTH):
        offset = (j - 4) * dilation
        lo = max(0, -offset)
        hi = min(length, length - offset)
        out[lo:hi] += w[j] * x[lo + offset:hi + offset]
    return out


def transform_naive(dataset, params) -> np.ndarray:
    """Same contract as the optimized transform, computed the obvious way."""
    values = _series_matrix(dataset)
    plan = params.plan
    if values.shape[1] != plan.input_length:
        raise ValueError(
            f"series length {values.shape[1]} does not match fitted length {plan.input_length}"
        )
    if params.biases.shape[0] != plan.total_features:
        raise ValueError(
            f"parameter layout mismatch: {params.biases.shape[0]} biases for "
            f"{plan.total_features} features"
        )

    triples = generate_kernel_indices()
    all_weights = [kernel_weights(t) for t in triples]
    num_examples, length = values.shape
    biases = params.biases

    out = np.zeros((num_examples, plan.total_features))
    for i in range(num_examples):
        x = values[i]
        feature = 0
        for j, dilation in enumerate(plan.dilations):
            pad = 4 * int(dilation)
            nfeat = int(plan.features_per_dilation[j])
            for k in range(NUM_KERNELS):
                conv = convolve_naive(x, all_weights[k], int(dilation))
                window = conv[pad:length - pad] if (j + k) % 2 == 1 else conv
                for _ in range(nfeat):
                    out[i, feature] = np.count_nonzero(window > biases[feature]) / window.size
                    feature += 1
    return out


def equivalence_fuzz(
    num_cases: int,
    seed: int = 0,
    min_length: int = 16,
    max_length: int = 512,
    max_examples: int = 20,
) -> float:
    """Fuzz the optimized transform against this oracle on random cases.

    Each case draws a random length, training-set size, feature budget,
    scale and offset, alternates between the default and deterministic bias
    variants, and compares the two transforms feature by feature.  Returns
    the worst per-feature absolute deviation observed.
    """
    from .fit import fit_biases, fit_biases_deterministic
    from .transform import transform

    if num_cases < 1:
        raise ValueError("num_cases must be positive")

    rng = np.random.default_rng(seed)
    worst = 0.0
    for case in range(num_cases):
        length = int(rng.integers(min_length, max_length + 1))
        num_examples = int(rng.integers(1, max_examples + 1))
        num_features = NUM_KERNELS * int(rng.integers(1, 5))
        scale = 10.0 ** rng.uniform(-1.0, 2.0)
        offset = rng.normal() * scale
        values = rng.normal(offset, scale, size=(num_examples, length))

        plan = plan_dilations(length, num_features)
        if case % 2 == 0:
            params = fit_biases(values, plan, seed=int(rng.integers(2**32)))
        else:
            params = fit_biases_deterministic(values, plan)

        fast = transform(values, params)
        naive = transform_naive(values, params)
        worst = max(worst, float(np.abs(fast - naive).max()))
    return worst
