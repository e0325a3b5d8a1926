"""Bias fitting: the only stochastic step of the whole method.

Biases are quantiles of actual convolution outputs, so they match the scale
of the data and the kernel weights by construction.  The default variant
draws one random training example per kernel/dilation combination; the
deterministic variant pools the convolution output of the entire training
set and needs no seed.
"""

from dataclasses import dataclass

import numpy as np

from .kernels import NUM_KERNELS, DilationPlan, generate_kernel_indices, quantile_sequence
from .transform import convolve_one

__all__ = [
    "TransformParameters",
    "VARIANT_DEFAULT",
    "VARIANT_DETERMINISTIC",
    "fit_biases",
    "fit_biases_deterministic",
    "quantile",
]

VARIANT_DEFAULT = "default"
VARIANT_DETERMINISTIC = "deterministic"


def quantile(values, q: float) -> float:
    """Linear-interpolation quantile of a non-empty vector.

    With sorted values v_0..v_{n-1} and position h = q * (n - 1), returns
    ``v_floor(h) + (h - floor(h)) * (v_ceil(h) - v_floor(h))``.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("quantile of an empty vector is undefined")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"quantile level must lie in [0, 1], got {q}")
    return float(np.quantile(values, q))


@dataclass(frozen=True)
class TransformParameters:
    """Fitted transform state: dilation plan, quantile assignment and biases.

    The bias vector is laid out dilation-major, then kernel, then bias index.
    ``seed`` is present only for the default variant.
    """

    plan: DilationPlan
    quantiles: np.ndarray
    biases: np.ndarray
    variant: str = VARIANT_DEFAULT
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "quantiles", np.asarray(self.quantiles, dtype=np.float64))
        object.__setattr__(self, "biases", np.asarray(self.biases, dtype=np.float64))
        total = self.plan.total_features
        if self.biases.shape != (total,):
            raise ValueError(f"expected {total} biases, got {self.biases.shape}")
        if self.quantiles.shape != (total,):
            raise ValueError(f"expected {total} quantile values, got {self.quantiles.shape}")
        if self.variant == VARIANT_DEFAULT:
            if self.seed is None:
                raise ValueError("default variant requires a seed")
        elif self.variant == VARIANT_DETERMINISTIC:
            if self.seed is not None:
                raise ValueError("deterministic variant carries no seed")
        else:
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def total_features(self) -> int:
        return self.plan.total_features


def _training_values(train, plan: DilationPlan) -> np.ndarray:
    values = getattr(train, "values", train)
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values.reshape(1, -1)
    if values.ndim != 2 or values.shape[0] == 0:
        raise ValueError("training set must be a non-empty (examples, length) array")
    if values.shape[1] != plan.input_length:
        raise ValueError(
            f"training series length {values.shape[1]} does not match "
            f"plan input length {plan.input_length}"
        )
    return values


def _resolve_quantiles(quantiles, plan: DilationPlan) -> np.ndarray:
    if quantiles is None:
        return quantile_sequence(plan.total_features)
    quantiles = np.asarray(quantiles, dtype=np.float64)
    if quantiles.shape != (plan.total_features,):
        raise ValueError(
            f"expected {plan.total_features} quantile values, got {quantiles.shape}"
        )
    return quantiles


def fit_biases(train, plan: DilationPlan, quantiles=None, seed: int = 0) -> TransformParameters:
    """Fit biases from one randomly chosen training example per combination.

    The example for combination c (c = dilation_index * 84 + kernel_index)
    is drawn from a pseudo-random stream keyed by ``(seed, c)``, so the
    result is independent of iteration order and identical across any
    parallel execution of the combination loop.  Identical inputs and seed
    give bit-identical biases.
    """
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
    values = _training_values(train, plan)
    quantiles = _resolve_quantiles(quantiles, plan)
    triples = generate_kernel_indices()

    biases = np.empty(plan.total_features)
    a = 0
    for j, dilation in enumerate(plan.dilations):
        nfeat = int(plan.features_per_dilation[j])
        for k in range(NUM_KERNELS):
            combination = j * NUM_KERNELS + k
            rng = np.random.default_rng((int(seed), combination))
            example = int(rng.integers(values.shape[0]))
            conv = convolve_one(values[example], triples[k], int(dilation))
            biases[a:a + nfeat] = np.quantile(conv, quantiles[a:a + nfeat])
            a += nfeat

    return TransformParameters(
        plan=plan, quantiles=quantiles, biases=biases, variant=VARIANT_DEFAULT, seed=int(seed)
    )


def fit_biases_deterministic(train, plan: DilationPlan, quantiles=None) -> TransformParameters:
    """Fit biases from the convolution output of the entire training set.

    Per combination, quantiles are taken over the concatenated outputs of
    all training examples, streamed one example at a time into a single
    buffer (peak extra memory is one copy of the training set).  The result
    carries no seed and is invariant to training-set order.
    """
    values = _training_values(train, plan)
    quantiles = _resolve_quantiles(quantiles, plan)
    triples = generate_kernel_indices()
    num_examples, length = values.shape

    biases = np.empty(plan.total_features)
    pooled = np.empty(num_examples * length)
    a = 0
    for j, dilation in enumerate(plan.dilations):
        nfeat = int(plan.features_per_dilation[j])
        for k in range(NUM_KERNELS):
            for e in range(num_examples):
                pooled[e * length:(e + 1) * length] = convolve_one(
                    values[e], triples[k], int(dilation)
                )
            biases[a:a + nfeat] = np.quantile(pooled, quantiles[a:a + nfeat])
            a += nfeat

    return TransformParameters(
        plan=plan, quantiles=quantiles, biases=biases, variant=VARIANT_DETERMINISTIC, seed=None
    )
