"""Kernel set, dilation schedule and quantile assignment.

Everything in this module is deterministic: the 84 kernels are the full set
of length-9 two-valued kernels with three +2 taps, the dilation schedule is
a log-uniform grid adjusted to the input length, and pooling quantiles come
from the golden-ratio low-discrepancy sequence.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

KERNEL_LENGTH = 9
NUM_KERNELS = 84  # C(9, 3) index triples
DEFAULT_NUM_FEATURES = 9996  # nearest multiple of 84 below 10,000
DEFAULT_MAX_DILATIONS_PER_KERNEL = 32

_GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0


def generate_kernel_indices() -> np.ndarray:
    """Return the 84 index triples marking the +2 taps, as an (84, 3) array.

    Triples are all strictly increasing 3-combinations of {0, ..., 8} in
    lexicographic order: [0, 1, 2] first, [6, 7, 8] last.
    """
    combos = itertools.combinations(range(KERNEL_LENGTH), 3)
    return np.array(list(combos), dtype=np.int64)


def kernel_weights(triple) -> np.ndarray:
    """Nine-tap weight vector for one triple: +2 on the triple, -1 elsewhere.

    The weights always sum to zero, which is what makes full convolution
    windows insensitive to constant offsets in the input.
    """
    idx = np.asarray(triple, dtype=np.int64).ravel()
    if idx.size != 3 or len(set(idx.tolist())) != 3:
        raise ValueError(f"kernel triple must be three distinct indices, got {triple!r}")
    if idx.min() < 0 or idx.max() >= KERNEL_LENGTH:
        raise ValueError(f"kernel triple indices must lie in 0..8, got {triple!r}")
    weights = np.full(KERNEL_LENGTH, -1.0)
    weights[idx] = 2.0
    return weights


@dataclass(frozen=True)
class DilationPlan:
    """Dilation schedule and per-dilation feature allocation for one input length.

    ``features_per_dilation`` counts features per kernel; the full transform
    emits ``NUM_KERNELS * features_per_dilation.sum()`` features.
    """

    dilations: np.ndarray
    features_per_dilation: np.ndarray
    max_exponent: float
    input_length: int
    num_features: int
    max_dilations_per_kernel: int = DEFAULT_MAX_DILATIONS_PER_KERNEL

    def __post_init__(self):
        object.__setattr__(self, "dilations", np.asarray(self.dilations, dtype=np.int64))
        object.__setattr__(
            self, "features_per_dilation", np.asarray(self.features_per_dilation, dtype=np.int64)
        )
        if self.dilations.ndim != 1 or self.dilations.size == 0:
            raise ValueError("dilations must be a non-empty 1-D array")
        if self.features_per_dilation.shape != self.dilations.shape:
            raise ValueError("features_per_dilation must match dilations in length")
        if np.any(np.diff(self.dilations) <= 0) or self.dilations[0] < 1:
            raise ValueError("dilations must be ascending positive integers")
        if np.any(self.features_per_dilation < 1):
            raise ValueError("every dilation must carry at least one feature")
        if 8 * int(self.dilations[-1]) > self.input_length - 1:
            raise ValueError(
                f"dilation {int(self.dilations[-1])} exceeds input length {self.input_length}"
            )

    @property
    def features_per_kernel(self) -> int:
        return int(self.features_per_dilation.sum())

    @property
    def total_features(self) -> int:
        return NUM_KERNELS * self.features_per_kernel

    @property
    def num_combinations(self) -> int:
        return NUM_KERNELS * int(self.dilations.size)


def total_num_features(num_features: int = DEFAULT_NUM_FEATURES) -> int:
    """Round a feature budget down to the nearest multiple of 84."""
    if num_features < NUM_KERNELS:
        raise ValueError(f"num_features must be at least {NUM_KERNELS}, got {num_features}")
    return NUM_KERNELS * (num_features // NUM_KERNELS)


def plan_dilations(
    input_length: int,
    num_features: int = DEFAULT_NUM_FEATURES,
    max_dilations_per_kernel: int = DEFAULT_MAX_DILATIONS_PER_KERNEL,
) -> DilationPlan:
    """Build the deterministic dilation schedule for a given input length.

    A per-kernel budget of ``num_features // 84`` features is spread over a
    log-uniform grid of candidate dilations between 1 and
    ``(input_length - 1) / 8`` (so the dilated kernel never outgrows the
    input).  Duplicate grid points collapse onto unique dilations, carrying
    their counts with them, which assigns exponentially more features to
    smaller dilations.  The integer remainder is handed out one feature per
    dilation, smallest dilation first.
    """
    if input_length < KERNEL_LENGTH:
        raise ValueError(
            f"input length must be at least {KERNEL_LENGTH}, got {input_length}"
        )
    if num_features < NUM_KERNELS:
        raise ValueError(f"num_features must be at least {NUM_KERNELS}, got {num_features}")
    if max_dilations_per_kernel < 1:
        raise ValueError("max_dilations_per_kernel must be positive")

    per_kernel = num_features // NUM_KERNELS
    grid_size = min(per_kernel, max_dilations_per_kernel)
    max_exponent = math.log2((input_length - 1) / (KERNEL_LENGTH - 1))

    if grid_size == 1:
        exponents = np.zeros(1)
    else:
        exponents = np.arange(grid_size) * max_exponent / (grid_size - 1)
    candidates = np.floor(2.0 ** exponents).astype(np.int64)

    dilations, counts = np.unique(candidates, return_counts=True)
    features_per_dilation = counts * per_kernel // grid_size  # exact integer floor
    remainder = per_kernel - int(features_per_dilation.sum())
    # remainder < number of unique dilations, so this never wraps
    features_per_dilation[:remainder] += 1

    return DilationPlan(
        dilations=dilations,
        features_per_dilation=features_per_dilation,
        max_exponent=max_exponent,
        input_length=int(input_length),
        num_features=int(num_features),
        max_dilations_per_kernel=int(max_dilations_per_kernel),
    )


def quantile_sequence(count: int) -> np.ndarray:
    """First ``count`` values of the golden-ratio low-discrepancy sequence.

    Value i is ``(i * phi) mod 1`` with i starting at 1; successive values
    spread evenly over [0, 1) without clustering, which is what assigns a
    well-spread set of pooling quantiles to each kernel/dilation combination.
    """
    if count < 1:
        raise ValueError("count must be positive")
    return (np.arange(1, count + 1, dtype=np.float64) * _GOLDEN_RATIO) % 1.0
