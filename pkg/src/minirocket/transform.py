"""Optimized transform: multiplication-free dilated convolution with PPV pooling.

The convolution for every kernel at a given dilation is assembled from two
precomputed ingredients: a shared accumulation of ``-x`` over all nine tap
alignments (as if every tap had weight -1), and per-tap alignments of ``3x``
added back at the three +2 taps (since 2 = -1 + 3).  Padding is virtual:
alignments are realized by index arithmetic with zero fill, never by
materializing padded arrays.  Scratch per example is at most 13 vectors
(-x, 3x, nine alignments, the shared accumulator, and the kernel output).
"""

import os

import numpy as np
from numba import njit, prange

from .kernels import KERNEL_LENGTH, generate_kernel_indices

__all__ = ["ppv", "convolve_one", "transform"]


def ppv(values, bias: float = 0.0) -> float:
    """Proportion of entries strictly greater than ``bias``.

    Ties sit exactly on the threshold and do not count as positive.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("ppv of an empty vector is undefined")
    return float(np.count_nonzero(values > bias) / values.size)


def _check_dilation(length: int, dilation: int):
    if dilation < 1:
        raise ValueError(f"dilation must be positive, got {dilation}")
    if (KERNEL_LENGTH - 1) * dilation > length - 1:
        raise ValueError(
            f"dilation {dilation} spans {(KERNEL_LENGTH - 1) * dilation + 1} points, "
            f"more than the input length {length}"
        )


def convolve_one(series, triple, dilation: int) -> np.ndarray:
    """Centered zero-padded dilated convolution of one series with one kernel.

    Output element i is ``sum_j w_j * x[i + (j - 4) * d]`` with out-of-range
    input treated as zero, so the output has the same length as the input.
    The arithmetic (additions of -x alignments, then the three 3x alignments
    in triple order) matches the batch transform exactly, add for add.
    """
    x = np.asarray(series, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("series must be one-dimensional")
    length = x.size
    _check_dilation(length, dilation)
    idx = np.asarray(triple, dtype=np.int64).ravel()
    if idx.size != 3 or idx.min() < 0 or idx.max() >= KERNEL_LENGTH:
        raise ValueError(f"invalid kernel triple {triple!r}")

    pad = 4 * dilation
    neg = -x
    tri = x + x + x

    base = neg.copy()
    rows = np.zeros((KERNEL_LENGTH, length))
    rows[4] = tri
    # taps left of centre contribute x shifted right by (4 - tap) * d
    end = length - pad
    for tap in range(4):
        base[length - end:] += neg[:end]
        rows[tap, length - end:] = tri[:end]
        end += dilation
    # taps right of centre contribute x shifted left by (tap - 4) * d
    start = dilation
    for tap in range(5, KERNEL_LENGTH):
        base[:length - start] += neg[start:]
        rows[tap, :length - start] = tri[start:]
        start += dilation

    return base + rows[idx[0]] + rows[idx[1]] + rows[idx[2]]


@njit(cache=True, parallel=True)
def _transform_kernel(X, triples, dilations, features_per_dilation, biases, parity_offset):
    num_examples, length = X.shape
    num_kernels = triples.shape[0]
    num_dilations = dilations.shape[0]
    per_kernel = 0
    for j in range(num_dilations):
        per_kernel += features_per_dilation[j]
    total = num_kernels * per_kernel

    out = np.zeros((num_examples, total), dtype=np.float64)

    for i in prange(num_examples):
        x = X[i]
        neg = -x
        tri = x + x + x
        conv = np.empty(length, dtype=np.float64)
        feature = 0
        for j in range(num_dilations):
            d = dilations[j]
            pad = 4 * d
            nfeat = features_per_dilation[j]

            base = neg.copy()
            rows = np.zeros((9, length), dtype=np.float64)
            rows[4] = tri
            end = length - pad
            for tap in range(4):
                base[length - end:] += neg[:end]
                rows[tap, length - end:] = tri[:end]
                end += d
            start = d
            for tap in range(5, 9):
                base[:length - start] += neg[start:]
                rows[tap, :length - start] = tri[start:]
                start += d

            for k in range(num_kernels):
                t0 = triples[k, 0]
                t1 = triples[k, 1]
                t2 = triples[k, 2]
                for m in range(length):
                    conv[m] = base[m] + rows[t0, m] + rows[t1, m] + rows[t2, m]

                if (j + k + parity_offset) % 2 == 1:
                    lo = pad
                    hi = length - pad
                else:
                    lo = 0
                    hi = length
                window = hi - lo

                for _ in range(nfeat):
                    b = biases[feature]
                    count = 0
                    for m in range(lo, hi):
                        if conv[m] > b:
                            count += 1
                    out[i, feature] = count / window
                    feature += 1

    return out


def _injected_parity_fault() -> int:
    # test hook: lets the self-test harness prove it detects a broken
    # padding rule (see cli selftest)
    return 1 if os.environ.get("MINIROCKET_FAULT_PARITY") == "1" else 0


def _series_matrix(dataset) -> np.ndarray:
    values = getattr(dataset, "values", dataset)
    values = np.ascontiguousarray(values, dtype=np.float64)
    if values.ndim == 1:
        values = values.reshape(1, -1)
    if values.ndim != 2 or values.shape[0] == 0:
        raise ValueError("expected a non-empty (examples, length) array of series")
    return values


def transform(dataset, params) -> np.ndarray:
    """Transform a dataset into its PPV feature matrix.

    Feature columns are laid out dilation-major, then kernel (lexicographic
    triple order), then bias index, matching the layout used when the biases
    were fitted.  Combinations alternate between pooling the full padded
    output and the output trimmed by ``4 * dilation`` at each end, so half
    use padding and half do not.  Rows are independent, so the result does
    not depend on how the example loop is parallelized.
    """
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
    return _transform_kernel(
        values,
        generate_kernel_indices(),
        plan.dilations,
        plan.features_per_dilation,
        np.ascontiguousarray(params.biases, dtype=np.float64),
        _injected_parity_fault(),
    )
