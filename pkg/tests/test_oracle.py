"""Reference-oracle contracts and its linear-runtime behavior."""

import statistics
import time

import numpy as np
import pytest

from minirocket import (
    convolve_naive,
    convolve_one,
    equivalence_fuzz,
    fit_biases,
    generate_kernel_indices,
    kernel_weights,
    plan_dilations,
    transform,
    transform_naive,
)


class TestConvolveNaive:
    def test_impulse_reproduces_reversed_kernel(self):
        x = np.zeros(21)
        x[10] = 1.0
        out = convolve_naive(x, kernel_weights([6, 7, 8]), 1)
        expected = np.zeros(21)
        expected[6:15] = [2, 2, 2, -1, -1, -1, -1, -1, -1]
        np.testing.assert_array_equal(out, expected)

    def test_zero_input_gives_exact_zeros(self):
        out = convolve_naive(np.zeros(30), kernel_weights([1, 4, 7]), 2)
        assert np.all(out == 0.0)

    def test_constant_input_annihilated_on_full_windows(self):
        x = np.full(64, -2.25)
        out = convolve_naive(x, kernel_weights([0, 4, 8]), 3)
        pad = 4 * 3
        assert np.abs(out[pad:64 - pad]).max() < 1e-12
        # fringe values follow the partial window sums, nonzero in general
        assert np.abs(out[:pad]).max() > 1.0

    def test_oversized_dilation_rejected(self):
        with pytest.raises(ValueError):
            convolve_naive(np.zeros(16), kernel_weights([0, 1, 2]), 2)

    def test_wrong_weight_count_rejected(self):
        with pytest.raises(ValueError):
            convolve_naive(np.zeros(16), np.ones(8), 1)

    def test_matches_optimized_convolution_on_1000_cases(self):
        rng = np.random.default_rng(12)
        triples = generate_kernel_indices()
        worst = 0.0
        for _ in range(1000):
            length = int(rng.integers(9, 200))
            dilation = int(rng.integers(1, (length - 1) // 8 + 1))
            k = int(rng.integers(84))
            x = rng.normal(size=length)
            naive = convolve_naive(x, kernel_weights(triples[k]), dilation)
            fast = convolve_one(x, triples[k], dilation)
            worst = max(worst, np.abs(naive - fast).max())
        assert worst <= 1e-9


class TestTransformNaive:
    def test_column_count_is_84_times_feature_budget(self):
        rng = np.random.default_rng(13)
        values = rng.normal(size=(3, 70))
        plan = plan_dilations(70, 420)
        params = fit_biases(values, plan, seed=2)
        features = transform_naive(values, params)
        assert features.shape == (3, 84 * plan.features_per_dilation.sum())

    def test_agrees_with_optimized_transform(self):
        rng = np.random.default_rng(14)
        values = rng.normal(size=(5, 90))
        params = fit_biases(values, plan_dilations(90, 336), seed=3)
        naive = transform_naive(values, params)
        fast = transform(values, params)
        assert np.abs(naive - fast).max() <= 1e-6

    def test_features_bounded(self):
        rng = np.random.default_rng(15)
        values = rng.normal(size=(4, 64))
        params = fit_biases(values, plan_dilations(64, 168), seed=4)
        features = transform_naive(values, params)
        assert features.min() >= 0.0 and features.max() <= 1.0

    def test_length_mismatch_rejected(self):
        rng = np.random.default_rng(16)
        params = fit_biases(rng.normal(size=(2, 64)), plan_dilations(64, 84), seed=0)
        with pytest.raises(ValueError):
            transform_naive(rng.normal(size=(2, 63)), params)

    def test_runtime_roughly_linear_in_length(self):
        # doubling the series length should roughly double the runtime;
        # lengths are large enough that vector work dominates call overhead
        rng = np.random.default_rng(17)
        times = {}
        for length in (8192, 16384):
            values = rng.normal(size=(3, length))
            params = fit_biases(values, plan_dilations(length, 420), seed=0)
            transform_naive(values, params)  # warm-up
            samples = []
            for _ in range(3):
                start = time.perf_counter()
                transform_naive(values, params)
                samples.append(time.perf_counter() - start)
            times[length] = statistics.median(samples)
        ratio = times[16384] / times[8192]
        assert 1.4 <= ratio <= 2.6, f"length-doubling ratio {ratio:.2f}"


class TestEquivalenceFuzz:
    def test_rejects_non_positive_case_count(self):
        with pytest.raises(ValueError):
            equivalence_fuzz(0)

    def test_small_run_is_tight(self):
        assert equivalence_fuzz(4, seed=99) <= 1e-6
