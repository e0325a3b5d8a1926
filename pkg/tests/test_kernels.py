"""Kernel set, dilation planning and quantile sequence contracts."""

import itertools
import math

import numpy as np
import pytest

from minirocket import (
    DilationPlan,
    generate_kernel_indices,
    kernel_weights,
    plan_dilations,
    quantile_sequence,
    total_num_features,
)

GOLDEN = (1 + math.sqrt(5)) / 2


class TestKernelIndices:
    def test_exactly_84_triples(self):
        assert generate_kernel_indices().shape == (84, 3)

    def test_lexicographic_order_endpoints(self):
        triples = generate_kernel_indices()
        assert triples[0].tolist() == [0, 1, 2]
        assert triples[-1].tolist() == [6, 7, 8]

    def test_strictly_increasing_within_bounds(self):
        triples = generate_kernel_indices()
        assert triples.min() == 0 and triples.max() == 8
        assert np.all(np.diff(triples, axis=1) > 0)

    def test_set_equals_all_3_combinations(self):
        expected = set(itertools.combinations(range(9), 3))
        got = {tuple(t) for t in generate_kernel_indices().tolist()}
        assert got == expected
        assert len(got) == 84  # no duplicates


class TestKernelWeights:
    def test_last_triple_pattern(self):
        expected = [-1, -1, -1, -1, -1, -1, 2, 2, 2]
        assert kernel_weights([6, 7, 8]).tolist() == expected

    def test_spread_triple_pattern(self):
        expected = [2, -1, -1, -1, 2, -1, -1, -1, 2]
        assert kernel_weights([0, 4, 8]).tolist() == expected

    def test_all_kernels_sum_to_zero(self):
        for triple in generate_kernel_indices():
            assert kernel_weights(triple).sum() == 0.0

    @pytest.mark.parametrize("bad", [[0, 1, 9], [-1, 2, 3], [0, 0, 1], [1, 2]])
    def test_invalid_triples_rejected(self, bad):
        with pytest.raises(ValueError):
            kernel_weights(bad)


def _scripted_plan(input_length, num_features, max_dilations):
    """Independent evaluation of the schedule formula, pure python."""
    per_kernel = num_features // 84
    grid = min(per_kernel, max_dilations)
    max_exponent = math.log2((input_length - 1) / 8)
    if grid == 1:
        candidates = [1]
    else:
        candidates = [int(math.floor(2.0 ** ((i * max_exponent) / (grid - 1)))) for i in range(grid)]
    dilations = sorted(set(candidates))
    counts = {d: candidates.count(d) for d in dilations}
    features = [counts[d] * per_kernel // grid for d in dilations]
    remainder = per_kernel - sum(features)
    for i in range(remainder):
        features[i] += 1
    return dilations, features, max_exponent


class TestDilationPlan:
    def test_minimum_length_collapses_to_dilation_one(self):
        plan = plan_dilations(9, 9996, 32)
        assert plan.dilations.tolist() == [1]
        assert plan.features_per_dilation.tolist() == [119]
        assert plan.max_exponent == 0.0

    @pytest.mark.parametrize("length", [9, 17, 100, 511, 1024])
    def test_max_exponent_formula(self, length):
        plan = plan_dilations(length)
        assert plan.max_exponent == math.log2((length - 1) / 8)

    @pytest.mark.parametrize(
        "length,num_features,max_dilations",
        [(1024, 9996, 32), (128, 9996, 32), (300, 840, 32), (64, 84, 32), (5000, 2520, 16)],
    )
    def test_matches_independent_scripted_evaluation(self, length, num_features, max_dilations):
        plan = plan_dilations(length, num_features, max_dilations)
        dilations, features, max_exponent = _scripted_plan(length, num_features, max_dilations)
        assert plan.dilations.tolist() == dilations
        assert plan.features_per_dilation.tolist() == features
        assert plan.max_exponent == max_exponent

    def test_default_1024_budget_and_reach(self):
        plan = plan_dilations(1024, 9996, 32)
        assert plan.features_per_dilation.sum() == 119
        assert 8 * plan.dilations.max() <= 1023

    def test_pure_function(self):
        a = plan_dilations(333, 1234, 7)
        b = plan_dilations(333, 1234, 7)
        assert np.array_equal(a.dilations, b.dilations)
        assert np.array_equal(a.features_per_dilation, b.features_per_dilation)

    def test_invariants_hold_over_random_inputs(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            length = int(rng.integers(9, 3000))
            num_features = int(rng.integers(84, 20000))
            max_dilations = int(rng.integers(1, 64))
            plan = plan_dilations(length, num_features, max_dilations)
            assert np.all(np.diff(plan.dilations) > 0)
            assert np.all(plan.features_per_dilation >= 1)
            assert plan.features_per_dilation.sum() == num_features // 84
            assert 8 * plan.dilations.max() <= length - 1
            assert plan.num_combinations <= 84 * max_dilations

    def test_rejects_short_inputs_and_small_budgets(self):
        with pytest.raises(ValueError):
            plan_dilations(8)
        with pytest.raises(ValueError):
            plan_dilations(100, num_features=83)

    def test_plan_validation_catches_bad_fields(self):
        with pytest.raises(ValueError):
            DilationPlan(
                dilations=np.array([4, 2]),
                features_per_dilation=np.array([1, 1]),
                max_exponent=1.0,
                input_length=100,
                num_features=168,
            )
        with pytest.raises(ValueError):
            DilationPlan(
                dilations=np.array([50]),
                features_per_dilation=np.array([2]),
                max_exponent=1.0,
                input_length=100,
                num_features=168,
            )


class TestQuantileSequence:
    def test_first_value_is_fractional_golden_ratio(self):
        assert quantile_sequence(1)[0] == pytest.approx(GOLDEN - 1, abs=1e-15)

    def test_second_value(self):
        assert quantile_sequence(2)[1] == pytest.approx(2 * GOLDEN - 3, abs=1e-15)

    def test_all_values_in_unit_interval(self):
        q = quantile_sequence(10000)
        assert q.shape == (10000,)
        assert np.all((q >= 0) & (q < 1))

    def test_rejects_non_positive_count(self):
        with pytest.raises(ValueError):
            quantile_sequence(0)


class TestTotalNumFeatures:
    @pytest.mark.parametrize("requested,expected", [(10000, 9996), (84, 84), (200, 168), (9996, 9996)])
    def test_rounds_down_to_multiple_of_84(self, requested, expected):
        assert total_num_features(requested) == expected

    def test_rejects_budget_below_one_per_kernel(self):
        with pytest.raises(ValueError):
            total_num_features(83)
