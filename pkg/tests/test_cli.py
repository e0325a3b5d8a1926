"""Command-line interface: subcommands, file formats, exit codes."""

import os
import subprocess
import sys

import numpy as np
import pytest

from minirocket import load_parameters, save_delimited, synthesize
from minirocket.cli import main


@pytest.fixture
def train_file(tmp_path):
    dataset = synthesize("sine_freq", n_per_class=12, length=64, noise_sigma=0.0, seed=3)
    path = tmp_path / "train.tsv"
    save_delimited(dataset, path)
    return path


class TestFit:
    def test_writes_parameters_and_reports_plan(self, tmp_path, train_file, capsys):
        out = tmp_path / "params.json"
        code = main(["fit", str(train_file), "--num-features", "840", "--out", str(out)])
        assert code == 0
        text = capsys.readouterr().out
        assert "84 kernels x 10 = 840" in text
        params = load_parameters(out)
        assert params.variant == "default" and params.seed == 0

    def test_default_budget_reports_9996(self, tmp_path, train_file, capsys):
        out = tmp_path / "params.json"
        assert main(["fit", str(train_file), "--out", str(out)]) == 0
        assert "9996" in capsys.readouterr().out

    def test_minimum_budget_reports_single_dilation(self, tmp_path, train_file, capsys):
        out = tmp_path / "params.json"
        assert main(["fit", str(train_file), "--num-features", "84", "--out", str(out)]) == 0
        text = capsys.readouterr().out
        assert "84 kernels x 1 = 84" in text
        assert "dilations:         1" in text

    def test_seed_with_deterministic_is_contradictory(self, tmp_path, train_file, capsys):
        out = tmp_path / "params.json"
        code = main(
            ["fit", str(train_file), "--deterministic", "--seed", "3", "--out", str(out)]
        )
        assert code == 1
        assert "deterministic" in capsys.readouterr().err

    def test_deterministic_variant_saved(self, tmp_path, train_file):
        out = tmp_path / "params.json"
        assert main(["fit", str(train_file), "--deterministic", "--num-features", "168",
                     "--out", str(out)]) == 0
        params = load_parameters(out)
        assert params.variant == "deterministic" and params.seed is None

    def test_missing_file_exits_1(self, tmp_path):
        code = main(["fit", str(tmp_path / "nope.tsv"), "--out", str(tmp_path / "p.json")])
        assert code == 1


class TestTrainPredict:
    def _fit(self, tmp_path, train_file):
        params = tmp_path / "params.json"
        assert main(["fit", str(train_file), "--num-features", "420", "--out", str(params)]) == 0
        return params

    def test_auto_picks_ridge_and_reports_times(self, tmp_path, train_file, capsys):
        params = self._fit(tmp_path, train_file)
        model = tmp_path / "model.json"
        code = main(["train", str(params), str(train_file), "--model-out", str(model)])
        assert code == 0
        text = capsys.readouterr().out
        assert "ridge (auto)" in text
        assert "transform time" in text and "classifier time" in text
        assert model.exists()

    def test_predict_training_data_perfectly(self, tmp_path, train_file, capsys):
        params = self._fit(tmp_path, train_file)
        model = tmp_path / "model.json"
        main(["train", str(params), str(train_file), "--model-out", str(model)])
        capsys.readouterr()
        preds = tmp_path / "preds.csv"
        code = main(["predict", str(params), str(train_file), "--model", str(model),
                     "--out", str(preds)])
        assert code == 0
        assert "accuracy:          1.0000" in capsys.readouterr().out
        lines = preds.read_text().splitlines()
        assert lines[0] == "index,prediction"
        assert len(lines) == 25

    def test_unlabeled_predict_writes_csv_without_accuracy(self, tmp_path, train_file, capsys):
        params = self._fit(tmp_path, train_file)
        model = tmp_path / "model.json"
        main(["train", str(params), str(train_file), "--model-out", str(model)])
        raw = tmp_path / "unlabeled.tsv"
        dataset = synthesize("sine_freq", n_per_class=2, length=64, noise_sigma=0.0, seed=4)
        raw.write_text(
            "\n".join("\t".join(f"{v:.17g}" for v in row) for row in dataset.values) + "\n"
        )
        capsys.readouterr()
        preds = tmp_path / "preds.csv"
        code = main(["predict", str(params), str(raw), "--model", str(model),
                     "--unlabeled", "--out", str(preds)])
        assert code == 0
        assert "accuracy" not in capsys.readouterr().out
        assert preds.exists()

    def test_logistic_on_small_set_exits_1_and_mentions_ridge(self, tmp_path, train_file, capsys):
        params = self._fit(tmp_path, train_file)
        code = main(["train", str(params), str(train_file), "--classifier", "logistic",
                     "--model-out", str(tmp_path / "m.json")])
        assert code == 1
        assert "ridge_fit" in capsys.readouterr().err

    def test_feature_count_mismatch_exits_1(self, tmp_path, train_file, capsys):
        params = self._fit(tmp_path, train_file)
        model = tmp_path / "model.json"
        main(["train", str(params), str(train_file), "--model-out", str(model)])
        other = tmp_path / "other.json"
        assert main(["fit", str(train_file), "--num-features", "168", "--out", str(other)]) == 0
        capsys.readouterr()
        code = main(["predict", str(other), str(train_file), "--model", str(model)])
        assert code == 1
        assert "features" in capsys.readouterr().err


class TestSelftest:
    def test_small_run_passes(self, capsys):
        assert main(["selftest", "--cases", "3", "--seed", "7"]) == 0
        assert "selftest ok" in capsys.readouterr().out

    def test_zero_cases_rejected(self, capsys):
        assert main(["selftest", "--cases", "0"]) == 1

    def test_injected_parity_fault_detected(self):
        env = dict(os.environ, MINIROCKET_FAULT_PARITY="1")
        result = subprocess.run(
            [sys.executable, "-m", "minirocket.cli", "selftest", "--cases", "2", "--seed", "1"],
            env=env,
            capture_output=True,
            text=True,
        )
        assert result.returncode == 2
        assert "FAILED" in result.stdout


class TestBench:
    def test_emits_table_and_csv(self, tmp_path, capsys):
        out = tmp_path / "bench.csv"
        code = main(["bench", "--lengths", "64", "--examples", "4", "--repeats", "1",
                     "--num-features", "168", "--out", str(out)])
        assert code == 0
        text = capsys.readouterr().out
        assert "fast_ms" in text and "speedup" in text
        lines = out.read_text().splitlines()
        assert lines[0] == "length,examples,fast_ms,naive_ms,speedup"
        assert len(lines) == 2
        length, n, fast_ms, naive_ms, speedup = lines[1].split(",")
        assert (int(length), int(n)) == (64, 4)
        assert float(fast_ms) > 0 and float(naive_ms) > 0 and float(speedup) > 0

    def test_median_of_three_repeats_runs(self, capsys):
        assert main(["bench", "--lengths", "64", "--examples", "2", "--repeats", "3",
                     "--num-features", "84"]) == 0

    def test_zero_repeats_rejected(self):
        assert main(["bench", "--lengths", "64", "--examples", "2", "--repeats", "0"]) == 1


class TestUsageErrors:
    def test_unknown_command_exits_1(self):
        assert main(["frobnicate"]) == 1

    def test_missing_required_argument_exits_1(self):
        assert main(["fit"]) == 1

    def test_bad_threads_exits_1(self, capsys):
        assert main(["selftest", "--cases", "1", "--threads", "0"]) == 1
