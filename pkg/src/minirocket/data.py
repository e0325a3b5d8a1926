"""Dataset ingestion, synthesis, resampling, and file persistence.

Datasets are equal-length univariate series with one categorical label per
series.  The on-disk dataset format is one example per line, label first,
values delimited (tab by default).  Fitted parameters and trained models are
stored as versioned JSON; floats are written with full round-trip precision,
so save/load is value-exact.
"""

import json
from dataclasses import dataclass

import numpy as np

from .classify import LinearModel
from .fit import TransformParameters
from .kernels import DilationPlan, quantile_sequence

__all__ = [
    "TimeSeriesDataset",
    "load_delimited",
    "save_delimited",
    "synthesize",
    "stratified_resample",
    "save_parameters",
    "load_parameters",
    "save_model",
    "load_model",
    "save_features_csv",
    "save_predictions_csv",
]

MIN_SERIES_LENGTH = 9

_PARAMS_MAGIC = "minirocket-parameters"
_MODEL_MAGIC = "minirocket-model"
_FORMAT_VERSION = 1


@dataclass
class TimeSeriesDataset:
    """Equal-length univariate series with per-example string labels."""

    values: np.ndarray
    labels: np.ndarray
    name: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        self.labels = np.asarray(self.labels)
        if self.values.ndim != 2 or self.values.shape[0] == 0:
            raise ValueError("values must be a non-empty (examples, length) array")
        if self.values.shape[1] < MIN_SERIES_LENGTH:
            raise ValueError(
                f"series length {self.values.shape[1]} is below the minimum "
                f"of {MIN_SERIES_LENGTH}"
            )
        if self.labels.shape != (self.values.shape[0],):
            raise ValueError("need exactly one label per example")
        if not np.isfinite(self.values).all():
            raise ValueError("values must be finite (missing values are not supported)")

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def input_length(self) -> int:
        return int(self.values.shape[1])

    def subset(self, indices) -> "TimeSeriesDataset":
        indices = np.asarray(indices, dtype=np.int64)
        return TimeSeriesDataset(self.values[indices], self.labels[indices], self.name)


def load_delimited(path, delimiter: str = "\t", labeled: bool = True, name: str | None = None) -> TimeSeriesDataset:
    """Parse a delimited dataset file: one example per line, label first.

    Rejects ragged rows, non-numeric tokens and missing values, reporting
    the offending line number.  With ``labeled=False`` every column is a
    value and labels are left empty.
    """
    rows = []
    labels = []
    width = None
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip("\r\n")
            if not line:
                continue
            parts = line.split(delimiter)
            if labeled:
                if len(parts) < 2:
                    raise ValueError(f"{path}: line {lineno}: expected a label and values")
                label, tokens = parts[0], parts[1:]
            else:
                label, tokens = "", parts
            if width is None:
                width = len(tokens)
            elif len(tokens) != width:
                raise ValueError(
                    f"{path}: line {lineno}: expected {width} values, got {len(tokens)}"
                )
            try:
                values = [float(token) for token in tokens]
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: non-numeric value") from None
            if not all(np.isfinite(values)):
                raise ValueError(f"{path}: line {lineno}: missing or non-finite value")
            rows.append(values)
            labels.append(label)
    if not rows:
        raise ValueError(f"{path}: no examples found")
    return TimeSeriesDataset(np.array(rows), np.array(labels), name or str(path))


def save_delimited(dataset: TimeSeriesDataset, path, delimiter: str = "\t"):
    """Write a dataset in the delimited format; floats keep full precision."""
    with open(path, "w") as handle:
        for row, label in zip(dataset.values, dataset.labels):
            fields = [str(label)] + [f"{v:.17g}" for v in row]
            handle.write(delimiter.join(fields) + "\n")


def synthesize(
    kind: str,
    n_per_class: int = 50,
    length: int = 128,
    noise_sigma: float = 0.2,
    seed: int = 0,
) -> TimeSeriesDataset:
    """Generate a two-class synthetic dataset for experiments and tests.

    ``sine_freq``: class 0 is one sine period over the series, class 1 is
    two periods.  ``noise_vs_trend``: class 0 is flat, class 1 is a linear
    ramp from -1 to 1.  Both add Gaussian noise of the given sigma.
    """
    if n_per_class < 1:
        raise ValueError("n_per_class must be positive")
    if length < MIN_SERIES_LENGTH:
        raise ValueError(f"length must be at least {MIN_SERIES_LENGTH}")
    t = np.arange(length)
    if kind == "sine_freq":
        templates = [np.sin(2 * np.pi * t / length), np.sin(4 * np.pi * t / length)]
    elif kind == "noise_vs_trend":
        templates = [np.zeros(length), np.linspace(-1.0, 1.0, length)]
    else:
        raise ValueError(f"unknown synthetic kind {kind!r}")

    rng = np.random.default_rng(seed)
    blocks = [
        template + rng.normal(0.0, noise_sigma, size=(n_per_class, length))
        for template in templates
    ]
    labels = np.array([str(c) for c in (0, 1) for _ in range(n_per_class)])
    return TimeSeriesDataset(np.vstack(blocks), labels, name=f"synthetic-{kind}")


def stratified_resample(dataset: TimeSeriesDataset, train_fraction: float, seed: int = 0):
    """Split a dataset into disjoint, exhaustive, per-class proportional halves.

    Every class must have at least two examples; each class keeps at least
    one example on both sides, so class proportions are preserved within one
    example.  The same seed always produces the same split.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must lie strictly between 0 and 1")
    rng = np.random.default_rng(seed)
    train_idx = []
    test_idx = []
    for cls in np.unique(dataset.labels):
        members = np.flatnonzero(dataset.labels == cls)
        if members.size < 2:
            raise ValueError(f"class {cls!r} has a single example and cannot be split")
        chosen = rng.permutation(members)
        k = int(round(train_fraction * members.size))
        k = min(max(k, 1), members.size - 1)
        train_idx.append(chosen[:k])
        test_idx.append(chosen[k:])
    train_idx = np.sort(np.concatenate(train_idx))
    test_idx = np.sort(np.concatenate(test_idx))
    return dataset.subset(train_idx), dataset.subset(test_idx)


def save_parameters(params: TransformParameters, path):
    """Persist fitted transform parameters as versioned JSON."""
    plan = params.plan
    doc = {
        "magic": _PARAMS_MAGIC,
        "version": _FORMAT_VERSION,
        "input_length": plan.input_length,
        "num_features": plan.num_features,
        "max_dilations_per_kernel": plan.max_dilations_per_kernel,
        "max_exponent": plan.max_exponent,
        "dilations": plan.dilations.tolist(),
        "features_per_dilation": plan.features_per_dilation.tolist(),
        "variant": params.variant,
        "seed": params.seed,
        "biases": params.biases.tolist(),
    }
    with open(path, "w") as handle:
        json.dump(doc, handle)
        handle.write("\n")


def _check_header(doc: dict, magic: str, path):
    if doc.get("magic") != magic:
        raise ValueError(f"{path}: not a {magic} file")
    if doc.get("version") != _FORMAT_VERSION:
        raise ValueError(
            f"{path}: unsupported format version {doc.get('version')!r} "
            f"(expected {_FORMAT_VERSION})"
        )


def load_parameters(path) -> TransformParameters:
    """Load transform parameters saved by :func:`save_parameters`.

    The quantile sequence is implicit in the layout and recomputed.
    """
    with open(path) as handle:
        doc = json.load(handle)
    _check_header(doc, _PARAMS_MAGIC, path)
    plan = DilationPlan(
        dilations=np.array(doc["dilations"], dtype=np.int64),
        features_per_dilation=np.array(doc["features_per_dilation"], dtype=np.int64),
        max_exponent=float(doc["max_exponent"]),
        input_length=int(doc["input_length"]),
        num_features=int(doc["num_features"]),
        max_dilations_per_kernel=int(doc["max_dilations_per_kernel"]),
    )
    seed = doc["seed"]
    return TransformParameters(
        plan=plan,
        quantiles=quantile_sequence(plan.total_features),
        biases=np.array(doc["biases"], dtype=np.float64),
        variant=doc["variant"],
        seed=None if seed is None else int(seed),
    )


def save_model(model: LinearModel, path):
    """Persist a trained linear model as versioned JSON."""
    doc = {
        "magic": _MODEL_MAGIC,
        "version": _FORMAT_VERSION,
        "kind": model.kind,
        "class_labels": [str(c) for c in model.class_labels],
        "feature_means": model.feature_means.tolist(),
        "feature_scales": model.feature_scales.tolist(),
        "weights": model.weights.tolist(),
        "intercepts": model.intercepts.tolist(),
    }
    with open(path, "w") as handle:
        json.dump(doc, handle)
        handle.write("\n")


def load_model(path) -> LinearModel:
    """Load a model saved by :func:`save_model`."""
    with open(path) as handle:
        doc = json.load(handle)
    _check_header(doc, _MODEL_MAGIC, path)
    return LinearModel(
        kind=doc["kind"],
        class_labels=np.array(doc["class_labels"]),
        feature_means=np.array(doc["feature_means"], dtype=np.float64),
        feature_scales=np.array(doc["feature_scales"], dtype=np.float64),
        weights=np.array(doc["weights"], dtype=np.float64),
        intercepts=np.array(doc["intercepts"], dtype=np.float64),
    )


def save_features_csv(features, labels, path):
    """Export a feature matrix as CSV with header ``f0..f{k-1},label``."""
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels)
    if features.ndim != 2 or labels.shape[0] != features.shape[0]:
        raise ValueError("features must be 2-D with one label per row")
    header = ",".join([f"f{i}" for i in range(features.shape[1])] + ["label"])
    with open(path, "w") as handle:
        handle.write(header + "\n")
        for row, label in zip(features, labels):
            handle.write(",".join(f"{v:.17g}" for v in row) + f",{label}\n")


def save_predictions_csv(predictions, path):
    """Write predicted labels as a two-column CSV (index, prediction)."""
    with open(path, "w") as handle:
        handle.write("index,prediction\n")
        for i, label in enumerate(np.asarray(predictions)):
            handle.write(f"{i},{label}\n")
