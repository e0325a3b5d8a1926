"""Fast, almost-deterministic convolutional feature transform for time series.

A small fixed set of 84 two-valued dilated convolution kernels is pooled by
the proportion of positive values against biases drawn from quantiles of
actual convolution outputs.  The optimized transform is multiplication-free;
a plain reference implementation serves as ground truth; linear classifiers
turn the features into predictions.
"""

from .classify import (
    DEFAULT_REG_GRID,
    LinearModel,
    PlateauController,
    TrainingSchedule,
    choose_classifier,
    logistic_fit,
    predict,
    ridge_fit,
)
from .data import (
    TimeSeriesDataset,
    load_delimited,
    load_model,
    load_parameters,
    save_delimited,
    save_features_csv,
    save_model,
    save_parameters,
    save_predictions_csv,
    stratified_resample,
    synthesize,
)
from .fit import (
    TransformParameters,
    VARIANT_DEFAULT,
    VARIANT_DETERMINISTIC,
    fit_biases,
    fit_biases_deterministic,
    quantile,
)
from .kernels import (
    DEFAULT_MAX_DILATIONS_PER_KERNEL,
    DEFAULT_NUM_FEATURES,
    KERNEL_LENGTH,
    NUM_KERNELS,
    DilationPlan,
    generate_kernel_indices,
    kernel_weights,
    plan_dilations,
    quantile_sequence,
    total_num_features,
)
from .oracle import convolve_naive, equivalence_fuzz, transform_naive
from .transform import convolve_one, ppv, transform

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_DILATIONS_PER_KERNEL",
    "DEFAULT_NUM_FEATURES",
    "DEFAULT_REG_GRID",
    "DilationPlan",
    "KERNEL_LENGTH",
    "LinearModel",
    "NUM_KERNELS",
    "PlateauController",
    "TimeSeriesDataset",
    "TrainingSchedule",
    "TransformParameters",
    "VARIANT_DEFAULT",
    "VARIANT_DETERMINISTIC",
    "choose_classifier",
    "convolve_naive",
    "convolve_one",
    "equivalence_fuzz",
    "fit_biases",
    "fit_biases_deterministic",
    "generate_kernel_indices",
    "kernel_weights",
    "load_delimited",
    "load_model",
    "load_parameters",
    "logistic_fit",
    "plan_dilations",
    "ppv",
    "predict",
    "quantile",
    "quantile_sequence",
    "ridge_fit",
    "save_delimited",
    "save_features_csv",
    "save_model",
    "save_parameters",
    "save_predictions_csv",
    "stratified_resample",
    "synthesize",
    "total_num_features",
    "transform",
    "transform_naive",
]
