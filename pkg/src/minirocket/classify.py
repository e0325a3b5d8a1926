"""Linear classifiers over the feature matrix.

The default classifier is one-vs-all ridge regression on +/-1 targets with
the regularization strength chosen by efficient leave-one-out error (from a
single SVD, no refitting).  For training sets too large for that to be
practical, a softmax model is trained with Adam under a
halve-on-plateau / stop-on-plateau schedule.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_REG_GRID",
    "LinearModel",
    "PlateauController",
    "TrainingSchedule",
    "choose_classifier",
    "logistic_fit",
    "predict",
    "ridge_fit",
]

# 10 log-spaced regularization values spanning under- to over-regularized
DEFAULT_REG_GRID = np.logspace(-3, 3, 10)

RIDGE_MAX_TRAIN = 10_000  # above this, switch to the iterative classifier


@dataclass
class LinearModel:
    """Per-class linear scores over standardized features; argmax predicts."""

    kind: str
    class_labels: np.ndarray
    feature_means: np.ndarray
    feature_scales: np.ndarray
    weights: np.ndarray  # (features, classes)
    intercepts: np.ndarray  # (classes,)

    def __post_init__(self):
        if self.kind not in ("ridge", "logistic"):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if np.any(self.feature_scales <= 0):
            raise ValueError("feature scales must all be positive")

    @property
    def num_features(self) -> int:
        return int(self.weights.shape[0])


@dataclass(frozen=True)
class TrainingSchedule:
    """Hyperparameters of the iterative training loop."""

    validation_size: int = 2048
    minibatch: int = 256
    initial_lr: float = 1e-4
    lr_halving_patience: int = 50
    stopping_patience: int = 100
    transform_batch: int = 4096

    def __post_init__(self):
        numbers = (
            self.validation_size,
            self.minibatch,
            self.initial_lr,
            self.lr_halving_patience,
            self.stopping_patience,
            self.transform_batch,
        )
        if any(v <= 0 for v in numbers):
            raise ValueError("all schedule values must be positive")
        if self.stopping_patience < self.lr_halving_patience:
            raise ValueError("stopping patience must be at least the halving patience")


class PlateauController:
    """Validation-loss plateau tracker driving lr halving and early stopping.

    An improvement is any strictly lower validation loss.  After
    ``halving_patience`` consecutive non-improving updates the learning rate
    is halved (again at every further multiple); after ``stopping_patience``
    the controller signals a stop.
    """

    def __init__(self, initial_lr: float, halving_patience: int = 50, stopping_patience: int = 100):
        if stopping_patience < halving_patience:
            raise ValueError("stopping patience must be at least the halving patience")
        self.lr = float(initial_lr)
        self.halving_patience = int(halving_patience)
        self.stopping_patience = int(stopping_patience)
        self.best_loss = math.inf
        self.updates_since_improvement = 0

    def observe(self, loss: float) -> str:
        """Record one validation loss; returns improved / none / halved / stop."""
        if loss < self.best_loss:
            self.best_loss = loss
            self.updates_since_improvement = 0
            return "improved"
        self.updates_since_improvement += 1
        if self.updates_since_improvement >= self.stopping_patience:
            return "stop"
        if self.updates_since_improvement % self.halving_patience == 0:
            self.lr /= 2.0
            return "halved"
        return "none"


def choose_classifier(num_train: int) -> str:
    """Pick the classifier for a training-set size: ridge up to 10,000 examples."""
    if num_train < 1:
        raise ValueError("training set size must be positive")
    return "ridge" if num_train <= RIDGE_MAX_TRAIN else "logistic"


def _standardization(X: np.ndarray):
    means = X.mean(axis=0)
    scales = X.std(axis=0)
    scales[scales == 0.0] = 1.0  # constant columns pass through unscaled
    return means, scales


def _class_targets(labels):
    classes, indices = np.unique(labels, return_inverse=True)
    if classes.size < 2:
        raise ValueError("need at least two classes to fit a classifier")
    return classes, indices


def ridge_fit(features, labels, reg_grid=None) -> LinearModel:
    """Fit the one-vs-all ridge classifier with leave-one-out grid selection.

    Features are standardized per column; targets are +/-1 per class.  For
    each candidate regularization value, the leave-one-out squared error is
    evaluated from the SVD of the standardized matrix (fitted values and
    leverages, no refitting); the best value is then used for the final
    weights.  Completely deterministic.
    """
    X = np.asarray(features, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("features must be a non-empty 2-D matrix")
    if np.isnan(X).any():
        raise ValueError("features contain NaN")
    labels = np.asarray(labels)
    if labels.shape[0] != X.shape[0]:
        raise ValueError("labels must match the number of feature rows")
    grid = DEFAULT_REG_GRID if reg_grid is None else np.asarray(reg_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0 or np.any(grid <= 0):
        raise ValueError("regularization grid must be positive values")

    classes, class_idx = _class_targets(labels)
    n, _ = X.shape
    targets = np.full((n, classes.size), -1.0)
    targets[np.arange(n), class_idx] = 1.0

    means, scales = _standardization(X)
    Xs = (X - means) / scales
    target_means = targets.mean(axis=0)
    Yc = targets - target_means

    U, s, Vt = np.linalg.svd(Xs, full_matrices=False)
    UtY = U.T @ Yc
    U2 = U**2
    s2 = s**2

    loo_errors = np.empty(grid.size)
    for g, lam in enumerate(grid):
        shrink = s2 / (s2 + lam)
        fitted = U @ (shrink[:, None] * UtY)
        leverage = U2 @ shrink
        residual = (Yc - fitted) / (1.0 - leverage)[:, None]
        loo_errors[g] = np.mean(residual**2)

    lam = grid[int(np.argmin(loo_errors))]
    coef = s / (s2 + lam)
    weights = Vt.T @ (coef[:, None] * UtY)

    return LinearModel(
        kind="ridge",
        class_labels=classes,
        feature_means=means,
        feature_scales=scales,
        weights=weights,
        intercepts=target_means,
    )


def predict(model: LinearModel, features) -> np.ndarray:
    """Predict labels by argmax of class scores; ties go to the lower class index."""
    X = np.asarray(features, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.shape[1] != model.num_features:
        raise ValueError(
            f"feature count {X.shape[1]} does not match model ({model.num_features})"
        )
    scores = ((X - model.feature_means) / model.feature_scales) @ model.weights
    scores += model.intercepts
    return model.class_labels[np.argmax(scores, axis=1)]


def _softmax_loss_grad(Xb, yb, weights, intercepts):
    scores = Xb @ weights + intercepts
    scores -= scores.max(axis=1, keepdims=True)
    exp = np.exp(scores)
    probs = exp / exp.sum(axis=1, keepdims=True)
    batch = Xb.shape[0]
    loss = -np.mean(np.log(probs[np.arange(batch), yb] + 1e-300))
    probs[np.arange(batch), yb] -= 1.0
    probs /= batch
    return loss, Xb.T @ probs, probs.sum(axis=0)


def _softmax_loss(Xb, yb, weights, intercepts):
    scores = Xb @ weights + intercepts
    shifted = scores - scores.max(axis=1, keepdims=True)
    lse = np.log(np.exp(shifted).sum(axis=1))
    return float(np.mean(lse - shifted[np.arange(Xb.shape[0]), yb]))


def logistic_fit(
    transform_fn,
    train,
    schedule: TrainingSchedule | None = None,
    seed: int = 0,
    max_updates: int = 100_000,
) -> LinearModel:
    """Train the softmax classifier with Adam for large training sets.

    The training set is shuffled once; the first ``validation_size``
    examples of the shuffled order are held out.  ``transform_fn`` is called
    on batches of at most ``transform_batch`` raw series and the transformed
    features are cached, so multiple passes never repeat the transform.
    Minibatches of ``minibatch`` cached rows drive Adam updates (decay rates
    0.9/0.999, epsilon 1e-8); validation loss is evaluated after every
    update and fed to the plateau controller.  Returns the weights from the
    best validation loss seen.  ``max_updates`` is a safety bound only.
    """
    schedule = schedule or TrainingSchedule()
    if hasattr(train, "values") and hasattr(train, "labels"):
        values, labels = train.values, train.labels
    else:
        values, labels = train
    values = np.asarray(values, dtype=np.float64)
    labels = np.asarray(labels)
    if labels.shape[0] != values.shape[0]:
        raise ValueError("training data must provide one label per series")
    n = values.shape[0]
    if n <= schedule.validation_size:
        raise ValueError(
            f"training set of {n} examples is not larger than the validation "
            f"holdout ({schedule.validation_size}); use ridge_fit instead"
        )

    classes, class_idx = _class_targets(labels)

    rng = np.random.default_rng(seed)
    order = rng.permutation(n)  # shuffled once, never again

    first = transform_fn(values[order[:min(schedule.transform_batch, n)]])
    first = np.asarray(first, dtype=np.float64)
    num_features = first.shape[1]
    cache = np.empty((n, num_features))
    cache[:first.shape[0]] = first
    pos = first.shape[0]
    while pos < n:
        stop = min(pos + schedule.transform_batch, n)
        cache[pos:stop] = transform_fn(values[order[pos:stop]])
        pos = stop
    y = class_idx[order]

    v_size = schedule.validation_size
    X_val, y_val = cache[:v_size], y[:v_size]
    X_train, y_train = cache[v_size:], y[v_size:]

    means, scales = _standardization(X_train)
    X_train = (X_train - means) / scales
    X_val = (X_val - means) / scales

    num_classes = classes.size
    weights = np.zeros((num_features, num_classes))
    intercepts = np.zeros(num_classes)
    best_weights, best_intercepts = weights.copy(), intercepts.copy()

    beta1, beta2, eps = 0.9, 0.999, 1e-8
    m_w = np.zeros_like(weights)
    v_w = np.zeros_like(weights)
    m_b = np.zeros_like(intercepts)
    v_b = np.zeros_like(intercepts)

    controller = PlateauController(
        schedule.initial_lr, schedule.lr_halving_patience, schedule.stopping_patience
    )

    num_train = X_train.shape[0]
    steps_per_epoch = (num_train + schedule.minibatch - 1) // schedule.minibatch
    update = 0
    stopped = False
    while not stopped and update < max_updates:
        for step in range(steps_per_epoch):
            lo = step * schedule.minibatch
            hi = min(lo + schedule.minibatch, num_train)
            _, g_w, g_b = _softmax_loss_grad(X_train[lo:hi], y_train[lo:hi], weights, intercepts)

            update += 1
            m_w = beta1 * m_w + (1 - beta1) * g_w
            v_w = beta2 * v_w + (1 - beta2) * g_w**2
            m_b = beta1 * m_b + (1 - beta1) * g_b
            v_b = beta2 * v_b + (1 - beta2) * g_b**2
            bias1 = 1 - beta1**update
            bias2 = 1 - beta2**update
            weights -= controller.lr * (m_w / bias1) / (np.sqrt(v_w / bias2) + eps)
            intercepts -= controller.lr * (m_b / bias1) / (np.sqrt(v_b / bias2) + eps)

            action = controller.observe(_softmax_loss(X_val, y_val, weights, intercepts))
            if action == "improved":
                best_weights = weights.copy()
                best_intercepts = intercepts.copy()
            elif action == "stop":
                stopped = True
                break
            if update >= max_updates:
                stopped = True
                break

    return LinearModel(
        kind="logistic",
        class_labels=classes,
        feature_means=means,
        feature_scales=scales,
        weights=best_weights,
        intercepts=best_intercepts,
    )
