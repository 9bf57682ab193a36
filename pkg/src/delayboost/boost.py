"""Gradient boosting classifier on binomial deviance, built on regression trees.

Training starts from the log-odds prior f0 = log(p1 / (1 - p1)) and runs M
rounds of functional gradient descent.  Each round fits a least-squares tree
to the residuals r_i = y_i - sigmoid(f(x_i)), the negative gradient of the
deviance, then replaces every leaf value with the one-step Newton optimum for
that leaf,

    gamma_L = sum_{i in L} r_i / sum_{i in L} p_i (1 - p_i),

which solves the per-region line search to second order.  Scores update as
f(x_i) += learning_rate * gamma_leaf(x_i), so a stored tree's leaf values
already include the line-search step and prediction only applies shrinkage:

    f_M(x) = f0 + learning_rate * sum_m tree_m(x).

The raw score's sign tells which side of the 0.5-probability boundary a row
falls on; sigmoid(f_M(x)) is the delay probability.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .encode import EncodingPlan, FeatureMatrix
from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    InvalidThresholdError,
    NonFiniteFeatureError,
    SingleClassTrainingError,
)
from .tree import RegressionTree, TreeParams, fit_tree

_NEWTON_GUARD = 1e-12


@dataclass(frozen=True)
class BoostParams:
    estimators: int = 100
    learning_rate: float = 0.1
    tree_params: TreeParams = field(default_factory=TreeParams)
    seed: int = 0

    def __post_init__(self):
        if self.estimators < 0:
            raise ValueError("estimators must be >= 0")
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError("learning_rate must be in (0, 1]")


@dataclass(frozen=True)
class BoostedModel:
    f0: float
    learning_rate: float
    trees: tuple[RegressionTree, ...]
    n_features: int
    plan: EncodingPlan | None = None


@dataclass(frozen=True)
class TrainingTrace:
    """Per-iteration training deviance and accuracy; index 0 is the prior."""

    deviance: tuple[float, ...]
    accuracy: tuple[float, ...]


def sigmoid(f):
    """Numerically stable logistic function; no overflow for any finite score."""
    f = np.asarray(f, dtype=np.float64)
    out = np.empty_like(f)
    pos = f >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-f[pos]))
    ef = np.exp(f[~pos])
    out[~pos] = ef / (1.0 + ef)
    return out


def mean_deviance(y: np.ndarray, f: np.ndarray) -> float:
    """Mean negative log-likelihood of the logistic model at raw scores f."""
    y = np.asarray(y)
    f = np.asarray(f, dtype=np.float64)
    return float(np.mean(np.where(y == 1, np.logaddexp(0.0, -f), np.logaddexp(0.0, f))))


def fit_gbc(train: FeatureMatrix, params: BoostParams):
    """Train a boosted model; returns (BoostedModel, TrainingTrace).

    Raises:
        SingleClassTrainingError: training labels are all one class.
        NonFiniteFeatureError: NaN or infinity in the feature matrix.
    """
    X = train.values
    y = train.labels
    if not np.all(np.isfinite(X)):
        raise NonFiniteFeatureError("features contain NaN or infinity")
    n_pos = int((y == 1).sum())
    if n_pos == 0 or n_pos == y.size:
        raise SingleClassTrainingError("training data must contain both classes")

    p1 = n_pos / y.size
    f0 = float(np.log(p1 / (1.0 - p1)))
    f = np.full(y.size, f0)

    deviance = [mean_deviance(y, f)]
    accuracy = [_accuracy(y, f)]
    trees = []
    for _ in range(params.estimators):
        p = sigmoid(f)
        residual = y - p
        tree = fit_tree(X, residual, params.tree_params)
        weight = p * (1.0 - p)
        values = tree.value.copy()
        for leaf, rows in tree.leaf_indices.items():
            denom = weight[rows].sum()
            gamma = residual[rows].sum() / denom if denom >= _NEWTON_GUARD else 0.0
            values[leaf] = gamma
            f[rows] += params.learning_rate * gamma
        trees.append(replace(tree, value=values, leaf_indices=None))
        deviance.append(mean_deviance(y, f))
        accuracy.append(_accuracy(y, f))

    model = BoostedModel(
        f0=f0,
        learning_rate=params.learning_rate,
        trees=tuple(trees),
        n_features=X.shape[1],
        plan=train.plan,
    )
    return model, TrainingTrace(tuple(deviance), tuple(accuracy))


def _accuracy(y, f) -> float:
    return float(np.mean((f >= 0.0).astype(np.int64) == y))


def decision_function(model: BoostedModel, x):
    """Raw additive score f_M(x); scalar for a single row, array for a matrix.

    Positive means the predicted delay probability exceeds 0.5.
    """
    X, single = _as_rows(x, model.n_features)
    scores = np.full(X.shape[0], model.f0)
    for tree in model.trees:
        scores += model.learning_rate * tree.predict(X)
    return float(scores[0]) if single else scores


def predict_proba(model: BoostedModel, x):
    """Probability of the positive (delayed) class."""
    scores = decision_function(model, x)
    if np.isscalar(scores):
        return float(sigmoid(np.array([scores]))[0])
    return sigmoid(scores)


def predict_label(model: BoostedModel, x, threshold: float = 0.5):
    """1 iff the predicted probability is >= threshold."""
    if not 0.0 < threshold < 1.0:
        raise InvalidThresholdError(f"threshold must be in (0, 1), got {threshold}")
    proba = predict_proba(model, x)
    if np.isscalar(proba):
        return int(proba >= threshold)
    return (proba >= threshold).astype(np.int64)


def staged_deviance(model: BoostedModel, fm: FeatureMatrix) -> np.ndarray:
    """Mean deviance on fm using the first m trees, for m = 0..M."""
    if fm.n_rows == 0:
        raise EmptyInputError("staged deviance needs at least one row")
    X, _ = _as_rows(fm.values, model.n_features)
    y = fm.labels
    f = np.full(X.shape[0], model.f0)
    out = [mean_deviance(y, f)]
    for tree in model.trees:
        f += model.learning_rate * tree.predict(X)
        out.append(mean_deviance(y, f))
    return np.asarray(out)


def _as_rows(x, n_features: int):
    X = np.asarray(x, dtype=np.float64)
    single = X.ndim == 1
    if single:
        X = X.reshape(1, -1)
    if X.ndim != 2 or X.shape[1] != n_features:
        raise DimensionMismatchError(
            f"expected {n_features} features, got shape {X.shape}"
        )
    return X, single
