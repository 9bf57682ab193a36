import numpy as np
import pytest

from delayboost.encode import FeatureMatrix


def make_matrix(values, labels, names=None) -> FeatureMatrix:
    values = np.asarray(values, dtype=np.float64)
    if names is None:
        names = tuple(f"x{i}" for i in range(values.shape[1]))
    return FeatureMatrix(values, np.asarray(labels, dtype=np.int64), tuple(names))


def separable_matrix(n=200, seed=42) -> FeatureMatrix:
    """Deterministic 2-D linearly separable fixture with margin."""
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 2))
    y = (X @ np.array([1.5, -2.0]) + 0.5 > 0).astype(int)
    return make_matrix(X, y)


@pytest.fixture
def separable():
    return separable_matrix()
