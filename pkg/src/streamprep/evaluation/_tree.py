from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ..exceptions import DataError
from ..validation import check_dataset, check_features, check_n_features


def gini(counts: np.ndarray) -> np.ndarray:
    """Gini impurity along the last axis; empty rows give 0."""
    n = counts.sum(axis=-1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        p = np.where(n > 0, counts / n, 0.0)
    return 1.0 - (p * p).sum(axis=-1)


def best_split(X: np.ndarray, y: np.ndarray, n_classes: int, min_leaf: int):
    """Lowest weighted-Gini ``(feature, threshold, impurity)`` or None.

    Thresholds are midpoints between consecutive distinct values. Ties go to
    the lower feature index, then the lower threshold.
    """
    n = len(y)
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y] = 1.0
    best = None
    for f in range(X.shape[1]):
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        left = np.cumsum(onehot[order], axis=0)[:-1]
        right = left[-1] + onehot[order[-1]] - left if n > 1 else left
        n_left = np.arange(1, n)
        ok = (xs[1:] > xs[:-1]) & (n_left >= min_leaf) & (n - n_left >= min_leaf)
        if not ok.any():
            continue
        score = (n_left * gini(left) + (n - n_left) * gini(right)) / n
        score[~ok] = np.inf
        i = int(np.argmin(score))
        if best is None or score[i] < best[2]:
            best = (f, xs[i] + (xs[i + 1] - xs[i]) / 2.0, float(score[i]))
    return best


class GiniTree(ClassifierMixin, BaseEstimator):
    """Binary CART classifier on Gini impurity.

    Stops at ``max_depth``, at pure nodes, or when no split leaves at least
    ``min_leaf`` samples on both sides. Leaves predict their majority label
    (smallest label on ties).
    """

    def __init__(self, max_depth=10, min_leaf=5):
        self.max_depth = max_depth
        self.min_leaf = min_leaf

    def fit(self, X, y):
        X, y = check_dataset(X, y)
        if self.min_leaf < 1 or self.max_depth < 0:
            raise DataError("min_leaf must be >= 1 and max_depth >= 0")
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.unique(y)
        n_classes = int(y.max()) + 1
        # parallel arrays; leaves have feature -1
        self.feature_, self.threshold_, self.left_, self.right_, self.value_ = [], [], [], [], []
        self._grow(X, y, n_classes, 0)
        self.feature_ = np.array(self.feature_)
        self.threshold_ = np.array(self.threshold_)
        self.left_ = np.array(self.left_)
        self.right_ = np.array(self.right_)
        self.value_ = np.array(self.value_)
        return self

    def _grow(self, X, y, n_classes, depth) -> int:
        node = len(self.feature_)
        counts = np.bincount(y, minlength=n_classes)
        for arr, v in zip(
            (self.feature_, self.threshold_, self.left_, self.right_, self.value_),
            (-1, 0.0, -1, -1, int(counts.argmax())),
        ):
            arr.append(v)
        if depth >= self.max_depth or np.count_nonzero(counts) <= 1:
            return node
        split = best_split(X, y, n_classes, self.min_leaf)
        if split is None:
            return node
        f, t, _ = split
        mask = X[:, f] <= t
        self.feature_[node], self.threshold_[node] = f, t
        self.left_[node] = self._grow(X[mask], y[mask], n_classes, depth + 1)
        self.right_[node] = self._grow(X[~mask], y[~mask], n_classes, depth + 1)
        return node

    @property
    def depth_(self) -> int:
        check_is_fitted(self, "feature_")

        def walk(i):
            if self.feature_[i] < 0:
                return 0
            return 1 + max(walk(self.left_[i]), walk(self.right_[i]))

        return walk(0)

    def apply(self, X) -> np.ndarray:
        """Index of the leaf each row ends up in."""
        check_is_fitted(self, "feature_")
        X = check_features(X)
        check_n_features(X, self.n_features_in_)
        node = np.zeros(len(X), dtype=np.int64)
        active = self.feature_[node] >= 0
        while active.any():
            idx = np.flatnonzero(active)
            nd = node[idx]
            go_left = X[idx, self.feature_[nd]] <= self.threshold_[nd]
            node[idx] = np.where(go_left, self.left_[nd], self.right_[nd])
            active = self.feature_[node] >= 0
        return node

    def predict(self, X):
        return self.value_[self.apply(X)]
