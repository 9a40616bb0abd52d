from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ..exceptions import DataError
from ..validation import check_dataset, check_features, check_n_features


def nearest_indices(train: np.ndarray, query: np.ndarray, k: int) -> np.ndarray:
    """Indices of the ``k`` nearest training rows to each query row.

    Squared Euclidean distance computed by explicit differences, so equal
    distances compare equal; ties go to the lower training index.
    """
    n = len(train)
    k = min(k, n)
    out = np.empty((len(query), k), dtype=np.int64)
    chunk = max(1, 2_000_000 // max(1, n * train.shape[1]))
    for start in range(0, len(query), chunk):
        q = query[start:start + chunk]
        dist = ((q[:, None, :] - train[None, :, :]) ** 2).sum(axis=2)
        kth = np.partition(dist, k - 1, axis=1)[:, k - 1]
        for r in range(len(q)):
            closer = np.flatnonzero(dist[r] < kth[r])
            closer = closer[np.argsort(dist[r, closer], kind="stable")]
            tied = np.flatnonzero(dist[r] == kth[r])[: k - len(closer)]
            out[start + r] = np.concatenate([closer, tied])
    return out


class KNNClassifier(ClassifierMixin, BaseEstimator):
    """Brute-force k-nearest-neighbours majority vote.

    Vote ties go to the smallest label.
    """

    def __init__(self, n_neighbors=3):
        self.n_neighbors = n_neighbors

    def fit(self, X, y):
        if self.n_neighbors < 1:
            raise DataError(f"n_neighbors must be >= 1, got {self.n_neighbors}")
        X, y = check_dataset(X, y)
        self.X_, self.y_ = X, y
        self.classes_ = np.unique(y)
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "X_")
        X = check_features(X)
        check_n_features(X, self.n_features_in_)
        idx = nearest_indices(self.X_, X, self.n_neighbors)
        labels = self.y_[idx]
        n_labels = int(self.y_.max()) + 1
        votes = np.zeros((len(X), n_labels), dtype=np.int64)
        np.add.at(votes, (np.repeat(np.arange(len(X)), labels.shape[1]), labels.ravel()), 1)
        return votes.argmax(axis=1)
