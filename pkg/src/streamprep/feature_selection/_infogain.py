from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.feature_selection import SelectorMixin
from sklearn.utils.validation import check_is_fitted

from ..exceptions import DataError
from ..info_theory import FrequencyTable, info_gain, joint_frequencies
from ..validation import check_dataset, check_n_features


def rank_features(scores) -> list[int]:
    """Indices by descending score; equal scores keep the lower index first.

    Scores are compared after rounding to 12 decimals, so values that are
    equal in exact arithmetic but differ in the last bits still tie.
    """
    scores = np.round(np.asarray(scores, dtype=np.float64), 12)
    return sorted(range(len(scores)), key=lambda i: (-scores[i], i))


class InfoGainSelector(SelectorMixin, BaseEstimator):
    """Keep the ``n_select`` features with the highest information gain.

    Gains are ``H(class) - H(class | feature)`` computed from exact value
    counts, so continuous inputs should be discretized beforehand.

    Parameters
    ----------
    n_select : int
        Number of features to keep.
    n_partitions, workers : int
        Partitioning used for the per-feature frequency counts.

    Attributes
    ----------
    gains_ : ndarray of shape (n_features,)
    selected_ : list of int
        Kept feature indices in ranking order.
    """

    def __init__(self, n_select=1, n_partitions=1, workers=1):
        self.n_select = n_select
        self.n_partitions = n_partitions
        self.workers = workers

    def fit(self, X, y):
        for attr in ("tables_", "gains_", "selected_"):
            self.__dict__.pop(attr, None)
        return self.partial_fit(X, y)

    def partial_fit(self, X, y):
        X, y = check_dataset(X, y, encoded=False)
        if not hasattr(self, "tables_"):
            self.n_features_in_ = X.shape[1]
            if not 1 <= self.n_select <= self.n_features_in_:
                raise DataError(
                    f"n_select must be in [1, {self.n_features_in_}], got {self.n_select}"
                )
            self.tables_ = [FrequencyTable() for _ in range(self.n_features_in_)]
        check_n_features(X, self.n_features_in_)
        for i in range(self.n_features_in_):
            # keyed (class, value): IG of the class given the feature
            self.tables_[i] = self.tables_[i] + joint_frequencies(
                y, X[:, i], self.n_partitions, self.workers
            )
        self.gains_ = np.array([info_gain(t) for t in self.tables_])
        self.selected_ = rank_features(self.gains_)[: self.n_select]
        return self

    def _get_support_mask(self):
        check_is_fitted(self, "selected_")
        mask = np.zeros(self.n_features_in_, dtype=bool)
        mask[self.selected_] = True
        return mask
