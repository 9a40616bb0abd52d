from __future__ import annotations

from collections.abc import Callable

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.feature_selection import SelectorMixin
from sklearn.utils.validation import check_is_fitted

from ..exceptions import DataError, EmptySelectionError
from ..info_theory import FrequencyTable, joint_frequencies, symmetrical_uncertainty
from ..validation import check_dataset, check_n_features
from ._infogain import rank_features


def predominant_features(
    su_class, su_pair: Callable[[int, int], float], threshold: float
) -> tuple[list[int], list[int]]:
    """Relevance filter followed by the redundancy sweep.

    Features with ``su_class >= threshold`` are ranked by descending SU with
    the class. Walking that list from the top, each surviving feature ``p``
    removes every later ``q`` with ``su_pair(q, p) >= su_class[q]``.

    Returns ``(relevant, selected)``, both in ranking order.
    """
    su_class = np.asarray(su_class, dtype=np.float64)
    relevant = [i for i in rank_features(su_class) if su_class[i] >= threshold]
    remaining = list(relevant)
    selected = []
    while remaining:
        p = remaining.pop(0)
        selected.append(p)
        remaining = [q for q in remaining if su_pair(q, p) < su_class[q]]
    return relevant, selected


class FCBFSelector(SelectorMixin, BaseEstimator):
    """Fast correlation-based filter.

    The number of kept features is decided by the data: every relevant feature
    (SU with the class at least ``threshold``) survives unless a better-ranked
    survivor is at least as correlated with it as the class is.

    Attributes
    ----------
    su_class_ : ndarray of shape (n_features,)
    relevant_ : list of int
        Features passing the threshold, descending SU.
    selected_ : list of int
        Predominant features, descending SU.
    """

    def __init__(self, threshold=0.05, n_partitions=1, workers=1):
        self.threshold = threshold
        self.n_partitions = n_partitions
        self.workers = workers

    def fit(self, X, y):
        for attr in ("class_tables_", "pair_tables_", "su_class_", "selected_"):
            self.__dict__.pop(attr, None)
        return self.partial_fit(X, y)

    def partial_fit(self, X, y):
        if not 0 <= self.threshold < 1:
            raise DataError(f"threshold must be in [0, 1), got {self.threshold}")
        X, y = check_dataset(X, y, encoded=False)
        if not hasattr(self, "class_tables_"):
            d = X.shape[1]
            self.n_features_in_ = d
            self.class_tables_ = [FrequencyTable() for _ in range(d)]
            self.pair_tables_ = {(i, j): FrequencyTable() for i in range(d) for j in range(i + 1, d)}
        check_n_features(X, self.n_features_in_)
        count = lambda a, b: joint_frequencies(a, b, self.n_partitions, self.workers)  # noqa: E731
        for i in range(self.n_features_in_):
            self.class_tables_[i] = self.class_tables_[i] + count(X[:, i], y)
        for (i, j), table in self.pair_tables_.items():
            self.pair_tables_[(i, j)] = table + count(X[:, i], X[:, j])
        self._select()
        return self

    def su_pair(self, i: int, j: int) -> float:
        """SU between two features of the fitted data."""
        check_is_fitted(self, "pair_tables_")
        if i == j:
            return 1.0
        return symmetrical_uncertainty(self.pair_tables_[(min(i, j), max(i, j))])

    def _select(self):
        self.su_class_ = np.array([symmetrical_uncertainty(t) for t in self.class_tables_])
        self.relevant_, self.selected_ = predominant_features(
            self.su_class_, self.su_pair, self.threshold
        )

    def _get_support_mask(self):
        check_is_fitted(self, "selected_")
        mask = np.zeros(self.n_features_in_, dtype=bool)
        mask[self.selected_] = True
        return mask

    def transform(self, X):
        check_is_fitted(self, "selected_")
        if not self.selected_:
            raise EmptySelectionError(
                f"no feature reached SU >= {self.threshold}; nothing to transform"
            )
        return super().transform(X)
