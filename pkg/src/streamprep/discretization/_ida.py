from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ..exceptions import DataError, NotFittedError
from ..validation import check_features, check_n_features
from ._cuts import apply_discretization
from ._interval_heap import IntervalHeap
from ._reservoir import reservoir_slot


class IDASketch:
    """Reservoir sample of one attribute held as a vector of interval heaps.

    Heap ``j`` holds the ``j``-th quantile slice of the sample: every value in
    heap ``j`` is <= every value in heap ``j+1`` and the sizes follow
    ``floor((j+1)t/m) - floor(jt/m)`` for ``t`` stored values and ``m`` bins.
    """

    def __init__(self, n_bins: int, sample_size: int, rng: np.random.Generator):
        if n_bins < 1:
            raise DataError(f"n_bins must be >= 1, got {n_bins}")
        if sample_size < 1:
            raise DataError(f"sample_size must be >= 1, got {sample_size}")
        self.n_bins = n_bins
        self.sample_size = sample_size
        self.n_seen = 0
        self.heaps = [IntervalHeap() for _ in range(n_bins)]
        self._rng = rng

    def __len__(self) -> int:
        return sum(len(h) for h in self.heaps)

    def update(self, value: float) -> None:
        self.n_seen += 1
        slot = reservoir_slot(self.n_seen, self.sample_size, self._rng)
        if slot is None:
            return
        if self.n_seen > self.sample_size:
            self._remove_nth(slot)
        self._insert(value)
        self._rebalance()

    def _remove_nth(self, n: int) -> None:
        # n indexes the sample in heap order, so each stored value is equally likely
        for h in self.heaps:
            if n < len(h):
                h.remove_at(n)
                return
            n -= len(h)
        raise IndexError("sample slot out of range")

    def _insert(self, value: float) -> None:
        for h in self.heaps:
            if h and value <= h.max():
                h.push(value)
                return
        self.heaps[-1].push(value)

    def _target(self, j: int, total: int) -> int:
        m = self.n_bins
        return (j + 1) * total // m - j * total // m

    def _rebalance(self) -> None:
        heaps = self.heaps
        total = len(self)
        for j in range(self.n_bins - 1):
            want = self._target(j, total)
            while len(heaps[j]) > want:
                heaps[j + 1].push(heaps[j].pop_max())
            while len(heaps[j]) < want:
                k = next(k for k in range(j + 1, self.n_bins) if heaps[k])
                heaps[j].push(heaps[k].pop_min())

    def cut_points(self) -> np.ndarray:
        """Cuts between adjacent non-empty heaps.

        The cut is the midpoint of ``max(left)`` and ``min(right)``, or the
        shared value when they are equal. Duplicates are collapsed and cuts at
        or above the sample maximum, which would leave the last bin empty, are
        dropped.
        """
        if self.n_seen == 0:
            raise NotFittedError("no values seen for this attribute")
        filled = [h for h in self.heaps if h]
        top = filled[-1].max()
        cuts = []
        for left, right in zip(filled, filled[1:]):
            lo, hi = left.max(), right.min()
            cut = lo + (hi - lo) / 2.0 if lo < hi else lo
            if cut < top:
                cuts.append(cut)
        return np.unique(np.asarray(cuts, dtype=np.float64))

    def sample(self) -> np.ndarray:
        return np.sort(np.fromiter((v for h in self.heaps for v in h), dtype=np.float64))


class IDADiscretizer(TransformerMixin, BaseEstimator):
    """Incremental quantile discretization from a per-attribute reservoir sample.

    Unsupervised; ``y`` is accepted and ignored. ``transform`` on an unfitted
    instance first learns the cuts from the data being transformed.

    Parameters
    ----------
    n_bins : int
        Target number of equal-frequency bins.
    sample_size : int
        Reservoir capacity per attribute.
    random_state : int, optional
        Seed for the reservoir replacement draws.

    Attributes
    ----------
    sketches_ : list of IDASketch
    cut_points_ : list of ndarray
    """

    def __init__(self, n_bins=5, sample_size=1000, random_state=0):
        self.n_bins = n_bins
        self.sample_size = sample_size
        self.random_state = random_state

    def fit(self, X, y=None):
        self.__dict__.pop("sketches_", None)
        return self.partial_fit(X, y)

    def partial_fit(self, X, y=None):
        X = check_features(X)
        if not hasattr(self, "sketches_"):
            d = X.shape[1]
            self.n_features_in_ = d
            seeds = np.random.SeedSequence(self.random_state).spawn(d)
            self.sketches_ = [
                IDASketch(self.n_bins, self.sample_size, np.random.default_rng(s)) for s in seeds
            ]
        check_n_features(X, self.n_features_in_)
        for j, sketch in enumerate(self.sketches_):
            for v in X[:, j].tolist():
                sketch.update(v)
        return self

    @property
    def cut_points_(self) -> list[np.ndarray]:
        check_is_fitted(self, "sketches_")
        return [s.cut_points() for s in self.sketches_]

    def transform(self, X, y=None):
        if not hasattr(self, "sketches_"):
            self.fit(X)
        X = check_features(X)
        check_n_features(X, self.n_features_in_)
        return apply_discretization(X, self.cut_points_)
