from __future__ import annotations

from bisect import bisect_left

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ..exceptions import DataError, NotFittedError
from ..validation import check_dataset, check_features, check_n_features
from ._cuts import apply_discretization
from ._mdl import entropy_cuts


class PiDLayers:
    """Two-layer partition discretizer state for one attribute.

    Layer 1 is a fine histogram with per-class counts. It starts as
    ``l1_bins`` equal-width intervals over ``value_range``; an interval
    holding more than ``alpha`` of everything seen is split, its counts halved
    between the two halves. The first and last intervals grow outward by one
    ``step`` instead of splitting at a midpoint.

    Layer 2 picks final cuts among the layer-1 breaks with recursive entropy
    minimization under the MDL rule.

    Counts are floats; halving is exact, so ``counts.sum() == total`` holds.
    """

    def __init__(self, alpha=0.10, l1_bins=5, value_range=(0.0, 1.0), step=None, n_classes=2):
        lo, hi = value_range
        if not hi > lo:
            raise DataError(f"value_range must be increasing, got {value_range}")
        if l1_bins < 2:
            raise DataError(f"l1_bins must be >= 2, got {l1_bins}")
        if not 0 < alpha < 1:
            raise DataError(f"alpha must be in (0, 1), got {alpha}")
        self.alpha = alpha
        width = (hi - lo) / l1_bins
        self.step = width if step is None else step
        self.breaks: list[float] = [lo + width * i for i in range(1, l1_bins)]
        self.class_counts = np.zeros((l1_bins, max(n_classes, 1)))
        self.counts = np.zeros(l1_bins)
        self.total = 0
        self.cuts = np.empty(0)

    @property
    def class_matrix(self) -> np.ndarray:
        """Classes x intervals view of the per-interval class counts."""
        return self.class_counts.T

    def update(self, value: float, label: int) -> None:
        if label >= self.class_counts.shape[1]:
            pad = label + 1 - self.class_counts.shape[1]
            self.class_counts = np.pad(self.class_counts, ((0, 0), (0, pad)))
        k = bisect_left(self.breaks, value)
        self.counts[k] += 1
        self.class_counts[k, label] += 1
        self.total += 1
        if self.counts[k] / self.total > self.alpha:
            self.split(k)

    def split(self, k: int) -> None:
        last = len(self.counts) - 1
        if k == 0:
            new_break, at = self.breaks[0] - self.step, 0
        elif k == last:
            new_break, at = self.breaks[-1] + self.step, len(self.breaks)
        else:
            lo, hi = self.breaks[k - 1], self.breaks[k]
            new_break, at = lo + (hi - lo) / 2.0, k
            if not lo < new_break < hi:
                return
        self.counts[k] /= 2.0
        self.class_counts[k] /= 2.0
        self.breaks.insert(at, new_break)
        self.counts = np.insert(self.counts, k, self.counts[k])
        self.class_counts = np.insert(self.class_counts, k, self.class_counts[k], axis=0)

    def refresh(self) -> np.ndarray:
        if self.total == 0:
            raise NotFittedError("layer 1 is empty")
        self.cuts = np.asarray(entropy_cuts(self.class_counts, self.breaks))
        return self.cuts


class PiDiscretizer(TransformerMixin, BaseEstimator):
    """Partition incremental discretization.

    Expects inputs already scaled into ``value_range`` (default [0, 1]); chain
    it after :class:`~streamprep.preprocessing.MinMaxScaler`. Values outside
    the range land in the open first or last interval.

    Parameters
    ----------
    alpha : float
        Fraction of the stream an interval may hold before it is split.
    l1_bins : int
        Initial number of equal-width layer-1 intervals.
    update_every : int
        Layer-2 cuts are recomputed every ``update_every`` instances during
        streaming, and once more at the end of every ``fit``/``partial_fit``.
    value_range : (float, float)
    step : float, optional
        Width of intervals added at the ends; defaults to the initial width.
    """

    def __init__(self, alpha=0.10, l1_bins=5, update_every=50, value_range=(0.0, 1.0), step=None):
        self.alpha = alpha
        self.l1_bins = l1_bins
        self.update_every = update_every
        self.value_range = value_range
        self.step = step

    def fit(self, X, y):
        self.__dict__.pop("layers_", None)
        return self.partial_fit(X, y)

    def partial_fit(self, X, y):
        X, y = check_dataset(X, y)
        if self.update_every < 1:
            raise DataError(f"update_every must be >= 1, got {self.update_every}")
        if not hasattr(self, "layers_"):
            self.n_features_in_ = X.shape[1]
            n_classes = int(y.max()) + 1
            self.layers_ = [
                PiDLayers(self.alpha, self.l1_bins, self.value_range, self.step, n_classes)
                for _ in range(self.n_features_in_)
            ]
        check_n_features(X, self.n_features_in_)
        for j, layers in enumerate(self.layers_):
            for v, label in zip(X[:, j].tolist(), y.tolist()):
                layers.update(v, label)
                if layers.total % self.update_every == 0:
                    layers.refresh()
            layers.refresh()
        return self

    @property
    def cut_points_(self) -> list[np.ndarray]:
        check_is_fitted(self, "layers_")
        return [layers.cuts for layers in self.layers_]

    def transform(self, X):
        check_is_fitted(self, "layers_")
        X = check_features(X)
        check_n_features(X, self.n_features_in_)
        return apply_discretization(X, self.cut_points_)
