from __future__ import annotations

from bisect import bisect_left
from collections import Counter, deque

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted
from sortedcontainers import SortedDict

from ..exceptions import DataError, NotFittedError
from ..info_theory import quadratic_entropy
from ..validation import check_dataset, check_features, check_n_features
from ._cuts import apply_discretization


def _majority(counts: Counter) -> int:
    best = max(counts.values())
    return min(label for label, c in counts.items() if c == best)


class Interval:
    """One LOFD interval: its upper bound and a histogram of the points inside."""

    __slots__ = ("upper", "points", "counts", "n")

    def __init__(self, upper: float):
        self.upper = upper
        self.points: SortedDict = SortedDict()  # value -> Counter(label -> count)
        self.counts: Counter = Counter()
        self.n = 0

    def add(self, value: float, label: int, count: int = 1) -> None:
        self.points.setdefault(value, Counter())[label] += count
        self.counts[label] += count
        self.n += count

    def remove(self, value: float, label: int) -> None:
        cell = self.points[value]
        cell[label] -= 1
        if cell[label] == 0:
            del cell[label]
            if not cell:
                del self.points[value]
        self.counts[label] -= 1
        if self.counts[label] == 0:
            del self.counts[label]
        self.n -= 1

    @property
    def label(self) -> int:
        return _majority(self.counts)

    def class_vector(self, n_classes: int) -> np.ndarray:
        out = np.zeros(n_classes)
        for label, c in self.counts.items():
            out[label] = c
        return out

    def split_at(self, value: float) -> tuple["Interval", "Interval"]:
        left, right = Interval(value), Interval(self.upper)
        cut = self.points.bisect_right(value)
        for i, (v, cell) in enumerate(self.points.items()):
            target = left if i < cut else right
            for label, c in cell.items():
                target.add(v, label, c)
        return left, right

    def merged_with(self, other: "Interval") -> "Interval":
        out = Interval(max(self.upper, other.upper))
        for src in (self, other):
            for v, cell in src.points.items():
                for label, c in cell.items():
                    out.add(v, label, c)
        return out


def gini_cost(counts: np.ndarray) -> float:
    return quadratic_entropy(counts)


def smoothed_cost(counts: np.ndarray, lam: float = 1.0, alpha: float = 0.975) -> float:
    """Laplace-smoothed quadratic entropy plus a per-interval penalty.

    The penalty ``(1 - alpha) * m * lam`` is paid once per interval, so merging
    near-identical neighbours lowers the total cost.
    """
    m = len(counts)
    n = counts.sum()
    p = (counts + lam) / (n + m * lam)
    return float(alpha * n * np.sum(p * (1.0 - p)) + (1.0 - alpha) * m * lam)


class LOFDAttribute:
    """Online interval scheme for a single attribute.

    After ``init_th`` points the buffered sample is split into equal-frequency
    intervals and adjacent intervals are merged while that lowers the cost.
    Afterwards every point lands in its ceiling interval, a point above the
    current maximum opens a new last interval, class boundary points split
    their interval, and the oldest points are evicted once more than
    ``capacity`` are retained.
    """

    def __init__(self, init_th=1, capacity=10000, n_init_bins=5, criterion="gini", n_classes=2):
        if init_th < 1:
            raise DataError(f"init_th must be >= 1, got {init_th}")
        if capacity < init_th:
            raise DataError(f"capacity ({capacity}) must be >= init_th ({init_th})")
        if criterion not in ("gini", "smoothed"):
            raise DataError(f"unknown merge criterion {criterion!r}")
        self.init_th = init_th
        self.capacity = capacity
        self.n_init_bins = n_init_bins
        self.criterion = criterion
        self.n_classes = n_classes
        self.intervals: list[Interval] = []
        self.bounds: list[float] = []
        self.queue: deque = deque()
        self.t = 0
        self._buffer: list[tuple[float, int]] = []

    @property
    def initialized(self) -> bool:
        return bool(self.intervals)

    def _cost(self, interval_counts: np.ndarray) -> float:
        if self.criterion == "gini":
            return gini_cost(interval_counts)
        return smoothed_cost(interval_counts)

    def update(self, value: float, label: int) -> None:
        self.t += 1
        self.n_classes = max(self.n_classes, label + 1)
        self.queue.append((value, label, self.t))
        if not self.initialized:
            self._buffer.append((value, label))
            if len(self._buffer) >= self.init_th:
                self._initialize()
            return
        if value > self.bounds[-1]:
            interval = Interval(value)
            interval.add(value, label)
            self.intervals.append(interval)
            self.bounds.append(value)
            self._try_merge(len(self.intervals) - 2)
        else:
            i = bisect_left(self.bounds, value)
            self.intervals[i].add(value, label)
            self._split_boundaries(i, value)
        while len(self.queue) > self.capacity:
            self._evict()

    def _initialize(self) -> None:
        points = sorted(self._buffer)
        self._buffer = []
        n = len(points)
        k = max(1, min(self.n_init_bins, n))
        uppers = sorted({points[(j + 1) * n // k - 1][0] for j in range(k)})
        self.bounds = list(uppers)
        self.intervals = [Interval(u) for u in uppers]
        for v, label in points:
            self.intervals[bisect_left(self.bounds, v)].add(v, label)
        merged = True
        while merged:
            merged = False
            i = 0
            while i < len(self.intervals) - 1:
                if self._try_merge(i):
                    merged = True
                else:
                    i += 1

    def _try_merge(self, i: int) -> bool:
        if i < 0 or i + 1 >= len(self.intervals):
            return False
        left, right = self.intervals[i], self.intervals[i + 1]
        if left.n == 0 or right.n == 0:
            return False
        a, b = left.class_vector(self.n_classes), right.class_vector(self.n_classes)
        if not self._cost(a + b) < self._cost(a) + self._cost(b):
            return False
        self.intervals[i : i + 2] = [left.merged_with(right)]
        del self.bounds[i]
        return True

    def _split_boundaries(self, i: int, value: float) -> None:
        interval = self.intervals[i]
        keys = interval.points
        pos = keys.index(value)
        here = _majority(keys[value])
        split_points = []
        if pos > 0 and _majority(keys.peekitem(pos - 1)[1]) != here:
            split_points.append(keys.peekitem(pos - 1)[0])
        if pos + 1 < len(keys) and _majority(keys.peekitem(pos + 1)[1]) != here:
            split_points.append(value)
        if not split_points:
            return
        for cut in sorted(split_points, reverse=True):
            j = bisect_left(self.bounds, cut)
            left, right = self.intervals[j].split_at(cut)
            self.intervals[j : j + 1] = [left, right]
            self.bounds.insert(j, cut)
        # re-check the divided intervals and their neighbours
        lo = max(i - 1, 0)
        hi = min(i + len(split_points) + 1, len(self.intervals) - 1)
        j = lo
        while j < hi and j < len(self.intervals) - 1:
            if self._try_merge(j):
                hi -= 1
            else:
                j += 1

    def _evict(self) -> None:
        value, label, _ = self.queue.popleft()
        i = bisect_left(self.bounds, value)
        interval = self.intervals[i]
        interval.remove(value, label)
        if interval.n == 0 and len(self.intervals) > 1:
            del self.intervals[i]
            del self.bounds[i]

    def cut_points(self) -> np.ndarray:
        if not self.initialized:
            raise NotFittedError(f"LOFD needs {self.init_th} instances before it has cut points")
        return np.asarray(self.bounds[:-1], dtype=np.float64)

    def check(self) -> None:
        """Raise AssertionError if the interval scheme is inconsistent."""
        assert len(self.queue) <= self.capacity
        if not self.initialized:
            return
        assert all(a < b for a, b in zip(self.bounds, self.bounds[1:])), "bounds not ascending"
        assert [iv.upper for iv in self.intervals] == self.bounds
        lower = -np.inf
        for iv in self.intervals:
            assert iv.n == sum(iv.counts.values()) == sum(sum(c.values()) for c in iv.points.values())
            if iv.points:
                assert lower < iv.points.keys()[0] and iv.points.keys()[-1] <= iv.upper
            lower = iv.upper
        assert sum(iv.n for iv in self.intervals) == len(self.queue)


class LOFDiscretizer(TransformerMixin, BaseEstimator):
    """Local online fusion discretizer.

    Supervised. ``transform`` on an unfitted instance trains on ``(X, y)``
    first when labels are given.

    Parameters
    ----------
    init_th : int
        Points buffered per attribute before the initial interval scheme.
    capacity : int
        Maximum retained points per attribute; the oldest are evicted first.
    n_init_bins : int
        Equal-frequency intervals built at initialization, before merging.
    criterion : {"gini", "smoothed"}
        Merge cost. ``"gini"`` is mass-weighted quadratic entropy; since it
        never strictly decreases on a merge, merges only happen with
        ``"smoothed"``, the Laplace-smoothed variant with a per-interval
        penalty.
    """

    def __init__(self, init_th=1, capacity=10000, n_init_bins=5, criterion="gini"):
        self.init_th = init_th
        self.capacity = capacity
        self.n_init_bins = n_init_bins
        self.criterion = criterion

    def fit(self, X, y):
        self.__dict__.pop("attributes_", None)
        return self.partial_fit(X, y)

    def partial_fit(self, X, y):
        X, y = check_dataset(X, y)
        if not hasattr(self, "attributes_"):
            self.n_features_in_ = X.shape[1]
            n_classes = int(y.max()) + 1
            self.attributes_ = [
                LOFDAttribute(self.init_th, self.capacity, self.n_init_bins, self.criterion, n_classes)
                for _ in range(self.n_features_in_)
            ]
        check_n_features(X, self.n_features_in_)
        labels = y.tolist()
        for j, attr in enumerate(self.attributes_):
            for v, label in zip(X[:, j].tolist(), labels):
                attr.update(v, label)
        return self

    @property
    def cut_points_(self) -> list[np.ndarray]:
        check_is_fitted(self, "attributes_")
        return [a.cut_points() for a in self.attributes_]

    def transform(self, X, y=None):
        if not hasattr(self, "attributes_"):
            if y is None:
                raise NotFittedError("LOFDiscretizer needs labels to train; call fit or pass y")
            self.fit(X, y)
        X = check_features(X)
        check_n_features(X, self.n_features_in_)
        return apply_discretization(X, self.cut_points_)
