"""Counting and information-theoretic measures over categorical values.

All logarithms are base 2. Continuous attributes are counted by exact value;
discretize first if you want binned probabilities.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from typing import Any

import numpy as np

from . import dataflow

__all__ = [
    "FrequencyTable",
    "frequencies",
    "joint_frequencies",
    "entropy",
    "entropy_from_counts",
    "conditional_entropy",
    "info_gain",
    "symmetrical_uncertainty",
    "quadratic_entropy",
]


class FrequencyTable(Mapping):
    """Joint counts keyed by ``(x, y)`` pairs.

    Behaves as a read-only mapping. Tables add with ``+``, which is how the
    partial counts of different partitions are merged.
    """

    __slots__ = ("_counts",)

    def __init__(self, counts: Mapping[tuple[Hashable, Hashable], int] | None = None):
        c = Counter()
        if counts:
            for key, n in counts.items():
                if n < 0:
                    raise ValueError(f"negative count {n} for key {key!r}")
                if n:
                    c[key] += n
        self._counts = c

    @classmethod
    def from_pairs(cls, xs: Iterable[Hashable], ys: Iterable[Hashable]) -> "FrequencyTable":
        table = cls()
        table._counts.update(zip(xs, ys))
        return table

    def __getitem__(self, key):
        return self._counts[key]

    def __iter__(self):
        return iter(self._counts)

    def __len__(self):
        return len(self._counts)

    def __add__(self, other: "FrequencyTable") -> "FrequencyTable":
        merged = FrequencyTable()
        merged._counts = self._counts + other._counts
        return merged

    def __repr__(self):
        return f"FrequencyTable({dict(self._counts)!r})"

    @property
    def total(self) -> int:
        return sum(self._counts.values())

    def marginal_x(self) -> Counter:
        out = Counter()
        for (x, _), n in self._counts.items():
            out[x] += n
        return out

    def marginal_y(self) -> Counter:
        out = Counter()
        for (_, y), n in self._counts.items():
            out[y] += n
        return out

    def swapped(self) -> "FrequencyTable":
        return FrequencyTable({(y, x): n for (x, y), n in self._counts.items()})


def _partition_counts(key_of: Callable[[Any], Hashable]):
    def count(part: Sequence[Any]) -> list[Counter]:
        return [Counter(key_of(element) for element in part)]

    return count


def frequencies(
    data: Sequence[Any] | dataflow.PartitionedDataset,
    key_of: Callable[[Any], Hashable],
    n_partitions: int = 1,
) -> Counter:
    """Count ``key_of(element)`` over a dataset.

    Each partition computes partial counts, which are merged by a reduce.
    """
    ds = data if isinstance(data, dataflow.PartitionedDataset) else dataflow.from_sequence(data, n_partitions)
    if len(ds) == 0:
        return Counter()
    partials = dataflow.map_partition(ds, _partition_counts(key_of))
    return dataflow.reduce(partials, lambda a, b: a + b)


def _column_pair_counts(part: np.ndarray) -> list[FrequencyTable]:
    if len(part) == 0:
        return [FrequencyTable()]
    pairs, counts = np.unique(part, axis=0, return_counts=True)
    return [FrequencyTable({(_scalar(a), _scalar(b)): int(n) for (a, b), n in zip(pairs, counts)})]


def _scalar(v):
    f = float(v)
    return int(f) if f.is_integer() else f


def joint_frequencies(x, y, n_partitions: int = 1, workers: int = 1) -> FrequencyTable:
    """Joint table of two aligned columns, counted partition-parallel.

    Integral values are keyed as ``int`` so that ``1.0`` and ``1`` coincide.
    """
    x, y = np.asarray(x), np.asarray(y)
    if len(x) != len(y):
        raise ValueError(f"columns differ in length: {len(x)} vs {len(y)}")
    if x.dtype.kind in "iufb" and y.dtype.kind in "iufb":
        pairs = np.column_stack([x.astype(np.float64), y.astype(np.float64)])
        ds = dataflow.from_sequence(pairs, n_partitions, workers=workers)
        partials = dataflow.map_partition(ds, _column_pair_counts)
    else:
        ds = dataflow.from_sequence(list(zip(x.tolist(), y.tolist())), n_partitions, workers=workers)
        partials = dataflow.map_partition(ds, lambda part: [FrequencyTable(Counter(part))])
    return dataflow.reduce(partials, lambda a, b: a + b)


def entropy(probs: Iterable[float]) -> float:
    """Shannon entropy in bits; zero probabilities contribute nothing."""
    h = 0.0
    for p in probs:
        if p > 0:
            h -= p * math.log2(p)
    return max(h, 0.0)


def entropy_from_counts(counts: Iterable[float]) -> float:
    counts = [c for c in counts if c > 0]
    n = sum(counts)
    if n == 0:
        return 0.0
    return entropy(c / n for c in counts)


def _check_table(joint: Mapping) -> int:
    n = sum(joint.values())
    if n <= 0:
        raise ValueError("empty frequency table")
    return n


def conditional_entropy(joint: Mapping[tuple[Hashable, Hashable], int]) -> float:
    """H(X|Y) for a table keyed by ``(x, y)``."""
    n = _check_table(joint)
    by_y: dict[Hashable, list[int]] = {}
    for (_, y), c in joint.items():
        by_y.setdefault(y, []).append(c)
    h = 0.0
    for cells in by_y.values():
        ny = sum(cells)
        h += ny / n * entropy_from_counts(cells)
    return h


def _marginal_entropies(joint: Mapping) -> tuple[float, float]:
    mx, my = Counter(), Counter()
    for (x, y), c in joint.items():
        mx[x] += c
        my[y] += c
    return entropy_from_counts(mx.values()), entropy_from_counts(my.values())


def info_gain(joint: Mapping[tuple[Hashable, Hashable], int]) -> float:
    """IG = H(X) - H(X|Y), clipped at 0 against rounding."""
    _check_table(joint)
    hx, _ = _marginal_entropies(joint)
    return max(hx - conditional_entropy(joint), 0.0)


def symmetrical_uncertainty(joint: Mapping[tuple[Hashable, Hashable], int]) -> float:
    """SU = 2 IG / (H(X) + H(Y)), in [0, 1]; 0 when both variables are constant."""
    _check_table(joint)
    hx, hy = _marginal_entropies(joint)
    if hx + hy <= 0:
        return 0.0
    su = 2.0 * info_gain(joint) / (hx + hy)
    return min(max(su, 0.0), 1.0)


def quadratic_entropy(class_counts: Sequence[float]) -> float:
    """Mass-weighted Gini impurity ``n * sum(p * (1 - p))`` of an interval."""
    counts = np.asarray(class_counts, dtype=np.float64)
    if np.any(counts < 0):
        raise ValueError("class counts must be nonnegative")
    n = counts.sum()
    if n <= 0:
        raise ValueError("quadratic entropy of an empty interval")
    p = counts / n
    return float(n * np.sum(p * (1.0 - p)))
