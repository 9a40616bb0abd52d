"""Minimum-description-length stopping rule for entropy-based splits."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence

import numpy as np

from ..info_theory import entropy_from_counts


def mdl_threshold(counts, left, right) -> tuple[float, float]:
    """``(gain, threshold)`` for splitting class counts ``counts`` into two parts.

    ``gain`` is the class-entropy reduction of the split; the split pays for
    itself when ``gain > (log2(N - 1) + delta) / N`` with
    ``delta = log2(3**k - 2) - (k H(S) - k1 H(S1) - k2 H(S2))`` and ``k*``
    the number of classes present in each set.
    """
    counts, left, right = (np.asarray(c, dtype=np.float64) for c in (counts, left, right))
    n, n1, n2 = counts.sum(), left.sum(), right.sum()
    if n1 <= 0 or n2 <= 0:
        raise ValueError("both sides of a split must be non-empty")
    h, h1, h2 = entropy_from_counts(counts), entropy_from_counts(left), entropy_from_counts(right)
    gain = h - (n1 / n * h1 + n2 / n * h2)
    k, k1, k2 = (int(np.count_nonzero(c > 0)) for c in (counts, left, right))
    delta = math.log2(3**k - 2) - (k * h - k1 * h1 - k2 * h2)
    return gain, (math.log2(n - 1) + delta) / n


def mdl_accept_counts(counts, left, right) -> bool:
    counts = np.asarray(counts, dtype=np.float64)
    if counts.sum() < 2:
        return False
    gain, threshold = mdl_threshold(counts, left, right)
    return bool(gain > threshold)


def _aligned_counts(*label_sets: Sequence) -> list[np.ndarray]:
    classes = sorted(set().union(*label_sets))
    out = []
    for labels in label_sets:
        c = Counter(labels)
        out.append(np.array([c[k] for k in classes], dtype=np.float64))
    return out


def mdl_accept_split(labels: Sequence, left: Sequence, right: Sequence) -> bool:
    """Whether splitting the label multiset ``labels`` into ``left | right`` is accepted.

    >>> mdl_accept_split([0, 0, 1, 1], [0, 0], [1, 1])
    True
    """
    if len(left) == 0 or len(right) == 0:
        raise ValueError("both sides of a split must be non-empty")
    if len(labels) < 2:
        raise ValueError("need at least two labels to split")
    if Counter(labels) != Counter(left) + Counter(right):
        raise ValueError("left and right must partition the label multiset")
    return mdl_accept_counts(*_aligned_counts(labels, left, right))


def _row_entropy(counts: np.ndarray) -> np.ndarray:
    n = counts.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(n > 0, counts / n, 0.0)
        terms = np.where(p > 0, -p * np.log2(p), 0.0)
    return terms.sum(axis=1)


def entropy_cuts(class_counts: np.ndarray, candidates: Sequence[float]) -> list[float]:
    """Recursive minimum-entropy cut selection with the MDL stopping rule.

    ``class_counts`` has one row per ordered cell and one column per class;
    ``candidates[t]`` is the boundary between cell ``t`` and ``t + 1``.
    Returns the accepted boundaries, ascending.
    """
    class_counts = np.asarray(class_counts, dtype=np.float64)
    if class_counts.ndim != 2 or len(candidates) != len(class_counts) - 1:
        raise ValueError("need one candidate boundary between each pair of cells")
    cum = np.vstack([np.zeros((1, class_counts.shape[1])), np.cumsum(class_counts, axis=0)])
    accepted: list[float] = []
    stack = [(0, len(class_counts))]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        total = cum[hi] - cum[lo]
        n = total.sum()
        lefts = cum[lo + 1:hi] - cum[lo]
        rights = total - lefts
        n1 = lefts.sum(axis=1)
        n2 = rights.sum(axis=1)
        valid = (n1 > 0) & (n2 > 0)
        if not valid.any():
            continue
        h = (n1 * _row_entropy(lefts) + n2 * _row_entropy(rights)) / n
        h[~valid] = math.inf
        best_t = lo + 1 + int(np.argmin(h))
        left = cum[best_t] - cum[lo]
        if mdl_accept_counts(total, left, total - left):
            accepted.append(float(candidates[best_t - 1]))
            stack.append((lo, best_t))
            stack.append((best_t, hi))
    return sorted(accepted)
