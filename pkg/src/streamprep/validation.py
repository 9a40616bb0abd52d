"""Input validation and the labeled-instance data model."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import NamedTuple

import numpy as np
from sklearn.utils.validation import check_array, check_X_y

from .exceptions import DataError

__all__ = [
    "LabeledInstance",
    "LabelDictionary",
    "check_dataset",
    "check_features",
    "check_n_features",
    "iter_instances",
]


class LabeledInstance(NamedTuple):
    """One stream element: an integer class label and a real feature vector."""

    label: int
    features: np.ndarray


class LabelDictionary:
    """Maps raw labels to dense integers in first-seen order.

    >>> enc = LabelDictionary()
    >>> enc.encode(["b", "a", "b"]).tolist()
    [0, 1, 0]
    >>> enc.classes_
    ['b', 'a']
    """

    def __init__(self):
        self.classes_: list = []
        self._index: dict = {}

    def encode_one(self, raw) -> int:
        code = self._index.get(raw)
        if code is None:
            code = len(self.classes_)
            self._index[raw] = code
            self.classes_.append(raw)
        return code

    def encode(self, raw: Iterable) -> np.ndarray:
        return np.array([self.encode_one(v) for v in raw], dtype=np.int64)

    def decode(self, codes: Iterable[int]) -> list:
        return [self.classes_[int(c)] for c in codes]

    def __len__(self) -> int:
        return len(self.classes_)


def check_dataset(X, y, encoded=True) -> tuple[np.ndarray, np.ndarray]:
    """Validate a labeled dataset: non-empty, 2-D, finite, one label per row.

    With ``encoded`` the labels must be nonnegative integer codes (see
    :class:`LabelDictionary`); otherwise any label values pass through.
    """
    try:
        X, y = check_X_y(X, y, dtype=np.float64, ensure_all_finite=True)
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    if not encoded:
        return X, y
    if y.dtype.kind not in "iuf":
        raise DataError("labels must be integer-encoded")
    if not np.issubdtype(y.dtype, np.integer):
        if not np.all(np.equal(np.mod(y, 1), 0)):
            raise DataError("labels must be integer-encoded")
        y = y.astype(np.int64)
    if y.min() < 0:
        raise DataError("label codes must be nonnegative")
    return X, y


def check_features(X) -> np.ndarray:
    try:
        return check_array(X, dtype=np.float64, ensure_all_finite=True)
    except ValueError as exc:
        raise DataError(str(exc)) from exc


def check_n_features(X: np.ndarray, expected: int) -> None:
    if X.shape[1] != expected:
        raise DataError(f"X has {X.shape[1]} features, but the fitted state expects {expected}")


def iter_instances(X: np.ndarray, y: Sequence[int]) -> Iterable[LabeledInstance]:
    X = check_features(X)
    for label, row in zip(y, X):
        yield LabeledInstance(int(label), row)
