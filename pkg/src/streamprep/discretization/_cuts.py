"""Cut-point lists and the value -> bin mapping they define."""

from __future__ import annotations

import json
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from ..exceptions import DataError

CutPoints = list  # one ascending float array per feature


def normalize_cuts(cuts: Sequence[float]) -> np.ndarray:
    """Sorted, duplicate-free float array."""
    arr = np.unique(np.asarray(cuts, dtype=np.float64))
    if arr.size and not np.all(np.isfinite(arr)):
        raise DataError("cut points must be finite")
    return arr


def apply_discretization(X, cuts: Sequence[Sequence[float]]) -> np.ndarray:
    """Replace every value by its 1-based bin index.

    With cuts ``k_1 < ... < k_{m-1}`` bin 1 is ``(-inf, k_1]``, bin ``i`` is
    ``(k_{i-1}, k_i]`` and bin ``m`` is ``(k_{m-1}, inf)``.

    >>> apply_discretization([[1.5], [2.0], [2.5]], [[2.0]]).ravel().tolist()
    [1, 1, 2]
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise DataError(f"expected a 2-D array, got shape {X.shape}")
    if len(cuts) != X.shape[1]:
        raise DataError(f"{len(cuts)} cut-point lists for {X.shape[1]} features")
    out = np.empty(X.shape, dtype=np.int64)
    for j, k in enumerate(cuts):
        k = np.asarray(k, dtype=np.float64)
        if k.size > 1 and np.any(np.diff(k) <= 0):
            raise DataError(f"cut points of feature {j} are not strictly ascending")
        out[:, j] = np.searchsorted(k, X[:, j], side="left") + 1
    return out


def cuts_to_json(cuts: Sequence[Sequence[float]]) -> str:
    """``{"0": [...], "1": [...]}``; floats use shortest round-trip repr."""
    doc = {str(j): [float(v) for v in k] for j, k in enumerate(cuts)}
    return json.dumps(doc, indent=2)


def cuts_from_json(text: str) -> list[np.ndarray]:
    try:
        doc = json.loads(text)
        keys = sorted(doc, key=int)
    except (ValueError, TypeError) as exc:
        raise DataError(f"invalid cut-point document: {exc}") from exc
    if [int(k) for k in keys] != list(range(len(keys))):
        raise DataError("cut-point document must have keys 0..d-1")
    cuts = [np.asarray(doc[k], dtype=np.float64) for k in keys]
    for j, k in enumerate(cuts):
        if k.size > 1 and np.any(np.diff(k) <= 0):
            raise DataError(f"cut points of feature {j} are not strictly ascending")
    return cuts


def save_cuts(cuts, path) -> None:
    Path(path).write_text(cuts_to_json(cuts) + "\n")


def load_cuts(path) -> list[np.ndarray]:
    return cuts_from_json(Path(path).read_text())
