"""Reading and writing labeled numeric CSV files."""

from __future__ import annotations

import csv
import math
import os
from typing import NamedTuple

import numpy as np

from .exceptions import DataError
from .validation import LabelDictionary

__all__ = ["Dataset", "ingest_csv", "format_value", "write_csv", "write_indices"]


class Dataset(NamedTuple):
    X: np.ndarray
    y: np.ndarray
    labels: LabelDictionary
    header: list[str] | None
    columns: list[int]  # source column of each feature


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _read_rows(path, delimiter):
    try:
        with open(path, newline="") as fh:
            if delimiter is None:
                rows = [line.split() for line in fh]
            else:
                rows = list(csv.reader(fh, delimiter=delimiter))
    except FileNotFoundError:
        raise DataError(f"no such file: {path}") from None
    except (IsADirectoryError, PermissionError) as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise DataError(f"{path} is not a text file") from None
    # (line number, cells) with blank lines dropped
    return [(i + 1, [c.strip() for c in r]) for i, r in enumerate(rows) if any(c.strip() for c in r)]


def ingest_csv(path: str | os.PathLike, label_col: int = -1, drop_cols=(), delimiter: str | None = ",") -> Dataset:
    """Parse a CSV of numeric features plus one label column.

    A first row whose feature cells are all non-numeric is taken as a header.
    Labels are encoded to dense integers in first-seen order; row order is
    kept. ``delimiter=None`` splits on runs of whitespace.
    """
    rows = _read_rows(path, delimiter)
    if not rows:
        raise DataError(f"{path} contains no data")
    width = len(rows[0][1])
    lc = label_col + width if label_col < 0 else label_col
    if not 0 <= lc < width:
        raise DataError(f"label column {label_col} out of range for {width} columns")
    dropped = set()
    for c in drop_cols:
        cc = c + width if c < 0 else c
        if not 0 <= cc < width:
            raise DataError(f"drop column {c} out of range for {width} columns")
        dropped.add(cc)
    if lc in dropped:
        raise DataError("the label column cannot be dropped")
    columns = [c for c in range(width) if c != lc and c not in dropped]
    if not columns:
        raise DataError("no feature columns left after dropping")

    header = None
    first = rows[0][1]
    if not any(_is_number(first[c]) for c in columns):
        header = [first[c] for c in columns]
        rows = rows[1:]
        if not rows:
            raise DataError(f"{path} has a header but no data rows")

    X = np.empty((len(rows), len(columns)), dtype=np.float64)
    labels = LabelDictionary()
    y = np.empty(len(rows), dtype=np.int64)
    for r, (line, cells) in enumerate(rows):
        if len(cells) != width:
            raise DataError(f"{path}:{line}: expected {width} columns, found {len(cells)}")
        for j, c in enumerate(columns):
            try:
                v = float(cells[c])
            except ValueError:
                raise DataError(f"{path}:{line}: column {c}: cannot parse {cells[c]!r} as a number") from None
            if not math.isfinite(v):
                raise DataError(f"{path}:{line}: column {c}: non-finite value {cells[c]!r}")
            X[r, j] = v
        y[r] = labels.encode_one(cells[lc])
    return Dataset(X, y, labels, header, columns)


def format_value(v) -> str:
    """Shortest text that parses back to exactly ``v``."""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def write_csv(path, X, labels, header=None) -> None:
    """Write features followed by the label column, one row per instance.

    Floats use their shortest round-trip form, so re-ingesting the file gives
    back identical values.
    """
    X = np.asarray(X)
    labels = list(labels)
    if len(labels) != len(X):
        raise DataError(f"{len(X)} rows but {len(labels)} labels")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if header is not None:
            w.writerow(list(header) + ["label"])
        for row, label in zip(X.tolist(), labels):
            w.writerow([format_value(v) for v in row] + [label])


def write_indices(path, indices) -> None:
    with open(path, "w") as fh:
        fh.writelines(f"{int(i)}\n" for i in indices)
