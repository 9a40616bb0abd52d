"""A tiny deterministic partition-parallel executor.

Four primitives (``map``, ``map_partition``, ``reduce`` and ``group_reduce``)
over a :class:`PartitionedDataset`. Every result is defined by the sequential
semantics: partitions in order, elements in order within a partition. A thread
pool may be supplied through ``workers`` but never changes the output.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Any

import numpy as np

__all__ = [
    "DataflowError",
    "PartitionedDataset",
    "from_sequence",
    "map",
    "map_partition",
    "reduce",
    "group_reduce",
]


class DataflowError(RuntimeError):
    """A user function failed inside the executor.

    ``partition`` and ``index`` locate the failing input; ``index`` is None for
    whole-partition functions.
    """

    def __init__(self, message: str, partition: int, index: int | None = None):
        super().__init__(message)
        self.partition = partition
        self.index = index


@dataclass(frozen=True)
class PartitionedDataset:
    """An ordered list of partitions; each partition is a sequence of elements.

    Partitions may be lists, tuples or numpy arrays (row-wise). Empty
    partitions are allowed, but there is always at least one partition.
    """

    partitions: tuple[Sequence[Any], ...]
    workers: int = 1

    def __post_init__(self):
        if len(self.partitions) < 1:
            raise ValueError("a PartitionedDataset needs at least one partition")

    @property
    def n_partitions(self) -> int:
        return len(self.partitions)

    def __len__(self) -> int:
        return sum(len(p) for p in self.partitions)

    def __iter__(self) -> Iterator[Any]:
        for part in self.partitions:
            yield from part

    def collect(self) -> list[Any]:
        """Flatten to a list in partition order."""
        return list(self)


def from_sequence(data: Sequence[Any], n_partitions: int = 1, workers: int = 1) -> PartitionedDataset:
    """Split ``data`` into ``n_partitions`` contiguous chunks of near-equal size."""
    if n_partitions < 1:
        raise ValueError(f"n_partitions must be >= 1, got {n_partitions}")
    n = len(data)
    bounds = [n * p // n_partitions for p in range(n_partitions + 1)]
    parts = tuple(data[bounds[p]:bounds[p + 1]] for p in range(n_partitions))
    return PartitionedDataset(parts, workers=workers)


def _run(ds: PartitionedDataset, fn: Callable[[int, Sequence[Any]], Any]) -> list[Any]:
    jobs = list(enumerate(ds.partitions))
    if ds.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=ds.workers) as pool:
            return list(pool.map(lambda job: fn(*job), jobs))
    return [fn(p, part) for p, part in jobs]


def map(ds: PartitionedDataset, f: Callable[[Any], Any]) -> PartitionedDataset:  # noqa: A001
    """Apply ``f`` to every element, keeping the partition structure."""

    def run(p: int, part: Sequence[Any]) -> list[Any]:
        out = []
        for i, element in enumerate(part):
            try:
                out.append(f(element))
            except Exception as exc:
                raise DataflowError(
                    f"map function failed on partition {p}, element {i}: {exc}", p, i
                ) from exc
        return out

    return PartitionedDataset(tuple(_run(ds, run)), workers=ds.workers)


def map_partition(ds: PartitionedDataset, f: Callable[[Sequence[Any]], Iterable[Any]]) -> PartitionedDataset:
    """Replace every partition by ``f(partition)``; output lengths may differ."""

    def run(p: int, part: Sequence[Any]) -> list[Any]:
        try:
            return list(f(part))
        except Exception as exc:
            raise DataflowError(f"mapPartition function failed on partition {p}: {exc}", p) from exc

    return PartitionedDataset(tuple(_run(ds, run)), workers=ds.workers)


def reduce(ds: PartitionedDataset, f: Callable[[Any, Any], Any]) -> Any:
    """Left fold of ``f`` over the logical dataset.

    Each partition is folded on its own and the partial results are folded in
    partition order. For an associative ``f`` this equals the sequential fold.
    """
    _empty = object()

    def run(p: int, part: Sequence[Any]) -> Any:
        acc = _empty
        for i, element in enumerate(part):
            if acc is _empty:
                acc = element
                continue
            try:
                acc = f(acc, element)
            except Exception as exc:
                raise DataflowError(
                    f"reduce function failed on partition {p}, element {i}: {exc}", p, i
                ) from exc
        return acc

    partials = [acc for acc in _run(ds, run) if acc is not _empty]
    if not partials:
        raise ValueError("cannot reduce an empty dataset")
    acc = partials[0]
    for other in partials[1:]:
        acc = f(acc, other)
    return acc


def _key_order(a: Hashable, b: Hashable) -> int:
    # numbers before text; numbers ascending, text lexicographic
    a_num = isinstance(a, (int, float, np.integer, np.floating)) and not isinstance(a, bool)
    b_num = isinstance(b, (int, float, np.integer, np.floating)) and not isinstance(b, bool)
    if a_num != b_num:
        return -1 if a_num else 1
    if isinstance(a, tuple) and isinstance(b, tuple):
        for x, y in zip(a, b):
            c = _key_order(x, y)
            if c:
                return c
        return (len(a) > len(b)) - (len(a) < len(b))
    if not a_num and not (isinstance(a, str) and isinstance(b, str)):
        a, b = repr(a), repr(b)
    return (a > b) - (a < b)


def group_reduce(
    ds: PartitionedDataset,
    key: Callable[[Any], Hashable],
    g: Callable[[Hashable, list[Any]], Any],
) -> PartitionedDataset:
    """Group elements by ``key`` and call ``g(key, group)`` once per group.

    Output is a single partition ordered by key. Within a group, elements keep
    their original order.
    """
    groups: dict[Hashable, list[Any]] = {}
    for element in ds:
        groups.setdefault(key(element), []).append(element)
    ordered = sorted(groups, key=cmp_to_key(_key_order))
    return PartitionedDataset((tuple(g(k, groups[k]) for k in ordered),), workers=ds.workers)
