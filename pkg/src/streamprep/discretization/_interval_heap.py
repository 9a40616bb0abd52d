"""Interval heap: a double-ended priority queue over floats.

Stored as a flat list where slots ``2k`` and ``2k+1`` hold the low and high
end of node ``k``. Each node's interval contains the intervals of its
children, so the minimum is slot 0 and the maximum slot 1.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator


class IntervalHeap:
    __slots__ = ("_a",)

    def __init__(self, values: Iterable[float] = ()):
        self._a: list[float] = []
        for v in values:
            self.push(v)

    def __len__(self) -> int:
        return len(self._a)

    def __bool__(self) -> bool:
        return bool(self._a)

    def __iter__(self) -> Iterator[float]:
        """Stored values in storage order (not sorted)."""
        return iter(self._a)

    def __getitem__(self, pos: int) -> float:
        return self._a[pos]

    def __repr__(self) -> str:
        return f"IntervalHeap({sorted(self._a)!r})"

    def min(self) -> float:
        if not self._a:
            raise IndexError("min of an empty IntervalHeap")
        return self._a[0]

    def max(self) -> float:
        if not self._a:
            raise IndexError("max of an empty IntervalHeap")
        return self._a[1] if len(self._a) > 1 else self._a[0]

    def push(self, value: float) -> None:
        a = self._a
        a.append(value)
        i = len(a) - 1
        if i % 2 == 1:
            if a[i] < a[i - 1]:
                a[i], a[i - 1] = a[i - 1], a[i]
                self._bubble_up_min(i - 1)
            else:
                self._bubble_up_max(i)
            return
        node = i // 2
        if node == 0:
            return
        parent = (node - 1) // 2
        if value < a[2 * parent]:
            self._bubble_up_min(i)
        elif value > a[2 * parent + 1]:
            self._bubble_up_max(i)

    def pop_min(self) -> float:
        a = self._a
        if not a:
            raise IndexError("pop from an empty IntervalHeap")
        top = a[0]
        last = a.pop()
        if a:
            a[0] = last
            self._sift_down_min(0)
        return top

    def pop_max(self) -> float:
        a = self._a
        if not a:
            raise IndexError("pop from an empty IntervalHeap")
        if len(a) <= 2:
            return a.pop()
        top = a[1]
        last = a.pop()
        a[1] = last
        self._sift_down_max(1)
        return top

    def remove_at(self, pos: int) -> float:
        """Remove the value stored at slot ``pos`` and return it."""
        a = self._a
        if not 0 <= pos < len(a):
            raise IndexError(f"slot {pos} out of range for {len(a)} values")
        value = a[pos]
        if pos == len(a) - 1:
            a.pop()
            return value
        if pos % 2 == 0:
            a[pos] = -math.inf
            self._bubble_up_min(pos)
            self.pop_min()
        else:
            a[pos] = math.inf
            self._bubble_up_max(pos)
            self.pop_max()
        return value

    def _bubble_up_min(self, i: int) -> None:
        a = self._a
        node = i // 2
        while node > 0:
            p = 2 * ((node - 1) // 2)
            if a[i] < a[p]:
                a[i], a[p] = a[p], a[i]
                i, node = p, p // 2
            else:
                break

    def _bubble_up_max(self, i: int) -> None:
        a = self._a
        node = i // 2
        while node > 0:
            p = 2 * ((node - 1) // 2) + 1
            if a[i] > a[p]:
                a[i], a[p] = a[p], a[i]
                i, node = p, p // 2
            else:
                break

    def _sift_down_min(self, i: int) -> None:
        a = self._a
        n = len(a)
        while True:
            if i + 1 < n and a[i] > a[i + 1]:
                a[i], a[i + 1] = a[i + 1], a[i]
            child = 2 * (i // 2) + 1
            j = 2 * child
            if j >= n:
                return
            if j + 2 < n and a[j + 2] < a[j]:
                j += 2
            if a[j] < a[i]:
                a[i], a[j] = a[j], a[i]
                i = j
            else:
                return

    def _sift_down_max(self, i: int) -> None:
        a = self._a
        n = len(a)
        while True:
            if a[i] < a[i - 1]:
                a[i], a[i - 1] = a[i - 1], a[i]
            child = 2 * (i // 2) + 1
            best = -1
            for c in (child, child + 1):
                lo = 2 * c
                if lo >= n:
                    break
                s = lo + 1 if lo + 1 < n else lo
                if best < 0 or a[s] > a[best]:
                    best = s
            if best < 0 or a[best] <= a[i]:
                return
            a[i], a[best] = a[best], a[i]
            if best % 2 == 0:
                # a lone last node has no children
                return
            i = best

    def check(self) -> None:
        """Raise AssertionError if the interval-heap invariants are broken."""
        a = self._a
        n = len(a)
        for node in range((n + 1) // 2):
            lo = a[2 * node]
            hi = a[2 * node + 1] if 2 * node + 1 < n else lo
            assert lo <= hi, f"node {node}: {lo} > {hi}"
            if node:
                p = (node - 1) // 2
                assert a[2 * p] <= lo and hi <= a[2 * p + 1], f"node {node} escapes parent {p}"
