from __future__ import annotations

import numpy as np


def reservoir_slot(n_seen: int, capacity: int, rng: np.random.Generator) -> int | None:
    """Where the ``n_seen``-th stream item goes in a reservoir of ``capacity``.

    The first ``capacity`` items fill slots in order. Later items replace a
    uniformly chosen slot with probability ``capacity / n_seen`` and are
    discarded otherwise (``None``).
    """
    if n_seen <= capacity:
        return n_seen - 1
    j = int(rng.integers(n_seen))
    return j if j < capacity else None


class ReservoirSample:
    """Uniform fixed-size sample of a stream (Algorithm R)."""

    def __init__(self, capacity: int, random_state=None):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.n_seen = 0
        self.values: list = []
        self._rng = np.random.default_rng(random_state)

    def insert(self, value) -> "ReservoirSample":
        self.n_seen += 1
        slot = reservoir_slot(self.n_seen, self.capacity, self._rng)
        if slot is None:
            return self
        if slot == len(self.values):
            self.values.append(value)
        else:
            self.values[slot] = value
        return self

    def __len__(self) -> int:
        return len(self.values)
