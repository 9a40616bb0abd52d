from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import clone

from ..exceptions import DataError, EmptySelectionError
from ..validation import check_dataset


@dataclass(frozen=True)
class FoldPlan:
    """Seeded assignment of instances to ``k`` folds of near-equal size."""

    k: int
    assignment: np.ndarray
    seed: int

    @classmethod
    def make(cls, n: int, k: int = 5, seed: int = 0) -> "FoldPlan":
        if k < 2:
            raise DataError(f"need at least 2 folds, got {k}")
        if n < k:
            raise DataError(f"cannot split {n} instances into {k} folds")
        perm = np.random.default_rng(seed).permutation(n)
        assignment = np.empty(n, dtype=np.int64)
        assignment[perm] = np.arange(n) % k
        return cls(k, assignment, seed)

    def splits(self):
        for fold in range(self.k):
            test = self.assignment == fold
            yield np.flatnonzero(~test), np.flatnonzero(test)


@dataclass
class EvalReport:
    """Per-fold accuracies of one preprocessing + classifier combination.

    Skipped folds are ``None`` in ``fold_accuracies`` and explained in
    ``skipped``; the mean is taken over the folds that ran.
    """

    algorithm: str
    classifier: str
    k: int | None
    fold_accuracies: list[float | None]
    preprocess_seconds: float = 0.0
    skipped: dict[int, str] = field(default_factory=dict)

    @property
    def mean_accuracy(self) -> float | None:
        done = [a for a in self.fold_accuracies if a is not None]
        return float(np.mean(done)) if done else None

    @property
    def label(self) -> str:
        return self.classifier if self.k is None else f"{self.classifier} (k={self.k})"


def cross_validate(X, y, pipeline, classifier, plan: FoldPlan, algorithm="none", classifier_name=None):
    """Fit ``pipeline`` on each training split, then score ``classifier``.

    ``pipeline`` may be None for no preprocessing. Both estimators are cloned
    per fold. A fold whose preprocessing leaves no features is skipped.
    """
    X, y = check_dataset(X, y)
    if len(X) != len(plan.assignment):
        raise DataError(f"fold plan covers {len(plan.assignment)} instances, dataset has {len(X)}")
    name = classifier_name or type(classifier).__name__
    k = getattr(classifier, "n_neighbors", None)
    report = EvalReport(algorithm, name, k, [])
    for fold, (train, test) in enumerate(plan.splits()):
        Xtr, Xte = X[train], X[test]
        if pipeline is not None:
            prep = clone(pipeline)
            start = time.perf_counter()
            try:
                prep.fit(Xtr, y[train])
                Xtr = prep.transform(Xtr)
            except EmptySelectionError as exc:
                report.fold_accuracies.append(None)
                report.skipped[fold] = str(exc)
                continue
            Xte = prep.transform(Xte)
            report.preprocess_seconds += time.perf_counter() - start
        model = clone(classifier).fit(Xtr, y[train])
        report.fold_accuracies.append(float(np.mean(model.predict(Xte) == y[test])))
    return report


def stratified_subset(X, y, n: int, seed: int = 0):
    """Class-proportional random subset of ``n`` rows, returned in shuffled order.

    Per-class quotas use largest remainders, so they sum to ``n`` exactly.
    """
    X, y = check_dataset(X, y)
    if not 0 < n <= len(y):
        raise DataError(f"subset size must be in [1, {len(y)}], got {n}")
    classes, counts = np.unique(y, return_counts=True)
    exact = counts * n / len(y)
    quota = np.floor(exact).astype(np.int64)
    short = n - quota.sum()
    quota[np.argsort(-(exact - quota), kind="stable")[:short]] += 1
    rng = np.random.default_rng(seed)
    picked = [rng.choice(np.flatnonzero(y == c), size=q, replace=False) for c, q in zip(classes, quota)]
    idx = rng.permutation(np.concatenate(picked))
    return X[idx], y[idx]
