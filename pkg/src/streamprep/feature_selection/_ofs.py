from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.feature_selection import SelectorMixin
from sklearn.utils.validation import check_is_fitted

from ..exceptions import DataError, NotFittedError
from ..validation import check_dataset, check_n_features


def truncate(w: np.ndarray, n_nonzero: int) -> np.ndarray:
    """Zero all but the ``n_nonzero`` largest-magnitude entries (ties keep lower index)."""
    if np.count_nonzero(w) <= n_nonzero:
        return w
    keep = np.argsort(-np.abs(w), kind="stable")[:n_nonzero]
    out = np.zeros_like(w)
    out[keep] = w[keep]
    return out


def ofs_update(w, x, y, eta, lam, n_nonzero) -> tuple[np.ndarray, bool]:
    """One online step on ``(x, y)`` with ``y`` in {-1, +1}.

    Correctly classified instances (``y * <w, x> > 0``) leave ``w`` alone.
    Otherwise: shrink-and-step ``w <- (1 - lam*eta) w + eta*y*x``, rescale
    into the L2 ball of radius ``1/sqrt(lam)`` (skipped when ``lam == 0``),
    then truncate to ``n_nonzero`` entries.

    Returns the new weights and whether an update happened.
    """
    w = np.asarray(w, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if y not in (-1, 1):
        raise DataError(f"OFS labels must be -1 or +1, got {y!r}")
    if x.shape != w.shape:
        raise DataError(f"instance has {x.size} features, weights have {w.size}")
    if y * float(w @ x) > 0:
        return w, False
    w = (1.0 - lam * eta) * w + eta * y * x
    if lam > 0:
        norm = float(np.linalg.norm(w))
        radius = 1.0 / math.sqrt(lam)
        if norm > radius:
            w = w * (radius / norm)
    return truncate(w, n_nonzero), True


class OFSSelector(SelectorMixin, BaseEstimator):
    """Online feature selection with a truncated linear classifier.

    Binary problems only. A sparse weight vector with at most ``n_nonzero``
    nonzero entries is learned in one pass; the ``n_select`` largest weights
    (in magnitude) give the selected features.

    With ``epsilon`` set, the partial-information variant is used: each
    instance reveals only ``n_nonzero`` attributes, a random set with
    probability ``epsilon`` and otherwise the current support of the weights,
    and revealed values are rescaled by the inverse of their sensing
    probability.

    ``eta=0.2`` and ``lam=0.01`` are arbitrary defaults.
    """

    def __init__(self, n_select=1, eta=0.2, lam=0.01, n_nonzero=None, epsilon=None, random_state=0):
        self.n_select = n_select
        self.eta = eta
        self.lam = lam
        self.n_nonzero = n_nonzero
        self.epsilon = epsilon
        self.random_state = random_state

    def fit(self, X, y, classes=None):
        for attr in ("coef_", "classes_", "n_updates_", "_rng"):
            self.__dict__.pop(attr, None)
        return self.partial_fit(X, y, classes=classes)

    def _budget(self) -> int:
        return self.n_select if self.n_nonzero is None else self.n_nonzero

    def _init_state(self, X, y, classes):
        d = X.shape[1]
        if not 1 <= self.n_select <= d:
            raise DataError(f"n_select must be in [1, {d}], got {self.n_select}")
        if not 1 <= self._budget() <= d:
            raise DataError(f"n_nonzero must be in [1, {d}], got {self._budget()}")
        if self.epsilon is not None and not 0 <= self.epsilon <= 1:
            raise DataError(f"epsilon must be in [0, 1], got {self.epsilon}")
        classes = np.unique(y) if classes is None else np.unique(np.asarray(classes))
        if len(classes) > 2:
            raise DataError(
                f"OFS accepts binary labels only, got {len(classes)} classes; "
                "binarize one-vs-rest first"
            )
        self.classes_ = classes
        self.n_features_in_ = d
        self.coef_ = np.zeros(d)
        self.n_updates_ = 0
        self._rng = np.random.default_rng(self.random_state)

    def _signed(self, y) -> np.ndarray:
        unknown = ~np.isin(y, self.classes_)
        if unknown.any():
            raise DataError(f"label {y[unknown][0]!r} not among the binary classes {self.classes_.tolist()}")
        if len(self.classes_) == 1:
            return -np.ones(len(y), dtype=int)
        # first class -> -1, second -> +1
        return np.where(y == self.classes_[1], 1, -1)

    def _sense(self, x: np.ndarray) -> np.ndarray:
        d = x.size
        budget = self._budget()
        eps = self.epsilon
        support = self.coef_ != 0
        if self._rng.random() < eps:
            observed = np.zeros(d, dtype=bool)
            observed[self._rng.choice(d, size=budget, replace=False)] = True
        else:
            observed = support
        prob = eps * budget / d + (1.0 - eps) * support
        out = np.zeros(d)
        np.divide(x, prob, out=out, where=observed & (prob > 0))
        return out

    def partial_fit(self, X, y, classes=None):
        X, y = check_dataset(X, y, encoded=False)
        if not hasattr(self, "coef_"):
            self._init_state(X, y, classes)
        check_n_features(X, self.n_features_in_)
        signed = self._signed(y)
        budget = self._budget()
        w = self.coef_
        for x, label in zip(X, signed):
            if self.epsilon is not None:
                x = self._sense(x)
            w, updated = ofs_update(w, x, int(label), self.eta, self.lam, budget)
            self.n_updates_ += updated
        self.coef_ = w
        return self

    def select(self, n_select=None) -> list[int]:
        """Indices of the ``n_select`` largest |weights|, ties to the lower index."""
        check_is_fitted(self, "coef_")
        n_select = self.n_select if n_select is None else n_select
        if not 1 <= n_select <= self.n_features_in_:
            raise DataError(f"cannot select {n_select} of {self.n_features_in_} features")
        if not np.any(self.coef_):
            raise NotFittedError("OFS weights are all zero; the classifier was never updated")
        return np.argsort(-np.abs(self.coef_), kind="stable")[:n_select].tolist()

    def _get_support_mask(self):
        mask = np.zeros(self.n_features_in_, dtype=bool)
        mask[self.select()] = True
        return mask

    def transform(self, X, y=None):
        """Project onto the selected features.

        An unfitted selector is first trained on ``(X, y)`` when labels are
        given, so a single ``transform`` call works on a labeled stream.
        """
        if not hasattr(self, "coef_"):
            if y is None:
                raise NotFittedError("OFSSelector needs labels to train; call fit or pass y")
            self.fit(X, y)
        return super().transform(X)

    def predict(self, X):
        check_is_fitted(self, "coef_")
        scores = np.asarray(X, dtype=np.float64) @ self.coef_
        return np.where(scores > 0, self.classes_[-1], self.classes_[0])
