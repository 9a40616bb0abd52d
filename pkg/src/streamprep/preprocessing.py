"""Min-max normalization and transformer chaining."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.pipeline import Pipeline, make_pipeline
from sklearn.utils.validation import check_is_fitted

from .exceptions import DataError
from .validation import check_features, check_n_features

__all__ = ["MinMaxScaler", "minmax_scale", "chain"]


def minmax_scale(v, vmin, vmax):
    """Scale ``v`` into [0, 1] given a fitted range.

    Constant features (``vmin == vmax``) map to 0.5 and values outside the
    fitted range are clamped. Works elementwise on arrays.
    """
    v = np.asarray(v, dtype=np.float64)
    vmin = np.asarray(vmin, dtype=np.float64)
    vmax = np.asarray(vmax, dtype=np.float64)
    span = vmax - vmin
    constant = span == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(constant, 0.5, (v - vmin) / np.where(constant, 1.0, span))
    out = np.clip(scaled, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


class MinMaxScaler(TransformerMixin, BaseEstimator):
    """Per-feature min-max normalization to [0, 1].

    Unlike :class:`sklearn.preprocessing.MinMaxScaler`, constant features are
    mapped to 0.5 and transform always clamps, so streamed values beyond the
    fitted range stay inside [0, 1].

    Attributes
    ----------
    data_min_, data_max_ : ndarray of shape (n_features,)
    constant_ : ndarray of bool
        Features whose fitted min equals their max.
    """

    def fit(self, X, y=None):
        X = check_features(X)
        self.data_min_ = X.min(axis=0)
        self.data_max_ = X.max(axis=0)
        self.constant_ = self.data_min_ == self.data_max_
        self.n_features_in_ = X.shape[1]
        return self

    def partial_fit(self, X, y=None):
        X = check_features(X)
        if not hasattr(self, "data_min_"):
            return self.fit(X)
        check_n_features(X, self.n_features_in_)
        self.data_min_ = np.minimum(self.data_min_, X.min(axis=0))
        self.data_max_ = np.maximum(self.data_max_, X.max(axis=0))
        self.constant_ = self.data_min_ == self.data_max_
        return self

    def transform(self, X):
        check_is_fitted(self, "data_min_")
        X = check_features(X)
        check_n_features(X, self.n_features_in_)
        return minmax_scale(X, self.data_min_, self.data_max_)


def chain(*steps) -> Pipeline:
    """Chain transformers so each one is fitted on the previous one's output.

    Nested pipelines are flattened. The result is a plain sklearn
    :class:`~sklearn.pipeline.Pipeline`: ``fit`` runs ``fit_transform`` on
    every stage but the last, which is only fitted, and ``transform`` composes
    the stage transforms in order. Labels are passed to every stage unchanged.
    """
    if not steps:
        raise DataError("chain needs at least one transformer")
    flat = []
    for step in steps:
        if isinstance(step, Pipeline):
            flat.extend(est for _, est in step.steps)
        else:
            flat.append(step)
    return make_pipeline(*flat)
