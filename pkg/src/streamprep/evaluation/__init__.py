"""Classifiers and a cross-validation harness for comparing preprocessing steps."""

from ._bench import (
    ALGORITHMS,
    DISCRETIZERS,
    SELECTORS,
    build_classifier,
    build_preprocessor,
    format_csv,
    format_table,
    half_features,
)
from ._cv import EvalReport, FoldPlan, cross_validate, stratified_subset
from ._knn import KNNClassifier, nearest_indices
from ._tree import GiniTree, best_split, gini

__all__ = [
    "ALGORITHMS",
    "DISCRETIZERS",
    "SELECTORS",
    "EvalReport",
    "FoldPlan",
    "GiniTree",
    "KNNClassifier",
    "best_split",
    "build_classifier",
    "build_preprocessor",
    "cross_validate",
    "format_csv",
    "format_table",
    "gini",
    "half_features",
    "nearest_indices",
    "stratified_subset",
]
