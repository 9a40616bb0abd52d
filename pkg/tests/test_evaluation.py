import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from streamprep import DataError, FCBFSelector, IDADiscretizer, LOFDiscretizer, MinMaxScaler, chain
from streamprep.evaluation import (
    EvalReport,
    FoldPlan,
    GiniTree,
    KNNClassifier,
    build_preprocessor,
    cross_validate,
    format_csv,
    format_table,
    stratified_subset,
)


def knn_oracle(Xtr, ytr, q, k):
    dists = [(float(np.sum((x - q) ** 2)), i) for i, x in enumerate(Xtr)]
    dists.sort()
    votes = {}
    for _, i in dists[:k]:
        votes[ytr[i]] = votes.get(ytr[i], 0) + 1
    best = max(votes.values())
    return min(label for label, v in votes.items() if v == best)


def test_knn_examples():
    X = np.array([[0.0], [0.5], [0.2], [10.0], [10.3]])
    y = np.array([1, 1, 1, 0, 0])
    knn = KNNClassifier(n_neighbors=1).fit(X, y)
    assert knn.predict([[10.3]]).tolist() == [0]
    assert KNNClassifier(n_neighbors=5).fit(X, y).predict([[10.2]]).tolist() == [1]
    assert KNNClassifier(n_neighbors=3).fit(X, y).predict([[1.0]]).tolist() == [1]


def test_knn_ties():
    X = np.array([[-1.0], [1.0]])
    # equidistant neighbours: lower index wins the distance tie
    assert KNNClassifier(n_neighbors=1).fit(X, [3, 2]).predict([[0.0]]).tolist() == [3]
    # split vote: smaller label wins
    assert KNNClassifier(n_neighbors=2).fit(X, [3, 2]).predict([[0.0]]).tolist() == [2]


def test_knn_errors():
    with pytest.raises(DataError):
        KNNClassifier().fit(np.empty((0, 1)), [])
    with pytest.raises(DataError):
        KNNClassifier(n_neighbors=0).fit([[1.0]], [0])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 7))
def test_knn_matches_all_pairs_scan(seed, k):
    rng = np.random.default_rng(seed)
    Xtr = rng.integers(0, 4, size=(30, 2)).astype(float)  # many exact ties
    ytr = rng.integers(0, 3, 30)
    Q = rng.integers(0, 4, size=(10, 2)).astype(float)
    got = KNNClassifier(n_neighbors=k).fit(Xtr, ytr).predict(Q)
    assert got.tolist() == [knn_oracle(Xtr, ytr, q, k) for q in Q]


def test_tree_separable_depth_one():
    X = np.arange(20.0)[:, None]
    y = (X[:, 0] >= 10).astype(int)
    tree = GiniTree().fit(X, y)
    assert tree.depth_ == 1
    assert tree.threshold_[0] == 9.5
    assert np.mean(tree.predict(X) == y) == 1.0


def test_tree_single_class_and_pure_stop():
    tree = GiniTree().fit(np.random.default_rng(0).random((30, 2)), np.zeros(30, dtype=int))
    assert tree.depth_ == 0 and len(tree.feature_) == 1
    X = np.arange(40.0)[:, None]
    y = (X[:, 0] >= 20).astype(int)
    tree = GiniTree(min_leaf=1).fit(X, y)
    assert len(tree.feature_) == 3  # root plus two pure leaves


def test_tree_tie_breaks_lower_feature_then_threshold():
    X = np.array([[0, 0], [1, 1], [2, 2], [3, 3]], dtype=float)
    y = np.array([0, 1, 0, 1])
    tree = GiniTree(max_depth=1, min_leaf=1).fit(X, y)
    assert tree.feature_[0] == 0
    assert tree.threshold_[0] == 0.5


def test_tree_respects_limits():
    rng = np.random.default_rng(1)
    X = rng.random((300, 3))
    y = rng.integers(0, 2, 300)
    tree = GiniTree(max_depth=3, min_leaf=20).fit(X, y)
    assert tree.depth_ <= 3
    sizes = np.bincount(tree.apply(X))
    assert sizes[sizes > 0].min() >= 20


def test_fold_plan_partition():
    plan = FoldPlan.make(103, 5, seed=4)
    sizes = np.bincount(plan.assignment)
    assert sizes.max() - sizes.min() <= 1
    tests = np.concatenate([test for _, test in plan.splits()])
    assert sorted(tests.tolist()) == list(range(103))
    for train, test in plan.splits():
        assert not set(train) & set(test)
    again = FoldPlan.make(103, 5, seed=4)
    assert np.array_equal(plan.assignment, again.assignment)
    with pytest.raises(DataError):
        FoldPlan.make(10, 1)


def test_identity_pipeline_one_nn_on_duplicated_data():
    rng = np.random.default_rng(0)
    X = rng.random((40, 3))
    y = rng.integers(0, 3, 40)
    X2, y2 = np.vstack([X, X]), np.concatenate([y, y])
    # fold assignment that keeps each pair's copies apart
    assignment = np.concatenate([np.arange(40) % 2, 1 - np.arange(40) % 2])
    plan = FoldPlan(2, assignment, 0)
    report = cross_validate(X2, y2, None, KNNClassifier(n_neighbors=1), plan)
    assert report.fold_accuracies == [1.0, 1.0]
    assert report.mean_accuracy == 1.0


def test_report_mean_and_skips():
    X = np.random.default_rng(0).integers(0, 2, size=(50, 2)).astype(float)
    y = np.random.default_rng(1).integers(0, 2, 50)
    plan = FoldPlan.make(50, 5, seed=0)
    report = cross_validate(X, y, FCBFSelector(threshold=0.9), KNNClassifier(), plan, algorithm="fcbf")
    assert report.fold_accuracies == [None] * 5
    assert report.mean_accuracy is None
    assert len(report.skipped) == 5
    assert "skipped" in format_table([report])
    ok = EvalReport("x", "knn", 3, [0.5, 1.0])
    assert ok.mean_accuracy == 0.75


def test_preprocessing_fitted_on_train_only():
    rng = np.random.default_rng(2)
    X = rng.random((200, 2))
    y = (X[:, 0] > 0.5).astype(int)
    for est in (IDADiscretizer(sample_size=30), LOFDiscretizer(), chain(MinMaxScaler(), FCBFSelector(0.0))):
        fitted = est.fit(X[:150], y[:150])
        before = fitted.transform(X[:150])
        fitted.transform(X[150:])
        assert np.array_equal(before, fitted.transform(X[:150]))


def test_cross_validate_deterministic():
    rng = np.random.default_rng(3)
    X = rng.random((120, 3))
    y = (X[:, 1] + 0.1 * rng.random(120) > 0.5).astype(int)
    plan = FoldPlan.make(120, 4, seed=9)
    runs = [
        cross_validate(X, y, build_preprocessor("ida", 3, {"sample_size": 20}), KNNClassifier(), plan, "ida")
        for _ in range(2)
    ]
    assert runs[0].fold_accuracies == runs[1].fold_accuracies
    assert format_csv(runs).count("\n") == 1 + 2 * 5


def test_stratified_subset():
    y = np.array([0] * 900 + [1] * 100)
    X = np.arange(1000.0)[:, None]
    Xs, ys = stratified_subset(X, y, 200, seed=1)
    assert np.bincount(ys).tolist() == [180, 20]
    assert len(set(Xs.ravel())) == 200
    assert np.all(y[Xs.ravel().astype(int)] == ys)
    Xt, yt = stratified_subset(X, y, 200, seed=1)
    assert np.array_equal(Xs, Xt)
    with pytest.raises(DataError):
        stratified_subset(X, y, 2000)


def test_format_table_layout():
    reports = [EvalReport("none", "knn", 3, [0.9, 1.0]), EvalReport("pid", "dtree", None, [0.8, 0.6])]
    text = format_table(reports, dataset="skin")
    lines = text.splitlines()
    assert lines[0].split() == ["algorithm", "classifier", "skin", "fold1", "fold2"]
    assert "knn (k=3)" in lines[2] and "0.9500" in lines[2]
    assert "0.7000" in lines[3]
    assert "prep_s" in format_table(reports, timings=True)
