import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from sklearn.preprocessing import FunctionTransformer

from streamprep import DataError, MinMaxScaler, NotFittedError, PiDiscretizer, chain
from streamprep.feature_selection import InfoGainSelector
from streamprep.preprocessing import minmax_scale
from streamprep.validation import LabelDictionary, check_dataset, iter_instances


def test_minmax_scale_examples():
    assert minmax_scale(1, 1, 3) == 0.0
    assert minmax_scale(3, 1, 3) == 1.0
    assert minmax_scale(5, 1, 3) == 1.0
    assert minmax_scale(-5, 1, 3) == 0.0
    assert minmax_scale(7, 2, 2) == 0.5


def test_scaler_fit_and_transform():
    s = MinMaxScaler().fit([[1.0], [3.0]])
    assert s.data_min_.tolist() == [1.0] and s.data_max_.tolist() == [3.0]
    assert s.transform([[1.0], [3.0], [2.0]]).ravel().tolist() == [0.0, 1.0, 0.5]


def test_scaler_constant_flag_and_refit_replaces():
    s = MinMaxScaler().fit([[1.0, 4.0], [2.0, 4.0]])
    assert s.constant_.tolist() == [False, True]
    assert s.transform([[9.0, 4.0]]).tolist() == [[1.0, 0.5]]
    s.fit([[10.0, 0.0], [20.0, 1.0]])
    assert s.data_min_.tolist() == [10.0, 0.0]


def test_scaler_partial_fit_extends_range():
    s = MinMaxScaler().partial_fit([[1.0]]).partial_fit([[5.0]])
    assert s.transform([[3.0]]).tolist() == [[0.5]]


def test_fit_errors():
    with pytest.raises(DataError):
        MinMaxScaler().fit(np.empty((0, 2)))
    with pytest.raises(NotFittedError):
        MinMaxScaler().transform([[1.0]])
    s = MinMaxScaler().fit([[1.0, 2.0]])
    with pytest.raises(DataError):
        s.transform([[1.0]])
    with pytest.raises(DataError):
        s.transform([[np.nan, 1.0]])


def test_transform_before_fit_errors_for_batch_transformers():
    X, y = np.array([[0.1], [0.9]]), np.array([0, 1])
    for est in (InfoGainSelector(), PiDiscretizer()):
        with pytest.raises(NotFittedError):
            est.transform(X)


def test_chain_of_identities_is_identity():
    X = np.arange(12.0).reshape(4, 3)
    pipe = chain(FunctionTransformer(), FunctionTransformer())
    assert np.array_equal(pipe.fit(X).transform(X), X)


def test_chain_flattens_and_rejects_empty():
    inner = chain(MinMaxScaler(), FunctionTransformer())
    assert len(chain(inner, FunctionTransformer()).steps) == 3
    with pytest.raises(DataError):
        chain()


def test_chain_minmax_pid_matches_manual_composition():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(300, 2)) * 10
    y = (X[:, 0] > 0).astype(int)
    pipe = chain(MinMaxScaler(), PiDiscretizer()).fit(X, y)
    scaler = MinMaxScaler().fit(X)
    pid = PiDiscretizer().fit(scaler.transform(X), y)
    assert np.array_equal(pipe.transform(X), pid.transform(scaler.transform(X)))


def test_label_dictionary_round_trip():
    enc = LabelDictionary()
    codes = enc.encode(["M", "F", "I", "F"])
    assert codes.tolist() == [0, 1, 2, 1]
    assert enc.decode(codes) == ["M", "F", "I", "F"]
    assert len(enc) == 3


def test_check_dataset_labels():
    X = [[1.0], [2.0]]
    with pytest.raises(DataError):
        check_dataset(X, [0, -1])
    with pytest.raises(DataError):
        check_dataset(X, [0.5, 1.0])
    with pytest.raises(DataError):
        check_dataset(X, ["a", "b"])
    _, y = check_dataset(X, [1.0, 0.0])
    assert y.dtype.kind == "i"
    _, y = check_dataset(X, ["a", "b"], encoded=False)
    assert y.tolist() == ["a", "b"]


def test_iter_instances():
    items = list(iter_instances([[1.0, 2.0], [3.0, 4.0]], [1, 0]))
    assert [i.label for i in items] == [1, 0]
    assert items[1].features.tolist() == [3.0, 4.0]


finite = st.floats(-1e6, 1e6, allow_nan=False)


@given(arrays(np.float64, st.tuples(st.integers(1, 20), st.integers(1, 4)), elements=finite),
       arrays(np.float64, (5, 4), elements=st.floats(-1e7, 1e7)))
def test_scaled_output_in_unit_interval(X, Z):
    s = MinMaxScaler().fit(X)
    out = s.transform(Z[:, : X.shape[1]])
    assert np.all((out >= 0.0) & (out <= 1.0))


@given(arrays(np.float64, st.tuples(st.integers(2, 15), st.integers(1, 3)), elements=finite))
def test_pipeline_is_composition(X):
    pipe = chain(MinMaxScaler(), FunctionTransformer(np.round)).fit(X)
    assert np.array_equal(pipe.transform(X), np.round(MinMaxScaler().fit(X).transform(X)))
