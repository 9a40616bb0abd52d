from pathlib import Path

import pytest
from sklearn.datasets import load_iris

DATA = Path(__file__).parent / "data"


@pytest.fixture
def iris_csv(tmp_path):
    iris = load_iris()
    path = tmp_path / "iris.csv"
    with open(path, "w") as fh:
        for row, target in zip(iris.data, iris.target):
            fh.write(",".join(repr(float(v)) for v in row) + f",{iris.target_names[target]}\n")
    return path
