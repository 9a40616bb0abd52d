from sklearn.exceptions import NotFittedError

__all__ = ["DataError", "EmptySelectionError", "NotFittedError"]


class DataError(ValueError):
    """Malformed input data: bad cells, ragged rows, empty files, wrong shapes."""


class EmptySelectionError(ValueError):
    """A feature selector kept no features, so there is nothing to transform."""
