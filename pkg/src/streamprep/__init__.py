"""Streaming-friendly discretization and feature selection with a scikit-learn API."""

from .discretization import IDADiscretizer, LOFDiscretizer, PiDiscretizer
from .exceptions import DataError, EmptySelectionError, NotFittedError
from .feature_selection import FCBFSelector, InfoGainSelector, OFSSelector
from .preprocessing import MinMaxScaler, chain

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "EmptySelectionError",
    "FCBFSelector",
    "IDADiscretizer",
    "InfoGainSelector",
    "LOFDiscretizer",
    "MinMaxScaler",
    "NotFittedError",
    "OFSSelector",
    "PiDiscretizer",
    "chain",
]
