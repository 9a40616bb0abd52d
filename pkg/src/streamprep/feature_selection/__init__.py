"""Streaming filter feature selectors."""

from ._fcbf import FCBFSelector, predominant_features
from ._infogain import InfoGainSelector, rank_features
from ._ofs import OFSSelector, ofs_update, truncate

__all__ = [
    "FCBFSelector",
    "InfoGainSelector",
    "OFSSelector",
    "ofs_update",
    "predominant_features",
    "rank_features",
    "truncate",
]
