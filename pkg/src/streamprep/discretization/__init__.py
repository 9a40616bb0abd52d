"""Online discretizers and the cut-point machinery they share."""

from ._cuts import (
    apply_discretization,
    cuts_from_json,
    cuts_to_json,
    load_cuts,
    normalize_cuts,
    save_cuts,
)
from ._ida import IDADiscretizer, IDASketch
from ._interval_heap import IntervalHeap
from ._lofd import Interval, LOFDAttribute, LOFDiscretizer, gini_cost, smoothed_cost
from ._mdl import entropy_cuts, mdl_accept_counts, mdl_accept_split, mdl_threshold
from ._pid import PiDiscretizer, PiDLayers
from ._reservoir import ReservoirSample, reservoir_slot

__all__ = [
    "IDADiscretizer",
    "IDASketch",
    "Interval",
    "IntervalHeap",
    "LOFDAttribute",
    "LOFDiscretizer",
    "PiDLayers",
    "PiDiscretizer",
    "ReservoirSample",
    "apply_discretization",
    "cuts_from_json",
    "cuts_to_json",
    "entropy_cuts",
    "gini_cost",
    "load_cuts",
    "mdl_accept_counts",
    "mdl_accept_split",
    "mdl_threshold",
    "normalize_cuts",
    "reservoir_slot",
    "save_cuts",
    "smoothed_cost",
]
