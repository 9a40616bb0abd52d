"""Named preprocessing pipelines and report formatting for benchmark runs."""

from __future__ import annotations

import csv
import io

from ..discretization import IDADiscretizer, LOFDiscretizer, PiDiscretizer
from ..exceptions import DataError
from ..feature_selection import FCBFSelector, InfoGainSelector, OFSSelector
from ..preprocessing import MinMaxScaler, chain
from ._cv import EvalReport
from ._knn import KNNClassifier
from ._tree import GiniTree

SELECTORS = ("infogain", "fcbf", "ofs")
DISCRETIZERS = ("ida", "pid", "lofd")
ALGORITHMS = ("none",) + SELECTORS + DISCRETIZERS

DEFAULTS = {
    "bins": 5,
    "sample_size": 1000,
    "alpha": 0.10,
    "l1_bins": 5,
    "update_every": 50,
    "step": None,
    "init_th": 1,
    "capacity": 10000,
    "criterion": "gini",
    "threshold": 0.05,
    "select_nf": None,
    "eta": 0.2,
    "lam": 0.01,
    "n_nonzero": None,
    "epsilon": None,
    "seed": 0,
    "partitions": 1,
}


def half_features(n_features: int) -> int:
    return max(1, n_features // 2)


def build_preprocessor(algorithm: str, n_features: int, params: dict | None = None, scale: bool = True):
    """Estimator for ``algorithm`` configured from ``params`` (missing keys take defaults).

    Selectors and PiD run after min-max scaling when ``scale`` is true; IDA and
    LOFD see raw values. ``"none"`` gives the scaler alone, or None.
    """
    p = {**DEFAULTS, **(params or {})}
    if algorithm not in ALGORITHMS:
        raise DataError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    nf = p["select_nf"] if p["select_nf"] is not None else half_features(n_features)
    if algorithm == "none":
        return MinMaxScaler() if scale else None
    if algorithm == "ida":
        return IDADiscretizer(n_bins=p["bins"], sample_size=p["sample_size"], random_state=p["seed"])
    if algorithm == "lofd":
        return LOFDiscretizer(init_th=p["init_th"], capacity=p["capacity"], criterion=p["criterion"])
    if algorithm == "pid":
        step = PiDiscretizer(
            alpha=p["alpha"], l1_bins=p["l1_bins"], update_every=p["update_every"], step=p["step"]
        )
    elif algorithm == "infogain":
        step = InfoGainSelector(n_select=nf, n_partitions=p["partitions"])
    elif algorithm == "fcbf":
        step = FCBFSelector(threshold=p["threshold"], n_partitions=p["partitions"])
    else:
        step = OFSSelector(
            n_select=nf, eta=p["eta"], lam=p["lam"], n_nonzero=p["n_nonzero"],
            epsilon=p["epsilon"], random_state=p["seed"],
        )
    return chain(MinMaxScaler(), step) if scale else step


def build_classifier(name: str, k: int = 3, max_depth: int = 10, min_leaf: int = 5):
    if name == "knn":
        return KNNClassifier(n_neighbors=k)
    if name == "dtree":
        return GiniTree(max_depth=max_depth, min_leaf=min_leaf)
    raise DataError(f"unknown classifier {name!r}; choose knn or dtree")


def _fmt(acc):
    return "skipped" if acc is None else f"{acc:.4f}"


def format_table(reports: list[EvalReport], dataset: str = "dataset", timings: bool = False) -> str:
    """Plain-text accuracy table, one row per algorithm and classifier."""
    rows = []
    for r in reports:
        row = [r.algorithm, r.label, _fmt(r.mean_accuracy)] + [_fmt(a) for a in r.fold_accuracies]
        if timings:
            row.append(f"{r.preprocess_seconds:.3f}")
        rows.append(row)
    n_folds = max((len(r.fold_accuracies) for r in reports), default=0)
    header = ["algorithm", "classifier", dataset] + [f"fold{i + 1}" for i in range(n_folds)]
    if timings:
        header.append("prep_s")
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(line, widths)).rstrip() for line in [header, *rows]]
    lines.insert(1, "  ".join("-" * w for w in widths))
    for r in reports:
        for fold, why in sorted(r.skipped.items()):
            lines.append(f"# {r.algorithm} fold{fold + 1} skipped: {why}")
    return "\n".join(lines) + "\n"


def format_csv(reports: list[EvalReport], timings: bool = False) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    header = ["algorithm", "classifier", "k", "fold", "accuracy"]
    if timings:
        header.append("preprocess_seconds")
    w.writerow(header)
    for r in reports:
        k = "" if r.k is None else r.k
        rows = [(str(i + 1), "" if a is None else repr(a)) for i, a in enumerate(r.fold_accuracies)]
        rows.append(("mean", "" if r.mean_accuracy is None else repr(r.mean_accuracy)))
        for fold, acc in rows:
            line = [r.algorithm, r.classifier, k, fold, acc]
            if timings:
                line.append(f"{r.preprocess_seconds:.6f}" if fold == "mean" else "")
            w.writerow(line)
    return out.getvalue()
