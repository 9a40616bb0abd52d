"""Command-line front end: ``streamprep {discretize,select,evaluate}``.

Exit status is 0 on success, 1 for usage errors, 2 for data errors and 3 for
algorithm errors; failures print one diagnostic line to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .discretization import save_cuts
from .evaluation import (
    DISCRETIZERS,
    SELECTORS,
    ALGORITHMS,
    FoldPlan,
    build_classifier,
    build_preprocessor,
    cross_validate,
    format_csv,
    format_table,
    stratified_subset,
)
from .exceptions import DataError, EmptySelectionError
from .io import ingest_csv, write_csv, write_indices


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _probability(text):
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {text}")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return v


def _nonnegative_float(text):
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return v


def _delimiter(text):
    return {"tab": "\t", "space": None, "whitespace": None}.get(text, text)


def _columns(text):
    return [int(c) for c in text.split(",") if c.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="streamprep", description="Streaming discretization and feature selection.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    g = common.add_argument_group("input")
    g.add_argument("--input", "-i", required=True, help="CSV file with features and a label column")
    g.add_argument("--label-col", type=int, default=-1, help="label column index (default: last)")
    g.add_argument("--drop", type=_columns, default=[], metavar="C1,C2", help="columns to ignore")
    g.add_argument("--delimiter", type=_delimiter, default=",", help="field separator; 'tab' or 'space' accepted")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--partitions", type=_positive, default=1, help="dataflow partitions for counting")

    disc = _Parser(add_help=False)
    g = disc.add_argument_group("discretizer parameters")
    g.add_argument("--bins", type=_positive, default=5, help="IDA bins")
    g.add_argument("--sample-size", type=_positive, default=1000, help="IDA reservoir size per attribute")
    g.add_argument("--alpha", type=_probability, default=0.10, help="PiD layer-1 split threshold")
    g.add_argument("--l1-bins", type=_positive, default=5, help="PiD initial layer-1 intervals")
    g.add_argument("--update-every", type=_positive, default=50, help="PiD layer-2 refresh period")
    g.add_argument("--step", type=float, default=None, help="PiD layer-1 width (default range/l1-bins)")
    g.add_argument("--init-th", type=_positive, default=1, help="LOFD initial buffer size")
    g.add_argument("--capacity", type=_positive, default=10000, help="LOFD retained points per attribute")
    g.add_argument("--criterion", choices=("gini", "smoothed"), default="gini", help="LOFD merge cost")

    sel = _Parser(add_help=False)
    g = sel.add_argument_group("selector parameters")
    g.add_argument("--select-nf", type=_positive, default=None, help="features to keep (default half)")
    g.add_argument("--threshold", type=_probability, default=0.05, help="FCBF relevance threshold")
    g.add_argument("--eta", type=_nonnegative_float, default=0.2, help="OFS step size")
    g.add_argument("--lam", type=_nonnegative_float, default=0.01, help="OFS regularization")
    g.add_argument("--n-nonzero", type=_positive, default=None, help="OFS weight budget (default select-nf)")
    g.add_argument("--epsilon", type=_probability, default=None, help="OFS exploration rate (partial inputs)")
    g.add_argument("--one-vs-rest", default=None, metavar="LABEL", help="OFS: treat LABEL as positive")

    p = sub.add_parser("discretize", parents=[common, disc], help="bin features and export cut points")
    p.add_argument("--algo", choices=DISCRETIZERS, required=True)
    p.add_argument("--output", "-o", required=True, help="CSV of bin indices")
    p.add_argument("--cuts", required=True, help="JSON file of cut points")

    p = sub.add_parser("select", parents=[common, sel], help="keep the most informative features")
    p.add_argument("--algo", choices=SELECTORS, required=True)
    p.add_argument("--output", "-o", required=True, help="CSV with the selected features")
    p.add_argument("--selected", required=True, help="selected feature indices, one per line")

    p = sub.add_parser("evaluate", parents=[common, disc, sel], help="cross-validate a preprocessing step")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--classifier", choices=("knn", "dtree"), default="knn")
    p.add_argument("--k", type=_positive, default=3, help="KNN neighbours")
    p.add_argument("--max-depth", type=int, default=10)
    p.add_argument("--min-leaf", type=_positive, default=5)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--subset", type=_positive, default=None, help="stratified subset size")
    p.add_argument("--output", "-o", required=True, help="report table")
    p.add_argument("--csv", default=None, help="per-fold report as CSV")
    p.add_argument("--timings", action="store_true", help="include preprocessing wall-time in reports")
    return parser


PARAM_KEYS = {
    "discretize": ("bins", "sample_size", "alpha", "l1_bins", "update_every", "step",
                   "init_th", "capacity", "criterion"),
    "select": ("select_nf", "threshold", "eta", "lam", "n_nonzero", "epsilon", "one_vs_rest"),
}
PARAM_KEYS["evaluate"] = PARAM_KEYS["discretize"] + PARAM_KEYS["select"] + (
    "classifier", "k", "max_depth", "min_leaf", "folds", "subset")


def _params(args) -> dict:
    out = {key: getattr(args, key) for key in PARAM_KEYS[args.command]}
    out.update(seed=args.seed, partitions=args.partitions)
    return out


def _echo(args, params, n_rows, n_features):
    shown = json.dumps(params, sort_keys=True)
    print(f"{args.command} algo={args.algo} seed={args.seed} rows={n_rows} features={n_features} params={shown}")


def _binarize(ds, args):
    if args.one_vs_rest is None:
        return ds.y, None
    if args.one_vs_rest not in ds.labels.classes_:
        raise DataError(f"label {args.one_vs_rest!r} not found in the label column")
    positive = ds.labels.classes_.index(args.one_vs_rest)
    return (ds.y == positive).astype(np.int64), [0, 1]


def _feature_names(ds, idx):
    return None if ds.header is None else [ds.header[i] for i in idx]


def run_discretize(args, ds, params) -> None:
    est = build_preprocessor(args.algo, ds.X.shape[1], params)
    est.fit(ds.X, ds.y)
    bins = est.transform(ds.X)
    write_csv(args.output, bins, ds.labels.decode(ds.y), header=ds.header)
    save_cuts(est[-1].cut_points_ if hasattr(est, "steps") else est.cut_points_, args.cuts)


def run_select(args, ds, params) -> None:
    # selectors score min-max scaled values; the output keeps the raw columns
    pipe = build_preprocessor(args.algo, ds.X.shape[1], params)
    y, classes = _binarize(ds, args) if args.algo == "ofs" else (ds.y, None)
    fit_params = {} if classes is None else {pipe.steps[-1][0] + "__classes": classes}
    pipe.fit(ds.X, y, **fit_params)
    idx = pipe[-1].get_support(indices=True)
    if len(idx) == 0:
        raise EmptySelectionError(f"{args.algo} selected no features")
    write_csv(args.output, ds.X[:, idx], ds.labels.decode(ds.y), header=_feature_names(ds, idx))
    write_indices(args.selected, idx)


def run_evaluate(args, ds, params) -> None:
    X, y = ds.X, ds.y
    if args.algo == "ofs":
        y, _ = _binarize(ds, args)
    if args.subset is not None and args.subset < len(y):
        X, y = stratified_subset(X, y, args.subset, seed=args.seed)
    plan = FoldPlan.make(len(y), args.folds, seed=args.seed)
    prep = build_preprocessor(args.algo, X.shape[1], params)
    clf = build_classifier(args.classifier, k=args.k, max_depth=args.max_depth, min_leaf=args.min_leaf)
    report = cross_validate(X, y, prep, clf, plan, algorithm=args.algo, classifier_name=args.classifier)
    table = format_table([report], dataset="accuracy", timings=args.timings)
    with open(args.output, "w") as fh:
        fh.write(table)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(format_csv([report], timings=args.timings))
    sys.stdout.write(table)


COMMANDS = {"discretize": run_discretize, "select": run_select, "evaluate": run_evaluate}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"streamprep: usage error: {exc}", file=sys.stderr)
        return 1
    try:
        ds = ingest_csv(args.input, label_col=args.label_col, drop_cols=args.drop, delimiter=args.delimiter)
        params = _params(args)
        _echo(args, params, *ds.X.shape)
        COMMANDS[args.command](args, ds, params)
    except (DataError, OSError) as exc:
        print(f"streamprep: data error: {_one_line(exc)}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - every other failure is an algorithm error
        print(f"streamprep: {type(exc).__name__}: {_one_line(exc)}", file=sys.stderr)
        return 3
    return 0


def _one_line(exc) -> str:
    return " ".join(str(exc).split()) or type(exc).__name__


if __name__ == "__main__":
    sys.exit(main())
