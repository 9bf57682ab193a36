"""Command-line front end for the delay-classification pipeline.

Subcommands mirror the pipeline stages: `synth` writes a synthetic dataset,
`prepare` loads/concatenates/filters/cleans raw CSVs, `corr` prints Pearson
correlations, `balance` oversamples an encoded matrix, `train` runs
encode -> balance -> split -> boost and saves the model, `tune` grid-searches
(estimators, max depth), `evaluate` scores a saved model on labelled data,
and `predict` emits labels/probabilities/raw scores for new rows.

A run with --smote-percent 0 skips balancing (reports mark it Strategy 1);
any positive multiple of 100 enables it (Strategy 2).  All randomness flows
from --seed: stage seeds derive as SeedSequence([seed, STAGE]) with STAGE
1 for oversampling, 2 for the shuffle/split, and 3 for fold construction,
so reruns with one seed reproduce every stage byte for byte.  --threads caps
internal parallelism; the implementation runs the deterministic sequential
schedule regardless, so outputs never depend on it.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric or training
error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import boost, dataset, encode, metrics, model_io, resample, tune
from .errors import DataError, DelayBoostError, TrainingError

SMOTE_STAGE = 1
SPLIT_STAGE = 2
FOLD_STAGE = 3


def stage_seed(seed: int, stage: int) -> int:
    """Derive a stage seed from the master seed (NumPy SeedSequence)."""
    return int(np.random.SeedSequence([seed, stage]).generate_state(1)[0])


def strategy_name(smote_percent: int) -> str:
    return "Strategy 1" if smote_percent == 0 else "Strategy 2"


@dataclass(frozen=True)
class RunConfig:
    """The shared pipeline settings a subcommand runs with.

    A zero oversampling percent selects Strategy 1 (no balancing); any
    positive multiple of 100 selects Strategy 2.
    """

    input_path: str
    schema_path: str
    one_hot: str | None
    smote_percent: int
    train_fraction: float
    seed: int
    threads: int = 1

    @property
    def strategy(self) -> str:
        return strategy_name(self.smote_percent)

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            input_path=args.input,
            schema_path=args.schema,
            one_hot=args.one_hot,
            smote_percent=args.smote_percent,
            train_fraction=getattr(args, "train_frac", 0.8),
            seed=args.seed,
            threads=getattr(args, "threads", 1),
        )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        args.func(args)
        return 0
    except TrainingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (DelayBoostError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delayboost",
        description="Flight arrival delay classification pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic labelled dataset")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--positive-frac", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--schema-out")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("prepare", help="load, concatenate, filter, and clean raw CSVs")
    p.add_argument("--input", nargs="+", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument(
        "--filter",
        action="append",
        default=[],
        metavar="COL=V1,V2",
        help="keep rows whose column equals one of the values; repeatable",
    )
    p.add_argument("--drop", default="", metavar="COL1,COL2")
    p.add_argument("--out", required=True)
    p.add_argument("--schema-out")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("corr", help="Pearson correlations between encoded columns")
    p.add_argument("--input", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--columns", help="comma list; default: continuous features + label")
    p.add_argument("--out", help="write CSV here instead of printing a table")
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("balance", help="randomized-SMOTE oversample an encoded matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--one-hot", default=None, metavar="COL1,COL2")
    p.add_argument("--smote-percent", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("train", help="encode, balance, split, and fit the classifier")
    _pipeline_flags(p)
    p.add_argument("--estimators", type=int, default=100)
    p.add_argument("--max-depth", type=int, default=3)
    p.add_argument("--learning-rate", type=float, default=0.1)
    p.add_argument("--min-samples-split", type=int, default=2)
    p.add_argument("--min-samples-leaf", type=int, default=1)
    p.add_argument("--model-out", required=True)
    p.add_argument("--report-out")
    p.add_argument("--roc-out")
    p.add_argument("--timestamp", help="recorded in model metadata when given")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("tune", help="grid search over estimators and max depth")
    _pipeline_flags(p)
    p.add_argument("--grid", metavar="E1,E2x D1,D2", help='e.g. "100,200x3,5"')
    p.add_argument("--folds", type=int, default=tune.DEFAULT_FOLDS)
    p.add_argument("--learning-rate", type=float, default=0.1)
    p.add_argument("--metric", choices=("accuracy", "f1"), default="accuracy")
    p.add_argument("--report-out")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("evaluate", help="score a saved model on labelled data")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--report-out")
    p.add_argument("--roc-out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("predict", help="predict labels for new rows")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    return parser


def _pipeline_flags(p):
    p.add_argument("--input", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--one-hot", default=None, metavar="COL1,COL2")
    p.add_argument("--smote-percent", type=int, default=0)
    p.add_argument("--train-frac", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)


def cmd_synth(args):
    ds = dataset.generate_synthetic(args.rows, args.positive_frac, args.seed)
    dataset.write_csv(ds, args.out)
    if args.schema_out:
        with open(args.schema_out, "w", encoding="utf-8") as fh:
            fh.write(ds.schema.to_json() + "\n")
    balance = dataset.class_balance(ds)
    print(f"wrote {ds.n_rows} rows to {args.out} "
          f"(positives={balance.positives}, negatives={balance.negatives})")


def cmd_prepare(args):
    schema = _read_schema(args.schema)
    parts = [dataset.load_csv(path, schema) for path in args.input]
    ds = dataset.concat(parts)
    for rule in args.filter:
        if "=" not in rule:
            raise DataError(f"bad --filter {rule!r}, expected COL=V1,V2")
        column, values = rule.split("=", 1)
        ds = dataset.filter_equals(ds, column.strip(), values.split(","))
    drops = [c.strip() for c in args.drop.split(",") if c.strip()]
    if drops:
        ds = dataset.drop_columns(ds, drops)
    before = ds.n_rows
    ds = dataset.drop_missing_labels(ds)
    dataset.write_csv(ds, args.out)
    if args.schema_out:
        with open(args.schema_out, "w", encoding="utf-8") as fh:
            fh.write(ds.schema.to_json() + "\n")
    balance = dataset.class_balance(ds)
    print(f"kept {ds.n_rows} of {before} rows "
          f"(negatives={balance.negatives}, positives={balance.positives})")


def cmd_corr(args):
    schema = _read_schema(args.schema)
    ds = dataset.drop_missing_labels(dataset.load_csv(args.input, schema))
    plan = encode.fit_encoding(ds, one_hot=())
    fm = encode.apply_encoding(ds, plan)
    if args.columns:
        columns = [c.strip() for c in args.columns.split(",")]
    else:
        columns = [c.name for c in schema.columns if c.kind == dataset.CONTINUOUS]
        columns.append(schema.label_name)
    result = encode.pearson_matrix(fm, columns)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("," + ",".join(result.names) + "\n")
            for name, row in zip(result.names, result.matrix):
                fh.write(name + "," + ",".join(repr(float(v)) for v in row) + "\n")
    else:
        width = max(len(n) for n in result.names)
        print(" " * width + "  " + "  ".join(n.rjust(width) for n in result.names))
        for name, row in zip(result.names, result.matrix):
            print(name.rjust(width) + "  "
                  + "  ".join(f"{v:>{width}.4f}" for v in row))
    if result.degenerate:
        print(f"constant columns (correlation set to 0): "
              f"{', '.join(result.degenerate)}", file=sys.stderr)


def cmd_balance(args):
    cfg = RunConfig.from_args(args)
    fm = _encoded_matrix(cfg)
    before = int(fm.labels.sum()), int(fm.n_rows - fm.labels.sum())
    fm = _apply_balancing(fm, cfg)
    _write_matrix(fm, args.out)
    after = int(fm.labels.sum()), int(fm.n_rows - fm.labels.sum())
    print(f"label 1: {before[0]} -> {after[0]}; label 0: {before[1]} -> {after[1]}")


def cmd_train(args):
    cfg = RunConfig.from_args(args)
    split = _prepare_split(cfg)

    params = boost.BoostParams(
        estimators=args.estimators,
        learning_rate=args.learning_rate,
        tree_params=_tree_params(args),
        seed=cfg.seed,
    )
    model, trace = boost.fit_gbc(split.train, params)

    metadata = {
        "seed": cfg.seed,
        "estimators": args.estimators,
        "max_depth": args.max_depth,
        "min_samples_split": args.min_samples_split,
        "min_samples_leaf": args.min_samples_leaf,
        "learning_rate": args.learning_rate,
        "smote_percent": cfg.smote_percent,
        "train_fraction": cfg.train_fraction,
        "strategy": cfg.strategy,
    }
    if args.timestamp is not None:
        metadata["timestamp"] = args.timestamp
    model_io.save_model(model, args.model_out, metadata)

    doc = _evaluation_doc(
        model,
        split.validation,
        threshold=0.5,
        strategy=cfg.strategy,
        extra={
            "training_rows": split.train.n_rows,
            "validation_rows": split.validation.n_rows,
            "training_accuracy": trace.accuracy[-1],
        },
    )
    _emit_report(doc, args.report_out)
    if args.roc_out:
        _write_roc(model, split.validation, args.roc_out)


def cmd_tune(args):
    cfg = RunConfig.from_args(args)
    split = _prepare_split(cfg)
    grid = _parse_grid(args.grid) if args.grid else tune.DEFAULT_GRID
    base = boost.BoostParams(learning_rate=args.learning_rate)
    result = tune.grid_search(
        split.train,
        grid=grid,
        folds=args.folds,
        base=base,
        seed=stage_seed(cfg.seed, FOLD_STAGE),
        metric=args.metric,
    )
    print(result.render(), end="")
    if args.report_out:
        _write_json(result.to_doc(), args.report_out)


def cmd_evaluate(args):
    model, metadata = model_io.load_model(args.model)
    ds, fm = _load_with_plan(args.input, model, missing_label_ok=False)
    skipped = ds.n_rows - fm.n_rows if fm.n_rows != ds.n_rows else 0
    doc = _evaluation_doc(
        model,
        fm,
        threshold=args.threshold,
        strategy=metadata.get("strategy", "unknown"),
        extra={"rows": fm.n_rows},
    )
    if skipped:
        doc["rows_skipped_missing_label"] = skipped
    if fm.unseen_categories:
        doc["unseen_category_cells"] = fm.unseen_categories
    _emit_report(doc, args.report_out)
    if args.roc_out:
        _write_roc(model, fm, args.roc_out)


def cmd_predict(args):
    model, _ = model_io.load_model(args.model)
    if not 0.0 < args.threshold < 1.0:
        raise DataError(f"threshold must be in (0, 1), got {args.threshold}")
    _, fm = _load_with_plan(args.input, model, missing_label_ok=True, drop_unlabelled=False)
    scores = boost.decision_function(model, fm.values)
    probas = boost.sigmoid(scores)
    labels = (probas >= args.threshold).astype(int)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("predicted_label,probability,decision_score\n")
        for lab, p, s in zip(labels, probas, scores):
            fh.write(f"{int(lab)},{float(p)!r},{float(s)!r}\n")
    if fm.unseen_categories:
        print(f"warning: {fm.unseen_categories} cells held categories unseen "
              f"at training time", file=sys.stderr)
    print(f"wrote {labels.size} predictions to {args.out}")


def _tree_params(args):
    from .tree import TreeParams

    return TreeParams(
        max_depth=args.max_depth,
        min_samples_split=args.min_samples_split,
        min_samples_leaf=args.min_samples_leaf,
    )


def _read_schema(path) -> dataset.Schema:
    with open(path, encoding="utf-8") as fh:
        return dataset.Schema.from_json(fh.read())


def _resolve_one_hot(schema: dataset.Schema, arg):
    if arg is not None:
        return tuple(c.strip() for c in arg.split(",") if c.strip())
    categorical = {c.name for c in schema.columns if c.kind == dataset.CATEGORICAL}
    return tuple(c for c in encode.DEFAULT_ONE_HOT if c in categorical)


def _encoded_matrix(args) -> encode.FeatureMatrix:
    schema = _read_schema(args.schema)
    ds = dataset.drop_missing_labels(dataset.load_csv(args.input, schema))
    plan = encode.fit_encoding(ds, one_hot=_resolve_one_hot(schema, args.one_hot))
    return encode.apply_encoding(ds, plan)


def _load_with_plan(path, model, missing_label_ok: bool, drop_unlabelled: bool = True):
    if model.plan is None:
        raise DataError("model file carries no encoding plan")
    plan = model.plan
    schema = dataset.Schema(
        plan.feature_columns + (dataset.Column(plan.label_name, dataset.LABEL),),
        plan.positive_label_value,
    )
    ds = dataset.load_csv(path, schema, missing_label_ok=missing_label_ok)
    cleaned = dataset.drop_missing_labels(ds) if drop_unlabelled else ds
    fm = encode.apply_encoding(cleaned, plan, training=False)
    return ds, fm


def _evaluation_doc(model, fm, threshold, strategy, extra):
    scores = boost.decision_function(model, fm.values)
    pred = (boost.sigmoid(scores) >= threshold).astype(int)
    summary = metrics.summarize(metrics.confusion(fm.labels, pred))
    roc = metrics.roc_auc(fm.labels, scores)
    doc = {"strategy": strategy}
    doc.update(extra)
    doc.update(
        {
            "validation_accuracy": summary.accuracy,
            "recall": summary.recall,
            "precision": summary.precision,
            "f1": summary.f1,
            "weighted_recall": summary.weighted_recall,
            "weighted_precision": summary.weighted_precision,
            "weighted_f1": summary.weighted_f1,
            "auroc": roc.auroc,
            "confusion": {
                "tp": summary.confusion.tp,
                "fn": summary.confusion.fn,
                "fp": summary.confusion.fp,
                "tn": summary.confusion.tn,
            },
        }
    )
    if summary.degenerate:
        doc["degenerate_metrics"] = list(summary.degenerate)
    return doc


def _emit_report(doc, report_out):
    print(metrics.render_report(doc), end="")
    if report_out:
        _write_json(doc, report_out)


def _write_roc(model, fm, path):
    scores = boost.decision_function(model, fm.values)
    curve = metrics.roc_auc(fm.labels, scores)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(curve.to_csv())


def _write_json(doc, path):
    import json

    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_matrix(fm: encode.FeatureMatrix, path):
    label_name = fm.plan.label_name if fm.plan is not None else "label"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(fm.column_names) + f",{label_name}\n")
        for row, label in zip(fm.values, fm.labels):
            fh.write(",".join(repr(float(v)) for v in row) + f",{int(label)}\n")


def _parse_grid(text: str) -> tune.Grid:
    if "x" not in text:
        raise DataError(f'bad --grid {text!r}, expected "E1,E2xD1,D2"')
    left, right = text.split("x", 1)
    try:
        estimators = tuple(int(v) for v in left.split(","))
        depths = tuple(int(v) for v in right.split(","))
    except ValueError:
        raise DataError(f"bad --grid {text!r}: values must be integers") from None
    return tune.Grid(estimators, depths)


if __name__ == "__main__":
    sys.exit(main())
