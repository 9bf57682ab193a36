"""Classifier evaluation: confusion matrix, scalar metrics, ROC and AUROC.

Positive-class metrics follow the usual definitions, recall = TP / (TP + FN)
and precision = TP / (TP + FP), with F1 their harmonic mean.  Because
accuracy on imbalanced data equals the support-weighted recall, the summary
also carries support-weighted recall/precision/F1 so both readings of a
result table are available.  Zero-denominator metrics come back as 0 and the
metric's name is listed in `degenerate` instead of raising.

ROC curves sweep thresholds over the distinct raw decision-function scores
from high to low, predicting positive where score >= threshold; tied scores
collapse to a single point.  The area uses the trapezoidal rule, which on
this staircase equals the probability that a random positive outscores a
random negative, ties counted one half.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatchError, SingleClassInputError


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts of (actual, predicted) pairs; rows actual, columns predicted."""

    tp: int
    fn: int
    fp: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fn + self.fp + self.tn


@dataclass(frozen=True)
class MetricsSummary:
    accuracy: float
    recall: float
    precision: float
    f1: float
    weighted_recall: float
    weighted_precision: float
    weighted_f1: float
    confusion: ConfusionMatrix
    degenerate: tuple[str, ...] = ()


@dataclass(frozen=True)
class RocCurve:
    """Staircase points sorted by fpr, from (0, 0) at threshold +inf to (1, 1)."""

    points: tuple[tuple[float, float, float], ...]  # (fpr, tpr, threshold)
    auroc: float

    def to_csv(self) -> str:
        lines = ["threshold,fpr,tpr"]
        lines.extend(f"{thr!r},{fpr!r},{tpr!r}" for fpr, tpr, thr in self.points)
        return "\n".join(lines) + "\n"


def confusion(y_true, y_pred) -> ConfusionMatrix:
    """Count tp, fn, fp, tn from paired binary vectors."""
    t = np.asarray(y_true).ravel()
    p = np.asarray(y_pred).ravel()
    if t.size != p.size:
        raise LengthMismatchError(f"{t.size} labels vs {p.size} predictions")
    if t.size == 0:
        raise LengthMismatchError("need at least one sample")
    return ConfusionMatrix(
        tp=int(((t == 1) & (p == 1)).sum()),
        fn=int(((t == 1) & (p == 0)).sum()),
        fp=int(((t == 0) & (p == 1)).sum()),
        tn=int(((t == 0) & (p == 0)).sum()),
    )


def summarize(cm: ConfusionMatrix, support_weighted: bool = True) -> MetricsSummary:
    """Scalar metrics from a confusion matrix.

    Positive-class recall/precision/F1 always; support-weighted versions when
    `support_weighted` (they average the per-class metrics weighted by class
    frequency, which makes weighted recall coincide with accuracy).
    """
    degenerate = []

    def ratio(num, den, name):
        if den == 0:
            degenerate.append(name)
            return 0.0
        return num / den

    n = cm.total
    accuracy = ratio(cm.tp + cm.tn, n, "accuracy")
    recall_pos = ratio(cm.tp, cm.tp + cm.fn, "recall")
    precision_pos = ratio(cm.tp, cm.tp + cm.fp, "precision")
    f1_pos = _f1(precision_pos, recall_pos, "f1", degenerate)

    if support_weighted:
        recall_neg = ratio(cm.tn, cm.tn + cm.fp, "negative_recall")
        precision_neg = ratio(cm.tn, cm.tn + cm.fn, "negative_precision")
        f1_neg = _f1(precision_neg, recall_neg, "negative_f1", degenerate)
        pos_n, neg_n = cm.tp + cm.fn, cm.tn + cm.fp
        weighted_recall = (pos_n * recall_pos + neg_n * recall_neg) / n
        weighted_precision = (pos_n * precision_pos + neg_n * precision_neg) / n
        weighted_f1 = (pos_n * f1_pos + neg_n * f1_neg) / n
    else:
        weighted_recall = weighted_precision = weighted_f1 = 0.0

    return MetricsSummary(
        accuracy=accuracy,
        recall=recall_pos,
        precision=precision_pos,
        f1=f1_pos,
        weighted_recall=weighted_recall,
        weighted_precision=weighted_precision,
        weighted_f1=weighted_f1,
        confusion=cm,
        degenerate=tuple(degenerate),
    )


def _f1(precision, recall, name, degenerate):
    if precision + recall == 0.0:
        degenerate.append(name)
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def render_report(doc: dict) -> str:
    """Aligned text table for an evaluation report document.

    Scalar entries print as `key: value` lines in document order; a
    "confusion" entry renders as a small actual-by-predicted table.
    """
    lines = []
    scalars = {k: v for k, v in doc.items() if k != "confusion"}
    width = max(len(k) for k in scalars) if scalars else 0
    for key, value in scalars.items():
        if isinstance(value, float):
            value = f"{value:.6f}"
        elif isinstance(value, (list, tuple)):
            value = ", ".join(str(v) for v in value) or "none"
        lines.append(f"{key.replace('_', ' '):<{width}}  {value}")
    cm = doc.get("confusion")
    if cm is not None:
        lines.append("confusion matrix (rows actual, columns predicted):")
        cells = [
            ["", "pred=1", "pred=0"],
            ["actual=1", str(cm["tp"]), str(cm["fn"])],
            ["actual=0", str(cm["fp"]), str(cm["tn"])],
        ]
        widths = [max(len(r[i]) for r in cells) for i in range(3)]
        for r in cells:
            lines.append("  " + "  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def roc_auc(y_true, scores) -> RocCurve:
    """ROC staircase and its trapezoidal area from raw decision scores.

    Raises:
        LengthMismatchError: unequal input lengths.
        SingleClassInputError: only one class present in y_true.
    """
    y = np.asarray(y_true).ravel()
    s = np.asarray(scores, dtype=np.float64).ravel()
    if y.size != s.size:
        raise LengthMismatchError(f"{y.size} labels vs {s.size} scores")
    n_pos = int((y == 1).sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClassInputError("ROC needs both classes present")

    order = np.argsort(-s, kind="stable")
    s_sorted = s[order]
    y_sorted = y[order]
    # last index of each run of tied scores
    boundary = np.flatnonzero(s_sorted[1:] != s_sorted[:-1])
    last = np.concatenate([boundary, [y.size - 1]])
    cum_tp = np.cumsum(y_sorted == 1)[last]
    cum_fp = np.cumsum(y_sorted == 0)[last]

    tpr = np.concatenate([[0.0], cum_tp / n_pos])
    fpr = np.concatenate([[0.0], cum_fp / n_neg])
    thresholds = np.concatenate([[math.inf], s_sorted[last]])
    auroc = float(np.trapezoid(tpr, fpr))
    points = tuple(
        (float(x), float(t), float(thr)) for x, t, thr in zip(fpr, tpr, thresholds)
    )
    return RocCurve(points=points, auroc=auroc)
