"""Ranking metrics for screening scores.

AUC is computed from midranks, which matches the pairwise definition
(ties counted half) exactly: tied groups get the average of the ranks
they span, and those averages are exact binary fractions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from respscreen.errors import SingleClass


def _validate(labels, scores) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(labels)
    s = np.asarray(scores, dtype=np.float64)
    if y.ndim != 1 or y.shape != s.shape or y.shape[0] == 0:
        raise ValueError("labels and scores must be aligned nonempty vectors")
    if not np.all(np.isin(y, (0, 1))):
        raise ValueError("labels must be binary 0/1")
    if not np.all(np.isfinite(s)):
        raise ValueError("scores must be finite")
    y = y.astype(np.int64)
    if y.min() == y.max():
        raise SingleClass("need both a positive and a negative example")
    return y, s


def compute_auc(labels, scores) -> float:
    """Probability a random positive outranks a random negative, ties half."""
    y, s = _validate(labels, scores)
    n = len(y)
    order = np.argsort(s, kind="stable")
    sorted_scores = s[order]
    ranks = np.empty(n, dtype=np.float64)
    i = 0
    while i < n:
        j = i + 1
        while j < n and sorted_scores[j] == sorted_scores[i]:
            j += 1
        ranks[order[i:j]] = (i + 1 + j) / 2.0  # average of ranks i+1 .. j
        i = j
    n_pos = int(y.sum())
    n_neg = n - n_pos
    rank_sum = float(ranks[y == 1].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


@dataclass(frozen=True)
class RocCurve:
    """Operating points from sweeping the decision threshold high to low.

    Point k uses the rule "score >= thresholds[k]"; the first point is the
    all-negative corner (0, 0) with an unattainable threshold above every
    score.
    """

    thresholds: np.ndarray
    fpr: np.ndarray
    tpr: np.ndarray

    @property
    def area(self) -> float:
        return float(np.trapezoid(self.tpr, self.fpr))

    def to_dict(self) -> dict:
        return {
            "thresholds": [None if np.isinf(t) else float(t) for t in self.thresholds],
            "fpr": self.fpr.tolist(),
            "tpr": self.tpr.tolist(),
        }


def compute_roc(labels, scores) -> RocCurve:
    y, s = _validate(labels, scores)
    n_pos = int(y.sum())
    n_neg = len(y) - n_pos

    order = np.argsort(-s, kind="stable")
    sorted_scores = s[order]
    sorted_labels = y[order]

    thresholds = [np.inf]
    fpr = [0.0]
    tpr = [0.0]
    tp = fp = 0
    i = 0
    while i < len(y):
        j = i + 1
        while j < len(y) and sorted_scores[j] == sorted_scores[i]:
            j += 1
        tp += int(sorted_labels[i:j].sum())
        fp += (j - i) - int(sorted_labels[i:j].sum())
        thresholds.append(float(sorted_scores[i]))
        fpr.append(fp / n_neg)
        tpr.append(tp / n_pos)
        i = j

    arrays = tuple(np.asarray(v, dtype=np.float64) for v in (thresholds, fpr, tpr))
    for a in arrays:
        a.flags.writeable = False
    return RocCurve(thresholds=arrays[0], fpr=arrays[1], tpr=arrays[2])
