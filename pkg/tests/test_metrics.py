import numpy as np
import pytest

from respscreen.errors import SingleClass
from respscreen.evalkit.metrics import RocCurve, compute_auc, compute_roc


def pairwise_auc(labels, scores):
    """Direct definition: mean over all (positive, negative) pairs, ties count half."""
    pos = [s for y, s in zip(labels, scores) if y == 1]
    neg = [s for y, s in zip(labels, scores) if y == 0]
    total = 0.0
    for p in pos:
        for q in neg:
            if p > q:
                total += 1.0
            elif p == q:
                total += 0.5
    return total / (len(pos) * len(neg))


class TestAuc:
    def test_perfect_separation(self):
        assert compute_auc([0, 0, 1, 1], [0.1, 0.2, 0.8, 0.9]) == 1.0

    def test_perfectly_wrong(self):
        assert compute_auc([1, 1, 0, 0], [0.1, 0.2, 0.8, 0.9]) == 0.0

    def test_all_scores_tied(self):
        assert compute_auc([0, 1, 0, 1, 1], [0.5] * 5) == 0.5

    def test_matches_pairwise_definition_with_ties(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = int(rng.integers(5, 60))
            labels = rng.integers(0, 2, size=n)
            if labels.min() == labels.max():
                labels[0] = 1 - labels[0]
            scores = rng.integers(0, 6, size=n) / 5.0  # coarse grid forces ties
            assert compute_auc(labels, scores) == pairwise_auc(labels.tolist(), scores.tolist())

    def test_invariant_under_monotone_transform(self):
        rng = np.random.default_rng(6)
        labels = rng.integers(0, 2, size=40)
        labels[:2] = [0, 1]
        scores = rng.uniform(size=40)
        assert compute_auc(labels, 3.0 * scores + 1.0) == compute_auc(labels, scores)

    def test_label_flip_complements(self):
        rng = np.random.default_rng(7)
        labels = rng.integers(0, 2, size=30)
        labels[:2] = [0, 1]
        scores = rng.integers(0, 4, size=30) / 3.0
        assert compute_auc(labels, scores) + compute_auc(1 - labels, scores) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_single_class_rejected(self):
        with pytest.raises(SingleClass):
            compute_auc([1, 1, 1], [0.1, 0.2, 0.3])

    def test_non_binary_labels_rejected(self):
        with pytest.raises(ValueError):
            compute_auc([0, 1, 2], [0.1, 0.2, 0.3])

    def test_non_finite_score_rejected(self):
        with pytest.raises(ValueError):
            compute_auc([0, 1], [0.1, float("nan")])

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            compute_auc([0, 1], [0.1, 0.2, 0.3])


class TestRoc:
    def test_perfect_curve_shape(self):
        roc = compute_roc([0, 0, 1, 1], [0.1, 0.2, 0.8, 0.9])
        assert roc.fpr[0] == 0.0 and roc.tpr[0] == 0.0
        assert roc.fpr[-1] == 1.0 and roc.tpr[-1] == 1.0
        assert np.isinf(roc.thresholds[0])
        # hits (0, 1) before any false positive
        idx = np.where(roc.tpr == 1.0)[0][0]
        assert roc.fpr[idx] == 0.0

    def test_curve_is_monotone(self):
        rng = np.random.default_rng(8)
        labels = rng.integers(0, 2, size=50)
        labels[:2] = [0, 1]
        scores = rng.integers(0, 8, size=50) / 7.0
        roc = compute_roc(labels, scores)
        assert np.all(np.diff(roc.fpr) >= 0)
        assert np.all(np.diff(roc.tpr) >= 0)
        assert np.all(np.diff(roc.thresholds) < 0)

    def test_tied_scores_collapse_to_one_point(self):
        roc = compute_roc([0, 1], [0.5, 0.5])
        assert len(roc.fpr) == 2
        assert roc.fpr[-1] == 1.0 and roc.tpr[-1] == 1.0

    def test_area_matches_auc(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            n = int(rng.integers(4, 80))
            labels = rng.integers(0, 2, size=n)
            if labels.min() == labels.max():
                labels[0] = 1 - labels[0]
            scores = rng.integers(0, 5, size=n) / 4.0
            roc = compute_roc(labels, scores)
            assert abs(roc.area - compute_auc(labels, scores)) <= 1e-12

    def test_dict_form_replaces_infinite_threshold(self):
        roc = compute_roc([0, 1], [0.2, 0.9])
        data = roc.to_dict()
        assert data["thresholds"][0] is None
        assert data["fpr"] == [0.0, 0.0, 1.0]
        assert data["tpr"] == [0.0, 1.0, 1.0]

    def test_curve_arrays_share_length(self):
        roc = compute_roc([0, 1, 0, 1], [0.3, 0.3, 0.6, 0.9])
        assert len(roc.thresholds) == len(roc.fpr) == len(roc.tpr)
        assert isinstance(roc, RocCurve)
