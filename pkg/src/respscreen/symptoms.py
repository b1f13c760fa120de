"""Health questionnaire encoding and decision-tree scoring.

The questionnaire schema is frozen and versioned: nine current symptoms,
three pre-existing conditions, an ordinal age band, and a contact field
that may be unknown. Trees are grown greedily on Gini impurity; split
selection compares impurities in exact integer arithmetic so the chosen
split never depends on floating-point rounding and is invariant to row
order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from respscreen.errors import EmptyDataset, MissingField, SchemaMismatch
from respscreen.model.blstm import SYMPTOM_SOURCE, ProbabilityScore

SYMPTOM_FIELDS = (
    "cough",
    "cold",
    "fever",
    "diarrhoea",
    "muscle_pain",
    "breathing_difficulty",
    "loss_of_smell",
    "sore_throat",
    "fatigue",
)
CONDITION_FIELDS = ("respiratory_illness", "diabetes", "hypertension")
AGE_BANDS = ("0-15", "16-30", "31-45", "46-60", "60+")

FEATURE_NAMES = SYMPTOM_FIELDS + CONDITION_FIELDS + ("age_band", "contact_with_positive")
FEATURE_SCHEMA_VERSION = 1

UNKNOWN_VALUE = 0.5  # encoding for boolean-or-unknown fields left unknown

DEFAULT_MAX_DEPTH = 5
DEFAULT_MIN_LEAF = 5


@dataclass(frozen=True)
class SymptomRecord:
    cough: bool
    cold: bool
    fever: bool
    diarrhoea: bool
    muscle_pain: bool
    breathing_difficulty: bool
    loss_of_smell: bool
    sore_throat: bool
    fatigue: bool
    respiratory_illness: bool
    diabetes: bool
    hypertension: bool
    age_band: str
    contact_with_positive: bool | None = None

    def __post_init__(self) -> None:
        if self.age_band not in AGE_BANDS:
            raise ValueError(f"age_band must be one of {AGE_BANDS}, got {self.age_band!r}")
        for name in SYMPTOM_FIELDS + CONDITION_FIELDS:
            if not isinstance(getattr(self, name), bool):
                raise ValueError(f"field {name!r} must be a boolean")

    @classmethod
    def from_dict(cls, data: dict) -> "SymptomRecord":
        """Parse a wire dict; absent required fields raise MissingField."""
        kwargs = {}
        for name in SYMPTOM_FIELDS + CONDITION_FIELDS + ("age_band",):
            if name not in data:
                raise MissingField(f"missing required field: {name}")
            kwargs[name] = data[name]
        # contact_with_positive is the one field allowed to be unknown
        contact = data.get("contact_with_positive", None)
        if contact is not None and not isinstance(contact, bool):
            raise ValueError("contact_with_positive must be a boolean or null")
        kwargs["contact_with_positive"] = contact
        try:
            return cls(**kwargs)
        except ValueError:
            raise
        except TypeError as exc:
            raise ValueError(str(exc)) from None

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in FEATURE_NAMES}


def encode_symptoms(record: SymptomRecord) -> np.ndarray:
    """Fixed-order numeric encoding: booleans to {0,1}, unknown to 0.5,
    age band to its ordinal 0..4."""
    values = [float(getattr(record, name)) for name in SYMPTOM_FIELDS + CONDITION_FIELDS]
    values.append(float(AGE_BANDS.index(record.age_band)))
    contact = record.contact_with_positive
    values.append(UNKNOWN_VALUE if contact is None else float(contact))
    return np.asarray(values, dtype=np.float64)


# -- tree structure ------------------------------------------------------------


@dataclass(frozen=True)
class TreeLeaf:
    positive_fraction: float
    sample_count: int


@dataclass(frozen=True)
class TreeSplit:
    feature_index: int
    threshold: float
    left: int
    right: int


@dataclass(frozen=True)
class DecisionTree:
    """Nodes indexed into one array; node 0 is the root."""

    nodes: tuple[Union[TreeLeaf, TreeSplit], ...]
    n_features: int
    max_depth: int
    feature_schema_version: int = FEATURE_SCHEMA_VERSION

    def to_json(self) -> str:
        encoded = []
        for node in self.nodes:
            if isinstance(node, TreeLeaf):
                encoded.append(
                    {
                        "kind": "leaf",
                        "positive_fraction": node.positive_fraction,
                        "sample_count": node.sample_count,
                    }
                )
            else:
                encoded.append(
                    {
                        "kind": "split",
                        "feature_index": node.feature_index,
                        "threshold": node.threshold,
                        "left": node.left,
                        "right": node.right,
                    }
                )
        return json.dumps(
            {
                "feature_schema_version": self.feature_schema_version,
                "n_features": self.n_features,
                "max_depth": self.max_depth,
                "nodes": encoded,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "DecisionTree":
        data = json.loads(text)
        nodes: list[Union[TreeLeaf, TreeSplit]] = []
        for entry in data["nodes"]:
            if entry["kind"] == "leaf":
                nodes.append(
                    TreeLeaf(
                        positive_fraction=float(entry["positive_fraction"]),
                        sample_count=int(entry["sample_count"]),
                    )
                )
            elif entry["kind"] == "split":
                nodes.append(
                    TreeSplit(
                        feature_index=int(entry["feature_index"]),
                        threshold=float(entry["threshold"]),
                        left=int(entry["left"]),
                        right=int(entry["right"]),
                    )
                )
            else:
                raise ValueError(f"unknown node kind {entry['kind']!r}")
        return cls(
            nodes=tuple(nodes),
            n_features=int(data["n_features"]),
            max_depth=int(data["max_depth"]),
            feature_schema_version=int(data["feature_schema_version"]),
        )


def tree_predict(tree: DecisionTree, vec: Sequence[float]) -> ProbabilityScore:
    """Route a feature vector to its leaf; left branch takes value < threshold."""
    vec = np.asarray(vec, dtype=np.float64)
    if vec.shape != (tree.n_features,):
        raise SchemaMismatch(
            f"vector has {vec.shape[0] if vec.ndim == 1 else vec.shape} features, "
            f"tree expects {tree.n_features}"
        )
    node = tree.nodes[0]
    while isinstance(node, TreeSplit):
        node = tree.nodes[node.left if vec[node.feature_index] < node.threshold else node.right]
    return ProbabilityScore(value=node.positive_fraction, source=SYMPTOM_SOURCE)


# -- training ------------------------------------------------------------------


def train_tree(
    vectors,
    labels,
    max_depth: int = DEFAULT_MAX_DEPTH,
    min_leaf: int = DEFAULT_MIN_LEAF,
) -> DecisionTree:
    """Grow a binary classification tree by greedy Gini minimization.

    Candidate thresholds are the midpoints between consecutive distinct
    sorted values of each feature; a candidate is admissible only when
    both children keep at least min_leaf rows. The admissible candidate
    with the smallest weighted child impurity wins, ties broken by lowest
    feature index then lowest threshold. A node becomes a leaf when it is
    pure, at max_depth, or has no admissible candidate; impurity never
    increases across a split (concavity), so splits are otherwise taken
    even when the impurity merely stays equal.
    """
    x = np.asarray(vectors, dtype=np.float64)
    y = np.asarray(labels)
    if x.ndim != 2 or x.shape[0] == 0:
        raise EmptyDataset("training data must be a nonempty N x F matrix")
    if y.shape != (x.shape[0],):
        raise ValueError("labels must align with rows")
    if not np.all(np.isin(y, (0, 1))):
        raise ValueError("labels must be binary 0/1")
    y = y.astype(np.int64)
    if max_depth < 0 or min_leaf < 1:
        raise ValueError("need max_depth >= 0 and min_leaf >= 1")

    nodes: list[Union[TreeLeaf, TreeSplit]] = []

    def build(rows: np.ndarray, depth: int) -> int:
        index = len(nodes)
        nodes.append(TreeLeaf(0.0, 0))  # placeholder, replaced below
        n = len(rows)
        pos = int(y[rows].sum())

        split = None
        if 0 < pos < n and depth < max_depth:
            split = best_split(x[rows], y[rows], min_leaf)
        if split is None:
            nodes[index] = TreeLeaf(positive_fraction=pos / n, sample_count=n)
            return index

        feature, threshold = split
        go_left = x[rows, feature] < threshold
        left = build(rows[go_left], depth + 1)
        right = build(rows[~go_left], depth + 1)
        nodes[index] = TreeSplit(feature_index=feature, threshold=threshold, left=left, right=right)
        return index

    build(np.arange(len(y)), 0)
    return DecisionTree(nodes=tuple(nodes), n_features=x.shape[1], max_depth=max_depth)


def best_split(x: np.ndarray, y: np.ndarray, min_leaf: int) -> tuple[int, float] | None:
    """Exhaustive scan for the impurity-minimizing (feature, threshold).

    Weighted Gini for a candidate is the exact rational K/D with
    K = n_r*(n_l^2 - pos_l^2 - neg_l^2) + n_l*(n_r^2 - pos_r^2 - neg_r^2)
    and D = n*n_l*n_r; candidates are compared by integer cross
    multiplication so the argmin is exact and row-order independent.
    Returns None when no candidate satisfies min_leaf.
    """
    n = len(y)
    pos_total = int(y.sum())

    best: tuple[int, int, int, float] | None = None  # (K, D, feature, threshold)
    for feature in range(x.shape[1]):
        values = x[:, feature]
        order = np.argsort(values, kind="stable")
        sorted_values = values[order]
        pos_prefix = np.cumsum(y[order])
        for i in range(min_leaf, n - min_leaf + 1):
            if sorted_values[i - 1] == sorted_values[i]:
                continue
            threshold = (sorted_values[i - 1] + sorted_values[i]) / 2.0
            n_l = i
            n_r = n - i
            pos_l = int(pos_prefix[i - 1])
            neg_l = n_l - pos_l
            pos_r = pos_total - pos_l
            neg_r = n_r - pos_r
            k = n_r * (n_l * n_l - pos_l * pos_l - neg_l * neg_l) + n_l * (
                n_r * n_r - pos_r * pos_r - neg_r * neg_r
            )
            d = n * n_l * n_r
            if best is not None:
                rel = k * best[1] - best[0] * d
                if rel > 0 or (rel == 0 and (feature, threshold) >= (best[2], best[3])):
                    continue
            best = (k, d, feature, threshold)

    if best is None:
        return None
    return best[2], best[3]
