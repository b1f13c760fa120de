from respscreen.evalkit.corpus import (
    ERROR_PREFIX,
    ManifestRow,
    ScoredRow,
    read_manifest,
    read_scores_csv,
    score_corpus,
    write_scores_csv,
)
from respscreen.evalkit.metrics import RocCurve, compute_auc, compute_roc

__all__ = [
    "ERROR_PREFIX",
    "ManifestRow",
    "RocCurve",
    "ScoredRow",
    "compute_auc",
    "compute_roc",
    "read_manifest",
    "read_scores_csv",
    "score_corpus",
    "write_scores_csv",
]
