"""Per-category BLSTM classifiers: weight containers and inference."""

from respscreen.model.blstm import (
    FORMAT_VERSION,
    FUSED_SOURCE,
    KNOWN_SOURCES,
    MODEL_FILE_SUFFIX,
    SYMPTOM_SOURCE,
    BlstmModel,
    LstmParams,
    ProbabilityScore,
    blstm_forward,
    load_model,
    lstm_cell_step,
    random_model,
    save_model,
    sigmoid,
)
from respscreen.model.container import MAGIC, read_container, write_container

__all__ = [
    "BlstmModel",
    "FORMAT_VERSION",
    "FUSED_SOURCE",
    "KNOWN_SOURCES",
    "LstmParams",
    "MAGIC",
    "MODEL_FILE_SUFFIX",
    "ProbabilityScore",
    "SYMPTOM_SOURCE",
    "blstm_forward",
    "load_model",
    "lstm_cell_step",
    "random_model",
    "read_container",
    "save_model",
    "sigmoid",
    "write_container",
]
