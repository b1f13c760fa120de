"""Respiratory-sound COVID-19 screening: DSP front end, per-category
BLSTM scoring, questionnaire tree, score fusion, and a session service."""

from respscreen.audio.categories import ALL_CATEGORIES, SoundCategory
from respscreen.audio.clip import AudioClip
from respscreen.audio.mel import DspConfig, MelSpectrogram
from respscreen.fusion import FusionConfig, ScreenResult, fuse
from respscreen.model.blstm import BlstmModel, ProbabilityScore
from respscreen.pipeline import clip_features, score_clip
from respscreen.symptoms import DecisionTree, SymptomRecord

__version__ = "0.1.0"

__all__ = [
    "ALL_CATEGORIES",
    "AudioClip",
    "BlstmModel",
    "DecisionTree",
    "DspConfig",
    "FusionConfig",
    "MelSpectrogram",
    "ProbabilityScore",
    "ScreenResult",
    "SoundCategory",
    "SymptomRecord",
    "clip_features",
    "fuse",
    "score_clip",
    "__version__",
]
