"""Audio decoding, admission gates, resampling, and log-mel features."""

from respscreen.audio.categories import ALL_CATEGORIES, SoundCategory
from respscreen.audio.clip import (
    MAX_DURATION_S,
    MIN_DURATION_S,
    SILENCE_RMS_THRESHOLD,
    AudioClip,
    ensure_admissible,
    peak_normalize,
    silence_check,
)
from respscreen.audio.mel import (
    DspConfig,
    MelSpectrogram,
    compute_mel_spectrogram,
    hz_to_mel,
    mel_filterbank,
    mel_to_hz,
)
from respscreen.audio.resample import resample
from respscreen.audio.wav import decode_wav

__all__ = [
    "ALL_CATEGORIES",
    "AudioClip",
    "DspConfig",
    "MAX_DURATION_S",
    "MIN_DURATION_S",
    "MelSpectrogram",
    "SILENCE_RMS_THRESHOLD",
    "SoundCategory",
    "compute_mel_spectrogram",
    "decode_wav",
    "ensure_admissible",
    "hz_to_mel",
    "mel_filterbank",
    "mel_to_hz",
    "peak_normalize",
    "resample",
    "silence_check",
]
