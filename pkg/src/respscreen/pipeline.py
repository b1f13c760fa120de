"""End-to-end path from an admitted clip to a per-category probability."""

from __future__ import annotations

from respscreen.audio.clip import AudioClip, ensure_admissible, peak_normalize
from respscreen.audio.mel import DspConfig, MelSpectrogram, compute_mel_spectrogram
from respscreen.audio.resample import resample
from respscreen.audio.wav import decode_wav
from respscreen.model.blstm import BlstmModel, ProbabilityScore, blstm_forward


def clip_features(clip: AudioClip, config: DspConfig | None = None) -> MelSpectrogram:
    """Resample to the target rate, peak-normalize, then log-mel."""
    if config is None:
        config = DspConfig()
    clip = resample(clip, config.target_rate)
    clip = peak_normalize(clip)
    return compute_mel_spectrogram(clip, config)


def score_clip(
    clip: AudioClip, model: BlstmModel, config: DspConfig | None = None
) -> ProbabilityScore:
    return blstm_forward(clip_features(clip, config), model)


def admit_and_score(
    wav_bytes: bytes, model: BlstmModel, config: DspConfig | None = None
) -> ProbabilityScore:
    """Decode raw WAV bytes, run admission checks, then score."""
    clip = decode_wav(wav_bytes, category=model.category)
    ensure_admissible(clip)
    return score_clip(clip, model, config)
