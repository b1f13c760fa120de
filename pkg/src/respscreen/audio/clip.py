"""Decoded audio clips and the admission gates applied before scoring."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from respscreen.audio.categories import SoundCategory
from respscreen.errors import SilentClip, TooShortOrLong

# Admission defaults: recordings are a few respiration/cough cycles, so
# degenerate clips are rejected before any model sees them.
MIN_DURATION_S = 1.0
MAX_DURATION_S = 30.0
SILENCE_RMS_THRESHOLD = 1e-3


@dataclass(frozen=True)
class AudioClip:
    """Mono PCM samples in [-1, 1] at a known sample rate."""

    samples: np.ndarray
    sample_rate: int
    category: SoundCategory | None = field(default=None)

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a nonempty 1-D array")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        if np.max(np.abs(samples)) > 1.0:
            raise ValueError("samples must lie in [-1, 1]")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def duration(self) -> float:
        """Clip length in seconds."""
        return len(self.samples) / self.sample_rate

    @property
    def rms(self) -> float:
        return float(np.sqrt(np.mean(np.square(self.samples))))


def silence_check(clip: AudioClip, rms_threshold: float = SILENCE_RMS_THRESHOLD) -> bool:
    """True iff the clip is too quiet to use (RMS below the threshold)."""
    return clip.rms < rms_threshold


def peak_normalize(clip: AudioClip) -> AudioClip:
    """Scale so max |sample| == 1, removing per-device microphone gain.

    Silent clips are returned unchanged; they never reach feature
    extraction anyway.
    """
    peak = float(np.max(np.abs(clip.samples)))
    if peak == 0.0 or peak == 1.0:
        return clip
    return replace(clip, samples=clip.samples / peak)


def ensure_admissible(
    clip: AudioClip,
    min_duration: float = MIN_DURATION_S,
    max_duration: float = MAX_DURATION_S,
    rms_threshold: float = SILENCE_RMS_THRESHOLD,
) -> None:
    """Raise unless the clip passes the duration and silence gates."""
    if not (min_duration <= clip.duration <= max_duration):
        raise TooShortOrLong(
            f"duration {clip.duration:.3f}s outside [{min_duration:g}s, {max_duration:g}s]"
        )
    if silence_check(clip, rms_threshold):
        raise SilentClip(f"clip RMS {clip.rms:.2e} below threshold {rms_threshold:g}")
