"""Log-mel-spectrogram feature extraction.

Front-end convention: 25 ms Hann frames at a 10 ms hop over 16 kHz audio,
512-point FFT, 64 triangular mel bands spanning 0-8 kHz, natural-log
compression with a 1e-10 energy floor. The mel scale is the closed form
m = 2595*log10(1 + f/700), whose inverse is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from respscreen.audio.clip import AudioClip
from respscreen.errors import DegenerateBand, TooShort

MEL_SCALE = 2595.0
MEL_BREAK_HZ = 700.0


@dataclass(frozen=True)
class DspConfig:
    """Feature extraction parameters; the model weight files declare the
    dimensions they expect, so these are data, not code."""

    target_rate: int = 16000
    frame_ms: float = 25.0
    hop_ms: float = 10.0
    fft_size: int = 512
    n_mels: int = 64
    fmin: float = 0.0
    fmax: float = 8000.0
    log_floor: float = 1e-10

    def __post_init__(self) -> None:
        if self.target_rate <= 0:
            raise ValueError("target_rate must be positive")
        if self.frame_ms <= 0 or self.hop_ms <= 0:
            raise ValueError("frame_ms and hop_ms must be positive")
        if self.fft_size < self.frame_samples:
            raise ValueError("fft_size must cover one analysis frame")
        if self.fft_size & (self.fft_size - 1) != 0:
            raise ValueError("fft_size must be a power of two")
        if not (0 <= self.fmin < self.fmax <= self.target_rate / 2):
            raise ValueError("need 0 <= fmin < fmax <= target_rate/2")
        if self.n_mels < 1:
            raise ValueError("n_mels must be at least 1")
        if self.log_floor <= 0:
            raise ValueError("log_floor must be positive")

    @property
    def frame_samples(self) -> int:
        return round(self.frame_ms * self.target_rate / 1000)

    @property
    def hop_samples(self) -> int:
        return round(self.hop_ms * self.target_rate / 1000)

    @property
    def n_bins(self) -> int:
        """One-sided spectrum size."""
        return self.fft_size // 2 + 1

    def to_dict(self) -> dict:
        return {
            "target_rate": self.target_rate,
            "frame_ms": self.frame_ms,
            "hop_ms": self.hop_ms,
            "fft_size": self.fft_size,
            "n_mels": self.n_mels,
            "fmin": self.fmin,
            "fmax": self.fmax,
            "log_floor": self.log_floor,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DspConfig":
        return cls(**d)


@dataclass(frozen=True)
class MelSpectrogram:
    """T x n_mels matrix of log energies, floored at log(log_floor)."""

    frames: np.ndarray
    config: DspConfig

    def __post_init__(self) -> None:
        frames = np.asarray(self.frames, dtype=np.float64)
        if frames.ndim != 2 or frames.shape[1] != self.config.n_mels:
            raise ValueError("frames must be a T x n_mels matrix")
        if not np.all(np.isfinite(frames)):
            raise ValueError("log energies must be finite")
        if np.min(frames) < np.log(self.config.log_floor):
            raise ValueError("log energies below the configured floor")
        frames.setflags(write=False)
        object.__setattr__(self, "frames", frames)

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def n_mels(self) -> int:
        return self.frames.shape[1]


def hz_to_mel(f):
    """Map frequency in Hz to mel: 2595*log10(1 + f/700)."""
    return MEL_SCALE * np.log10(1.0 + np.asarray(f, dtype=np.float64) / MEL_BREAK_HZ)


def mel_to_hz(m):
    """Exact inverse of hz_to_mel."""
    return MEL_BREAK_HZ * (np.power(10.0, np.asarray(m, dtype=np.float64) / MEL_SCALE) - 1.0)


def mel_filterbank(config: DspConfig) -> np.ndarray:
    """Build the n_mels x (fft_size/2 + 1) triangular filter matrix.

    Band edges and peaks sit on a grid of n_mels + 2 points equally spaced
    in mel between fmin and fmax, snapped to FFT bins; filter i rises from
    grid bin i to 1.0 at grid bin i+1 and falls to zero at grid bin i+2.
    """
    grid_mel = np.linspace(hz_to_mel(config.fmin), hz_to_mel(config.fmax), config.n_mels + 2)
    grid_hz = mel_to_hz(grid_mel)
    bin_width = config.target_rate / config.fft_size
    grid_bins = np.round(grid_hz / bin_width).astype(np.int64)
    grid_bins = np.clip(grid_bins, 0, config.fft_size // 2)

    if np.any(np.diff(grid_bins) < 1):
        raise DegenerateBand(
            f"{config.n_mels} bands over [{config.fmin:g}, {config.fmax:g}] Hz collapse "
            f"adjacent centers at {bin_width:g} Hz bin resolution"
        )

    weights = np.zeros((config.n_mels, config.n_bins), dtype=np.float64)
    bins = np.arange(config.n_bins)
    for i in range(config.n_mels):
        lo, center, hi = grid_bins[i], grid_bins[i + 1], grid_bins[i + 2]
        rising = (bins - lo) / (center - lo)
        falling = (hi - bins) / (hi - center)
        weights[i] = np.clip(np.minimum(rising, falling), 0.0, 1.0)

    weights.setflags(write=False)
    return weights


def compute_mel_spectrogram(
    clip: AudioClip, config: DspConfig, filterbank: np.ndarray | None = None
) -> MelSpectrogram:
    """Frame, window, FFT, mel-pool, and log-compress one clip.

    The clip must already be at config.target_rate; per-band standardization
    happens inside the classifiers, not here.
    """
    if clip.sample_rate != config.target_rate:
        raise ValueError(
            f"clip at {clip.sample_rate} Hz; resample to {config.target_rate} Hz first"
        )
    x = clip.samples
    frame_len = config.frame_samples
    hop = config.hop_samples
    if len(x) < frame_len:
        raise TooShort(f"{len(x)} samples; need at least one {frame_len}-sample frame")

    if filterbank is None:
        filterbank = mel_filterbank(config)

    n_frames = 1 + (len(x) - frame_len) // hop
    offsets = np.arange(n_frames) * hop
    frames = x[offsets[:, None] + np.arange(frame_len)[None, :]]

    window = hann_window(frame_len)
    spectrum = np.fft.rfft(frames * window, n=config.fft_size, axis=1)
    power = np.square(np.abs(spectrum))
    energies = power @ filterbank.T
    log_mel = np.log(np.maximum(energies, config.log_floor))
    return MelSpectrogram(frames=log_mel, config=config)


def hann_window(length: int) -> np.ndarray:
    """Periodic Hann window, the standard choice for overlapped analysis."""
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(length) / length)
