"""Shared fixtures and independent reference encoders used as oracles."""

from __future__ import annotations

import json
import struct

import numpy as np
import pytest

from respscreen.audio.categories import ALL_CATEGORIES
from respscreen.audio.clip import AudioClip
from respscreen.audio.mel import DspConfig, MelSpectrogram
from respscreen.fusion import FusionConfig
from respscreen.model.blstm import random_model, save_model
from respscreen.symptoms import SYMPTOM_FIELDS, CONDITION_FIELDS, train_tree

# -- reference WAV writer ------------------------------------------------------
# Deliberately written from the container layout alone, sharing no code with
# the decoder under test.


def reference_wav_bytes(
    samples,
    rate: int,
    encoding: str = "pcm16",
    extra_chunks: list[tuple[bytes, bytes]] | None = None,
) -> bytes:
    """Encode mono (1-D) or multichannel (2-D, frames x channels) audio."""
    data = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    if data.shape[0] == 1 and np.asarray(samples).ndim == 1:
        data = data.T  # frames x 1
    n_channels = data.shape[1]
    interleaved = data.reshape(-1)

    if encoding == "pcm16":
        ints = np.clip(np.rint(interleaved * 32768.0), -32768, 32767).astype("<i2")
        payload = ints.tobytes()
        bits, fmt_code = 16, 1
    elif encoding == "float32":
        payload = interleaved.astype("<f4").tobytes()
        bits, fmt_code = 32, 3
    else:
        raise ValueError(encoding)

    block_align = n_channels * bits // 8
    fmt_body = struct.pack(
        "<HHIIHH", fmt_code, n_channels, rate, rate * block_align, block_align, bits
    )

    chunks = [(b"fmt ", fmt_body)]
    if extra_chunks:
        chunks.extend(extra_chunks)
    chunks.append((b"data", payload))

    body = bytearray(b"WAVE")
    for tag, chunk in chunks:
        body += tag + struct.pack("<I", len(chunk)) + chunk
        if len(chunk) % 2:
            body += b"\x00"  # RIFF chunks are word-aligned
    return b"RIFF" + struct.pack("<I", len(body)) + bytes(body)


def pcm16_wav_from_ints(values: list[int], rate: int, n_channels: int = 1) -> bytes:
    """Encode raw int16 sample values without any scaling."""
    payload = np.asarray(values, dtype="<i2").tobytes()
    fmt_body = struct.pack(
        "<HHIIHH", 1, n_channels, rate, rate * 2 * n_channels, 2 * n_channels, 16
    )
    body = (
        b"WAVEfmt "
        + struct.pack("<I", len(fmt_body))
        + fmt_body
        + b"data"
        + struct.pack("<I", len(payload))
        + payload
    )
    if len(payload) % 2:
        body += b"\x00"
    return b"RIFF" + struct.pack("<I", len(body)) + body


# -- signal factories ----------------------------------------------------------


def tone(freq: float, duration_s: float, rate: int, amplitude: float = 0.5) -> np.ndarray:
    t = np.arange(round(duration_s * rate)) / rate
    return amplitude * np.sin(2.0 * np.pi * freq * t)


def noise_clip(duration_s: float, rate: int, seed: int, amplitude: float = 0.3) -> AudioClip:
    rng = np.random.default_rng(seed)
    n = round(duration_s * rate)
    return AudioClip(np.clip(rng.normal(0.0, amplitude, n), -1.0, 1.0), rate)


def synthetic_features(n_frames: int, n_bands: int, seed: int) -> MelSpectrogram:
    """Feature matrices for classifier tests, unconstrained by real audio."""
    rng = np.random.default_rng(seed)
    config = DspConfig(n_mels=n_bands, log_floor=1e-300)
    return MelSpectrogram(frames=rng.normal(0.0, 1.0, (n_frames, n_bands)), config=config)


def full_symptoms(**overrides) -> dict:
    payload = {name: False for name in SYMPTOM_FIELDS + CONDITION_FIELDS}
    payload["age_band"] = "31-45"
    payload["contact_with_positive"] = None
    payload.update(overrides)
    return payload


# -- service fixture -----------------------------------------------------------


@pytest.fixture
def service_env(tmp_path):
    """A config tree with seeded models, a trained tree, and fusion weights."""
    model_dir = tmp_path / "models"
    model_dir.mkdir()
    for i, category in enumerate(ALL_CATEGORIES):
        blob = save_model(random_model(category, input_dim=64, hidden_dim=6, seed=100 + i))
        (model_dir / f"{category.wire_id}.rspm").write_bytes(blob)

    rng = np.random.default_rng(42)
    x = rng.integers(0, 2, (80, 14)).astype(np.float64)
    y = ((x[:, 0] + x[:, 6]) >= 1).astype(np.int64)
    (tmp_path / "tree.json").write_text(train_tree(x, y, max_depth=4, min_leaf=3).to_json())
    (tmp_path / "fusion.json").write_text(json.dumps(FusionConfig().to_dict()))

    config = {
        "listen": "127.0.0.1:8123",
        "model_dir": "models",
        "tree_path": "tree.json",
        "fusion_config_path": "fusion.json",
        "storage_dir": "storage",
        "session_ttl_s": 3600,
        "max_upload_bytes": 2_000_000,
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    return tmp_path


class FakeClock:
    def __init__(self, start: float = 1000.0):
        self.now = start

    def __call__(self) -> float:
        return self.now

    def advance(self, seconds: float) -> None:
        self.now += seconds
