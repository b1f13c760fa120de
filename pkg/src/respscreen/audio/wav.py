"""Minimal RIFF/WAVE reader for uploaded recordings.

Accepts the two encodings browsers and soundfile tools actually emit for
uncompressed audio: 16-bit PCM and 32-bit IEEE float, mono or stereo.
Everything else is rejected rather than guessed at.
"""

from __future__ import annotations

import struct

import numpy as np

from respscreen.audio.categories import SoundCategory
from respscreen.audio.clip import AudioClip
from respscreen.errors import EmptyAudio, MalformedContainer, UnsupportedEncoding

_FORMAT_PCM = 0x0001
_FORMAT_IEEE_FLOAT = 0x0003

INT16_SCALE = 32768.0


def decode_wav(data: bytes, category: SoundCategory | None = None) -> AudioClip:
    """Decode a RIFF/WAVE byte string into a mono AudioClip.

    Stereo is averaged to mono; 16-bit samples are scaled by 1/32768 so the
    most negative code maps to exactly -1.0.
    """
    if len(data) < 12:
        raise MalformedContainer("file shorter than a RIFF header")
    if data[0:4] != b"RIFF":
        raise MalformedContainer("missing RIFF magic")
    if data[8:12] != b"WAVE":
        raise MalformedContainer("missing WAVE form type")

    fmt = None
    raw = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos : pos + 4]
        (chunk_size,) = struct.unpack_from("<I", data, pos + 4)
        body_start = pos + 8
        body_end = body_start + chunk_size
        if body_end > len(data):
            raise MalformedContainer(
                f"chunk {chunk_id!r} declares {chunk_size} bytes past end of file"
            )
        if chunk_id == b"fmt ":
            fmt = _parse_fmt(data[body_start:body_end])
        elif chunk_id == b"data":
            raw = data[body_start:body_end]
        # chunk bodies are word-aligned; odd sizes carry a pad byte
        pos = body_end + (chunk_size & 1)

    if fmt is None:
        raise MalformedContainer("no fmt chunk")
    if raw is None:
        raise MalformedContainer("no data chunk")

    audio_format, channels, sample_rate, bits = fmt
    if channels not in (1, 2):
        raise UnsupportedEncoding(f"{channels} channels; only mono/stereo supported")
    if sample_rate <= 0:
        raise MalformedContainer("non-positive sample rate")

    if audio_format == _FORMAT_PCM and bits == 16:
        width = 2
        dtype = "<i2"
    elif audio_format == _FORMAT_IEEE_FLOAT and bits == 32:
        width = 4
        dtype = "<f4"
    else:
        raise UnsupportedEncoding(
            f"format tag {audio_format:#06x} with {bits}-bit samples is not supported"
        )

    frame_bytes = width * channels
    if len(raw) % frame_bytes != 0:
        raise MalformedContainer("data chunk size is not a whole number of frames")
    if len(raw) == 0:
        raise EmptyAudio("data chunk holds zero samples")

    samples = np.frombuffer(raw, dtype=dtype).astype(np.float64)
    if channels == 2:
        samples = samples.reshape(-1, 2).mean(axis=1)
    if dtype == "<i2":
        samples = samples / INT16_SCALE
    else:
        if not np.all(np.isfinite(samples)):
            raise MalformedContainer("non-finite float sample in data chunk")
        samples = np.clip(samples, -1.0, 1.0)

    return AudioClip(samples=samples, sample_rate=sample_rate, category=category)


def _parse_fmt(body: bytes) -> tuple[int, int, int, int]:
    if len(body) < 16:
        raise MalformedContainer("fmt chunk shorter than 16 bytes")
    audio_format, channels, sample_rate, _byte_rate, _block_align, bits = struct.unpack_from(
        "<HHIIHH", body, 0
    )
    return audio_format, channels, sample_rate, bits
