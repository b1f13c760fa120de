"""Bidirectional LSTM classifier: weight files and the forward pass.

One model per sound category. The packed recurrent matrices stack the four
gates row-wise in the order input, forget, cell, output. Inference is
framework-free numpy: standardize frames, run both directions from zero
states, mean-pool each direction over time, then a single dense + sigmoid
head yields the probability.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from respscreen.audio.categories import SoundCategory
from respscreen.audio.mel import MelSpectrogram
from respscreen.errors import (
    DimensionMismatch,
    NonFiniteWeight,
    ShapeMismatch,
    VersionUnsupported,
)
from respscreen.model.container import read_container, write_container

FORMAT_VERSION = 1
MODEL_FILE_SUFFIX = ".rspm"

# Blob layout of a weight file; names are fixed by the format.
_ARRAY_ORDER = (
    "w_forward",
    "u_forward",
    "b_forward",
    "w_backward",
    "u_backward",
    "b_backward",
    "dense_w",
    "dense_b",
    "feat_mean",
    "feat_std",
)

SYMPTOM_SOURCE = "symptoms"
FUSED_SOURCE = "fused"
KNOWN_SOURCES: tuple[str, ...] = tuple(c.value for c in SoundCategory) + (SYMPTOM_SOURCE,)


@dataclass(frozen=True)
class ProbabilityScore:
    """A probability in [0, 1] tagged with the source that produced it."""

    value: float
    source: str

    def __post_init__(self) -> None:
        if not np.isfinite(self.value) or not (0.0 <= self.value <= 1.0):
            raise ValueError(f"probability {self.value} outside [0, 1]")
        if self.source not in KNOWN_SOURCES and self.source != FUSED_SOURCE:
            raise ValueError(f"unknown score source {self.source!r}")


@dataclass(frozen=True)
class LstmParams:
    """One direction's packed parameters: w (4H x D), u (4H x H), b (4H,)."""

    w: np.ndarray
    u: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=np.float64)
        u = np.asarray(self.u, dtype=np.float64)
        b = np.asarray(self.b, dtype=np.float64)
        if w.ndim != 2 or u.ndim != 2 or b.ndim != 1:
            raise ShapeMismatch("lstm params must be (4H x D), (4H x H), (4H,)")
        hidden = u.shape[1]
        if w.shape[0] != 4 * hidden or u.shape[0] != 4 * hidden or b.shape[0] != 4 * hidden:
            raise ShapeMismatch(
                f"packed gate rows inconsistent: w {w.shape}, u {u.shape}, b {b.shape}"
            )
        for name, arr in (("w", w), ("u", u), ("b", b)):
            if not np.all(np.isfinite(arr)):
                raise NonFiniteWeight(f"non-finite entry in lstm {name}")
            arr.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "b", b)

    @property
    def hidden_dim(self) -> int:
        return self.u.shape[1]

    @property
    def input_dim(self) -> int:
        return self.w.shape[1]


@dataclass(frozen=True)
class BlstmModel:
    category: SoundCategory
    forward_params: LstmParams
    backward_params: LstmParams
    dense_w: np.ndarray
    dense_b: float
    feat_mean: np.ndarray
    feat_std: np.ndarray
    format_version: int = field(default=FORMAT_VERSION)

    def __post_init__(self) -> None:
        hidden = self.forward_params.hidden_dim
        dim = self.forward_params.input_dim
        if self.backward_params.hidden_dim != hidden or self.backward_params.input_dim != dim:
            raise ShapeMismatch("forward/backward parameter shapes disagree")
        dense_w = np.asarray(self.dense_w, dtype=np.float64)
        mean = np.asarray(self.feat_mean, dtype=np.float64)
        std = np.asarray(self.feat_std, dtype=np.float64)
        if dense_w.shape != (2 * hidden,):
            raise ShapeMismatch(f"dense_w shape {dense_w.shape}, expected ({2 * hidden},)")
        if mean.shape != (dim,) or std.shape != (dim,):
            raise ShapeMismatch("standardization vectors must match input_dim")
        for name, arr in (("dense_w", dense_w), ("feat_mean", mean), ("feat_std", std)):
            if not np.all(np.isfinite(arr)):
                raise NonFiniteWeight(f"non-finite entry in {name}")
            arr.setflags(write=False)
        if not np.isfinite(self.dense_b):
            raise NonFiniteWeight("non-finite dense_b")
        if np.any(std <= 0):
            raise NonFiniteWeight("feat_std entries must be strictly positive")
        object.__setattr__(self, "dense_w", dense_w)
        object.__setattr__(self, "feat_mean", mean)
        object.__setattr__(self, "feat_std", std)

    @property
    def input_dim(self) -> int:
        return self.forward_params.input_dim

    @property
    def hidden_dim(self) -> int:
        return self.forward_params.hidden_dim


def _expected_shapes(input_dim: int, hidden_dim: int) -> dict[str, tuple[int, ...]]:
    gates = 4 * hidden_dim
    return {
        "w_forward": (gates, input_dim),
        "u_forward": (gates, hidden_dim),
        "b_forward": (gates,),
        "w_backward": (gates, input_dim),
        "u_backward": (gates, hidden_dim),
        "b_backward": (gates,),
        "dense_w": (2 * hidden_dim,),
        "dense_b": (1,),
        "feat_mean": (input_dim,),
        "feat_std": (input_dim,),
    }


def load_model(data: bytes) -> BlstmModel:
    """Materialize and shape-check a weight container."""
    manifest, arrays = read_container(data)
    version = manifest.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionUnsupported(f"format_version {version!r}; this build reads {FORMAT_VERSION}")
    category = SoundCategory.from_wire(manifest.get("category", ""))
    input_dim = manifest.get("input_dim")
    hidden_dim = manifest.get("hidden_dim")
    if not isinstance(input_dim, int) or not isinstance(hidden_dim, int):
        raise ShapeMismatch("manifest input_dim/hidden_dim must be integers")

    missing = [name for name in _ARRAY_ORDER if name not in arrays]
    if missing:
        raise ShapeMismatch(f"weight file missing arrays: {', '.join(missing)}")

    expected = _expected_shapes(input_dim, hidden_dim)
    for name, shape in expected.items():
        if arrays[name].shape != shape:
            raise ShapeMismatch(
                f"array {name!r} has shape {arrays[name].shape}, manifest dims imply {shape}"
            )

    return BlstmModel(
        category=category,
        forward_params=LstmParams(arrays["w_forward"], arrays["u_forward"], arrays["b_forward"]),
        backward_params=LstmParams(
            arrays["w_backward"], arrays["u_backward"], arrays["b_backward"]
        ),
        dense_w=arrays["dense_w"],
        dense_b=float(arrays["dense_b"][0]),
        feat_mean=arrays["feat_mean"],
        feat_std=arrays["feat_std"],
        format_version=version,
    )


def save_model(model: BlstmModel) -> bytes:
    """Serialize a model; deterministic, so load/save round-trips bytes."""
    values = {
        "w_forward": model.forward_params.w,
        "u_forward": model.forward_params.u,
        "b_forward": model.forward_params.b,
        "w_backward": model.backward_params.w,
        "u_backward": model.backward_params.u,
        "b_backward": model.backward_params.b,
        "dense_w": model.dense_w,
        "dense_b": np.array([model.dense_b]),
        "feat_mean": model.feat_mean,
        "feat_std": model.feat_std,
    }
    meta = {
        "format_version": model.format_version,
        "category": model.category.value,
        "input_dim": model.input_dim,
        "hidden_dim": model.hidden_dim,
    }
    return write_container(meta, [(name, values[name]) for name in _ARRAY_ORDER])


def lstm_cell_step(
    x: np.ndarray, h_prev: np.ndarray, c_prev: np.ndarray, params: LstmParams
) -> tuple[np.ndarray, np.ndarray]:
    """One LSTM cell update; returns (h, c)."""
    hidden = params.hidden_dim
    z = params.w @ x + params.u @ h_prev + params.b
    i = sigmoid(z[0:hidden])
    f = sigmoid(z[hidden : 2 * hidden])
    g = np.tanh(z[2 * hidden : 3 * hidden])
    o = sigmoid(z[3 * hidden : 4 * hidden])
    c = f * c_prev + i * g
    h = o * np.tanh(c)
    return h, c


def blstm_forward(feat: MelSpectrogram, model: BlstmModel) -> ProbabilityScore:
    """Score one clip's features; returns a probability in [0, 1]."""
    frames = feat.frames
    if frames.shape[1] != model.input_dim:
        raise DimensionMismatch(
            f"features have {frames.shape[1]} bands, model expects {model.input_dim}"
        )
    if frames.shape[0] < 1:
        raise DimensionMismatch("need at least one feature frame")

    standardized = (frames - model.feat_mean) / model.feat_std
    pooled_fwd = _direction_pool(standardized, model.forward_params, reverse=False)
    pooled_bwd = _direction_pool(standardized, model.backward_params, reverse=True)
    pooled = np.concatenate([pooled_fwd, pooled_bwd])
    logit = float(model.dense_w @ pooled + model.dense_b)
    return ProbabilityScore(value=float(sigmoid(logit)), source=model.category.value)


def _direction_pool(frames: np.ndarray, params: LstmParams, reverse: bool) -> np.ndarray:
    """Run one direction from zero states and mean-pool its hidden sequence."""
    order = range(frames.shape[0] - 1, -1, -1) if reverse else range(frames.shape[0])
    h = np.zeros(params.hidden_dim)
    c = np.zeros(params.hidden_dim)
    total = np.zeros(params.hidden_dim)
    for t in order:
        h, c = lstm_cell_step(frames[t], h, c, params)
        total += h
    return total / frames.shape[0]


def sigmoid(z):
    """Numerically stable logistic function."""
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    if out.ndim == 0:
        return float(out)
    return out


def random_model(
    category: SoundCategory,
    input_dim: int = 64,
    hidden_dim: int = 128,
    seed: int = 0,
    weight_scale: float = 0.25,
) -> BlstmModel:
    """Seeded random model for tests and demo deployments.

    Weights are scaled down with fan-in so gate activations stay out of
    saturation on standardized features.
    """
    rng = np.random.default_rng(seed)

    def direction() -> LstmParams:
        return LstmParams(
            w=rng.normal(0.0, weight_scale / np.sqrt(input_dim), (4 * hidden_dim, input_dim)),
            u=rng.normal(0.0, weight_scale / np.sqrt(hidden_dim), (4 * hidden_dim, hidden_dim)),
            b=rng.normal(0.0, 0.1, 4 * hidden_dim),
        )

    return BlstmModel(
        category=category,
        forward_params=direction(),
        backward_params=direction(),
        dense_w=rng.normal(0.0, 1.0 / np.sqrt(2 * hidden_dim), 2 * hidden_dim),
        dense_b=float(rng.normal(0.0, 0.1)),
        feat_mean=rng.normal(0.0, 1.0, input_dim),
        feat_std=rng.uniform(0.5, 2.0, input_dim),
    )
