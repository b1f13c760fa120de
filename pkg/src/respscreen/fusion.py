"""Combining per-source probabilities into one screening result.

Each source (nine sound categories plus the questionnaire) carries a
configurable non-negative weight. The fused value is the weighted
arithmetic mean over the sources actually present, with a policy switch
for how to treat configured-but-absent sources.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from respscreen.errors import MissingSource, NoUsableScores
from respscreen.model.blstm import (
    FUSED_SOURCE,
    KNOWN_SOURCES,
    ProbabilityScore,
)

MISSING_RENORMALIZE = "renormalize"
MISSING_FAIL = "fail"
_MISSING_POLICIES = (MISSING_RENORMALIZE, MISSING_FAIL)


def equal_weights() -> dict[str, float]:
    return {source: 1.0 for source in KNOWN_SOURCES}


@dataclass(frozen=True)
class FusionConfig:
    weights: Mapping[str, float] = field(default_factory=equal_weights)
    missing_policy: str = MISSING_RENORMALIZE

    def __post_init__(self) -> None:
        if self.missing_policy not in _MISSING_POLICIES:
            raise ValueError(f"missing_policy must be one of {_MISSING_POLICIES}")
        if set(self.weights) != set(KNOWN_SOURCES):
            raise ValueError("weights must cover every known source exactly")
        for source, weight in self.weights.items():
            weight = float(weight)
            if not np.isfinite(weight) or weight < 0.0:
                raise ValueError(f"weight for {source!r} must be finite and >= 0")
        object.__setattr__(self, "weights", dict(self.weights))

    def to_dict(self) -> dict:
        return {"weights": dict(self.weights), "missing_policy": self.missing_policy}

    @classmethod
    def from_dict(cls, data: dict) -> "FusionConfig":
        return cls(
            weights={k: float(v) for k, v in data["weights"].items()},
            missing_policy=data.get("missing_policy", MISSING_RENORMALIZE),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "FusionConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class ScreenResult:
    per_source: Mapping[str, ProbabilityScore]
    fused: ProbabilityScore
    sources_used: tuple[str, ...]
    timestamp: float

    def to_dict(self) -> dict:
        return {
            "per_source": {k: v.value for k, v in self.per_source.items()},
            "fused": self.fused.value,
            "sources_used": list(self.sources_used),
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScreenResult":
        return cls(
            per_source={
                k: ProbabilityScore(value=float(v), source=k)
                for k, v in data["per_source"].items()
            },
            fused=ProbabilityScore(value=float(data["fused"]), source=FUSED_SOURCE),
            sources_used=tuple(data["sources_used"]),
            timestamp=float(data["timestamp"]),
        )


def fuse(
    scores: Mapping[str, ProbabilityScore],
    config: FusionConfig | None = None,
    timestamp: float = 0.0,
) -> ScreenResult:
    """Weighted mean of the provided scores.

    Under "renormalize" the weights of absent sources are dropped and the
    rest rescaled; under "fail" any configured source with positive weight
    must be present or MissingSource is raised. All-zero weight over the
    provided sources raises NoUsableScores.
    """
    if config is None:
        config = FusionConfig()
    for source, score in scores.items():
        if source not in KNOWN_SOURCES:
            raise ValueError(f"unknown source {source!r}")
        if score.source != source:
            raise ValueError(f"score under key {source!r} is tagged {score.source!r}")

    if config.missing_policy == MISSING_FAIL:
        for source, weight in config.weights.items():
            if weight > 0.0 and source not in scores:
                raise MissingSource(f"no score for weighted source {source!r}")

    used = [s for s in KNOWN_SOURCES if s in scores and config.weights[s] > 0.0]
    total = sum(config.weights[s] for s in used)
    if not used or total <= 0.0:
        raise NoUsableScores("no provided source carries positive weight")

    fused = sum(config.weights[s] * scores[s].value for s in used) / total
    fused = min(1.0, max(0.0, fused))
    return ScreenResult(
        per_source=dict(scores),
        fused=ProbabilityScore(value=fused, source=FUSED_SOURCE),
        sources_used=tuple(used),
        timestamp=timestamp,
    )
