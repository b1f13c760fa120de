"""Session lifecycle and scoring orchestration.

Sessions move collecting -> scored -> expired and never backwards.
Mutations take a per-session lock so concurrent requests against one
session serialize; distinct sessions only share immutable models and
configuration. The wall clock is injected so expiry is testable.
"""

from __future__ import annotations

import secrets
import threading
import time
from copy import deepcopy
from dataclasses import dataclass
from typing import Callable

from respscreen.audio.categories import SoundCategory
from respscreen.audio.clip import ensure_admissible
from respscreen.audio.wav import decode_wav
from respscreen.errors import (
    MissingField,
    ModelMissing,
    NothingToScore,
    PayloadTooLarge,
    SchemaViolation,
    SessionClosed,
    UnknownSession,
)
from respscreen.fusion import FusionConfig, ScreenResult, fuse
from respscreen.model.blstm import (
    MODEL_FILE_SUFFIX,
    SYMPTOM_SOURCE,
    BlstmModel,
    ProbabilityScore,
    load_model,
)
from respscreen.pipeline import score_clip
from respscreen.service.config import ServiceConfig
from respscreen.service.store import SessionStore
from respscreen.symptoms import (
    AGE_BANDS,
    DecisionTree,
    SymptomRecord,
    encode_symptoms,
    tree_predict,
)

STATE_COLLECTING = "collecting"
STATE_SCORED = "scored"
STATE_EXPIRED = "expired"

_METADATA_KEYS = {"age_band", "gender", "locale"}


@dataclass(frozen=True)
class UploadReport:
    category: SoundCategory
    duration_s: float
    rms: float

    def to_dict(self) -> dict:
        return {
            "category": self.category.wire_id,
            "duration_s": self.duration_s,
            "rms": self.rms,
        }


def load_model_dir(model_dir) -> dict[SoundCategory, BlstmModel]:
    models: dict[SoundCategory, BlstmModel] = {}
    for path in sorted(model_dir.glob(f"*{MODEL_FILE_SUFFIX}")):
        model = load_model(path.read_bytes())
        models[model.category] = model
    return models


class ScreeningService:
    def __init__(self, config: ServiceConfig, clock: Callable[[], float] = time.time):
        self._config = config
        self._clock = clock
        self._store = SessionStore(config.storage_dir)
        self._sessions = self._store.load_all()
        self._models = load_model_dir(config.model_dir)
        self._tree = DecisionTree.from_json(config.tree_path.read_text())
        self._fusion = FusionConfig.from_file(config.fusion_config_path)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    @property
    def config(self) -> ServiceConfig:
        return self._config

    @property
    def models(self) -> dict[SoundCategory, BlstmModel]:
        return dict(self._models)

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _require(self, session_id: str) -> dict:
        record = self._sessions.get(session_id)
        if record is None:
            raise UnknownSession(f"no session {session_id!r}")
        return record

    def _require_collecting(self, session_id: str) -> dict:
        record = self._require(session_id)
        if record["state"] != STATE_COLLECTING:
            raise SessionClosed(f"session is {record['state']}")
        return record

    # -- lifecycle -------------------------------------------------------------

    def create_session(self) -> str:
        session_id = secrets.token_hex(16)
        record = {
            "id": session_id,
            "created_at": self._clock(),
            "state": STATE_COLLECTING,
            "metadata": None,
            "symptoms": None,
            "recordings": {},
            "result": None,
        }
        with self._lock_for(session_id):
            self._store.append_snapshot(record)
            self._sessions[session_id] = record
        return session_id

    def get_session(self, session_id: str) -> dict:
        return deepcopy(self._require(session_id))

    def submit_metadata(self, session_id: str, metadata: dict) -> None:
        if not isinstance(metadata, dict):
            raise SchemaViolation("metadata must be an object")
        unknown = set(metadata) - _METADATA_KEYS
        if unknown:
            raise SchemaViolation(f"unknown metadata fields: {sorted(unknown)}")
        if metadata.get("age_band") not in AGE_BANDS:
            raise SchemaViolation(f"age_band must be one of {AGE_BANDS}")
        locale = metadata.get("locale")
        if not isinstance(locale, str) or not locale:
            raise SchemaViolation("locale must be a nonempty string")
        gender = metadata.get("gender")
        if gender is not None and not isinstance(gender, str):
            raise SchemaViolation("gender must be a string when present")
        with self._lock_for(session_id):
            record = self._require_collecting(session_id)
            record["metadata"] = dict(metadata)
            self._store.append_snapshot(record)

    def submit_symptoms(self, session_id: str, symptoms: dict) -> None:
        if not isinstance(symptoms, dict):
            raise SchemaViolation("symptoms must be an object")
        try:
            parsed = SymptomRecord.from_dict(symptoms)
        except (MissingField, ValueError) as exc:
            raise SchemaViolation(str(exc)) from exc
        with self._lock_for(session_id):
            record = self._require_collecting(session_id)
            record["symptoms"] = parsed.to_dict()
            self._store.append_snapshot(record)

    def upload_audio(self, session_id: str, category_id: str, data: bytes) -> UploadReport:
        with self._lock_for(session_id):
            record = self._require_collecting(session_id)
            if len(data) > self._config.max_upload_bytes:
                raise PayloadTooLarge(
                    f"{len(data)} bytes exceeds limit {self._config.max_upload_bytes}"
                )
            category = SoundCategory.from_wire(category_id)
            clip = decode_wav(data, category=category)
            ensure_admissible(clip)
            self._store.write_audio(session_id, category, data)
            report = UploadReport(category=category, duration_s=clip.duration, rms=clip.rms)
            record["recordings"][category.wire_id] = {
                "duration_s": clip.duration,
                "rms": clip.rms,
            }
            self._store.append_snapshot(record)
            return report

    # -- scoring ---------------------------------------------------------------

    def compute_score(self, session_id: str) -> ScreenResult:
        with self._lock_for(session_id):
            record = self._require(session_id)
            if record["state"] == STATE_SCORED:
                return ScreenResult.from_dict(record["result"])
            if record["state"] != STATE_COLLECTING:
                raise SessionClosed(f"session is {record['state']}")
            if not record["recordings"] and record["symptoms"] is None:
                raise NothingToScore("submit symptoms or at least one recording first")

            recorded = [SoundCategory.from_wire(c) for c in record["recordings"]]
            unmodeled = sorted(c.wire_id for c in recorded if c not in self._models)
            if unmodeled:
                raise ModelMissing(f"no model for categories: {', '.join(unmodeled)}")

            scores: dict[str, ProbabilityScore] = {}
            for category in recorded:
                wav_bytes = self._store.read_audio(session_id, category)
                clip = decode_wav(wav_bytes, category=category)
                scores[category.wire_id] = score_clip(
                    clip, self._models[category], self._config.dsp
                )
            if record["symptoms"] is not None:
                vec = encode_symptoms(SymptomRecord.from_dict(record["symptoms"]))
                scores[SYMPTOM_SOURCE] = tree_predict(self._tree, vec)

            result = fuse(scores, self._fusion, timestamp=self._clock())
            record["result"] = result.to_dict()
            record["state"] = STATE_SCORED
            self._store.append_snapshot(record)
            return result

    # -- expiry ----------------------------------------------------------------

    def expire_sessions(self, now: float | None = None) -> int:
        if now is None:
            now = self._clock()
        expired = 0
        for session_id in list(self._sessions):
            with self._lock_for(session_id):
                record = self._sessions.get(session_id)
                if record is None or record["state"] == STATE_EXPIRED:
                    continue
                if now - record["created_at"] <= self._config.session_ttl_s:
                    continue
                self._store.delete_audio(session_id)
                record["recordings"] = {}
                record["state"] = STATE_EXPIRED
                self._store.append_snapshot(record)
                expired += 1
        return expired
