"""Durable session storage: an append-only JSONL log plus WAV files.

Every mutation appends a full session snapshot; on load the last
snapshot per id wins. Audio lives beside the log under one directory
per session so expiry can drop a session's recordings with a single
directory removal. All I/O failures surface as StorageUnavailable.
"""

from __future__ import annotations

import json
import os
import shutil
import threading
from pathlib import Path

from respscreen.audio.categories import SoundCategory
from respscreen.errors import StorageUnavailable

LOG_FILENAME = "sessions.jsonl"


class SessionStore:
    def __init__(self, storage_dir: str | Path):
        self._dir = Path(storage_dir)
        self._log_path = self._dir / LOG_FILENAME
        self._write_lock = threading.Lock()
        try:
            self._dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageUnavailable(f"cannot create storage dir: {exc}") from exc

    def load_all(self) -> dict[str, dict]:
        """Replay the log; later snapshots of a session replace earlier ones."""
        sessions: dict[str, dict] = {}
        if not self._log_path.exists():
            return sessions
        try:
            with open(self._log_path) as handle:
                for line in handle:
                    line = line.strip()
                    if not line:
                        continue
                    record = json.loads(line)
                    sessions[record["id"]] = record
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise StorageUnavailable(f"cannot replay session log: {exc}") from exc
        return sessions

    def append_snapshot(self, record: dict) -> None:
        line = json.dumps(record, sort_keys=True)
        try:
            with self._write_lock:
                with open(self._log_path, "a") as handle:
                    handle.write(line + "\n")
                    handle.flush()
                    os.fsync(handle.fileno())
        except OSError as exc:
            raise StorageUnavailable(f"cannot append session snapshot: {exc}") from exc

    def _audio_path(self, session_id: str, category: SoundCategory) -> Path:
        return self._dir / session_id / f"{category.wire_id}.wav"

    def write_audio(self, session_id: str, category: SoundCategory, data: bytes) -> None:
        path = self._audio_path(session_id, category)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
        except OSError as exc:
            raise StorageUnavailable(f"cannot store audio: {exc}") from exc

    def read_audio(self, session_id: str, category: SoundCategory) -> bytes:
        try:
            return self._audio_path(session_id, category).read_bytes()
        except OSError as exc:
            raise StorageUnavailable(f"cannot read stored audio: {exc}") from exc

    def delete_audio(self, session_id: str) -> None:
        target = self._dir / session_id
        try:
            if target.exists():
                shutil.rmtree(target)
        except OSError as exc:
            raise StorageUnavailable(f"cannot delete stored audio: {exc}") from exc
