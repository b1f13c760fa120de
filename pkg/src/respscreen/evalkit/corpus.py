"""Batch scoring of recorded corpora described by CSV manifests.

A manifest row names a WAV file, its sound category, and optionally a
0/1 label. Batch scoring validates model coverage up front, then keeps
going past bad rows: a row that fails to decode or fails admission gets
an error marker in the score column instead of aborting the run.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from respscreen.audio.categories import SoundCategory
from respscreen.audio.mel import DspConfig
from respscreen.errors import ModelMissing, ScreeningError
from respscreen.model.blstm import BlstmModel
from respscreen.pipeline import admit_and_score

ERROR_PREFIX = "error:"

_MANIFEST_COLUMNS = ("path", "category")
_SCORE_COLUMNS = ("path", "category", "score", "label")


@dataclass(frozen=True)
class ManifestRow:
    path: str
    category: SoundCategory
    label: int | None = None


@dataclass(frozen=True)
class ScoredRow:
    path: str
    category: SoundCategory
    score: float | None
    error_code: str | None = None
    label: int | None = None


def read_manifest(path: str | Path) -> list[ManifestRow]:
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in _MANIFEST_COLUMNS:
            if column not in header:
                raise ValueError(f"manifest is missing the {column!r} column")
        rows = []
        for record in reader:
            label_text = (record.get("label") or "").strip()
            rows.append(
                ManifestRow(
                    path=record["path"],
                    category=SoundCategory.from_wire(record["category"]),
                    label=int(label_text) if label_text else None,
                )
            )
    return rows


def score_corpus(
    rows: Iterable[ManifestRow],
    models: Mapping[SoundCategory, BlstmModel],
    config: DspConfig | None = None,
    base_dir: str | Path | None = None,
) -> list[ScoredRow]:
    rows = list(rows)
    needed = {row.category for row in rows}
    missing = sorted(c.wire_id for c in needed if c not in models)
    if missing:
        raise ModelMissing(f"no model for categories: {', '.join(missing)}")

    base = Path(base_dir) if base_dir is not None else None
    scored = []
    for row in rows:
        clip_path = Path(row.path) if base is None else base / row.path
        try:
            wav_bytes = clip_path.read_bytes()
            score = admit_and_score(wav_bytes, models[row.category], config)
        except ScreeningError as exc:
            scored.append(
                ScoredRow(
                    path=row.path,
                    category=row.category,
                    score=None,
                    error_code=exc.error_code,
                    label=row.label,
                )
            )
        except OSError:
            scored.append(
                ScoredRow(
                    path=row.path,
                    category=row.category,
                    score=None,
                    error_code="FileUnreadable",
                    label=row.label,
                )
            )
        else:
            scored.append(
                ScoredRow(
                    path=row.path,
                    category=row.category,
                    score=score.value,
                    label=row.label,
                )
            )
    return scored


def write_scores_csv(path: str | Path, rows: Iterable[ScoredRow]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(_SCORE_COLUMNS)
        for row in rows:
            score_text = (
                f"{ERROR_PREFIX}{row.error_code}" if row.score is None else repr(row.score)
            )
            writer.writerow(
                [
                    row.path,
                    row.category.wire_id,
                    score_text,
                    "" if row.label is None else row.label,
                ]
            )


def read_scores_csv(path: str | Path) -> list[ScoredRow]:
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in _SCORE_COLUMNS[:3]:
            if column not in header:
                raise ValueError(f"scores file is missing the {column!r} column")
        rows = []
        for record in reader:
            text = record["score"].strip()
            label_text = (record.get("label") or "").strip()
            if text.startswith(ERROR_PREFIX):
                score, code = None, text[len(ERROR_PREFIX):]
            else:
                score, code = float(text), None
            rows.append(
                ScoredRow(
                    path=record["path"],
                    category=SoundCategory.from_wire(record["category"]),
                    score=score,
                    error_code=code,
                    label=int(label_text) if label_text else None,
                )
            )
    return rows
