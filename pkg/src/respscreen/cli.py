"""Command-line entry points: the service launcher and batch tooling.

Exit codes are part of the contract: 0 on success, 1 for usage mistakes,
2 when the inputs themselves are bad (unreadable files, malformed audio,
impossible metric requests).
"""

from __future__ import annotations

import json
import sys
import threading
import time
from pathlib import Path

import click

from respscreen.audio.categories import ALL_CATEGORIES, SoundCategory
from respscreen.audio.wav import decode_wav
from respscreen.errors import ScreeningError
from respscreen.evalkit.corpus import (
    read_manifest,
    read_scores_csv,
    score_corpus,
    write_scores_csv,
)
from respscreen.evalkit.metrics import compute_auc, compute_roc
from respscreen.model.blstm import load_model, random_model, save_model
from respscreen.model.container import read_container, write_container
from respscreen.pipeline import clip_features

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_EXPIRY_SWEEP_MAX_S = 60.0


@click.group()
def cli() -> None:
    """Respiratory-sound screening toolkit."""


@cli.command()
@click.option(
    "--config",
    "config_path",
    envvar="RSPSCRN_CONFIG",
    required=True,
    type=click.Path(dir_okay=False),
    help="Service config JSON (falls back to $RSPSCRN_CONFIG).",
)
def serve(config_path: str) -> None:
    """Run the HTTP screening service."""
    import uvicorn

    from respscreen.service.config import ServiceConfig
    from respscreen.service.core import ScreeningService
    from respscreen.service.http import build_app

    config = ServiceConfig.from_file(config_path)
    service = ScreeningService(config)
    app = build_app(service)

    interval = min(_EXPIRY_SWEEP_MAX_S, max(1.0, config.session_ttl_s / 4.0))

    def sweep() -> None:
        while True:
            time.sleep(interval)
            service.expire_sessions()

    threading.Thread(target=sweep, daemon=True, name="session-expiry").start()
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")


@cli.command()
@click.option("--manifest", "manifest_path", required=True, type=click.Path(dir_okay=False))
@click.option("--models", "model_dir", required=True, type=click.Path(file_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def score(manifest_path: str, model_dir: str, out_path: str) -> None:
    """Score every file in a corpus manifest; write a scores CSV."""
    from respscreen.service.core import load_model_dir

    rows = read_manifest(manifest_path)
    models = load_model_dir(Path(model_dir))
    scored = score_corpus(rows, models, base_dir=Path(manifest_path).parent)
    write_scores_csv(out_path, scored)
    click.echo(f"scored {sum(r.score is not None for r in scored)}/{len(scored)} rows")


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path(dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def features(in_path: str, out_path: str) -> None:
    """Extract log-mel features from one WAV into a binary dump."""
    from respscreen.audio.mel import DspConfig

    config = DspConfig()
    clip = decode_wav(Path(in_path).read_bytes())
    feats = clip_features(clip, config)
    meta = {
        "kind": "features",
        "format_version": 1,
        "dsp": config.to_dict(),
        "n_frames": feats.frames.shape[0],
        "n_mels": feats.frames.shape[1],
    }
    Path(out_path).write_bytes(write_container(meta, [("log_mel", feats.frames)]))
    click.echo(f"wrote {feats.frames.shape[0]} frames x {feats.frames.shape[1]} bands")


@cli.command(name="eval")
@click.option("--scores", "scores_path", required=True, type=click.Path(dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def eval_cmd(scores_path: str, out_path: str) -> None:
    """Compute AUC and an ROC curve from a labeled scores CSV."""
    rows = read_scores_csv(scores_path)
    usable = [r for r in rows if r.score is not None and r.label is not None]
    labels = [r.label for r in usable]
    values = [r.score for r in usable]
    if not usable:
        raise ScreeningError("no rows with both a score and a label")
    auc = compute_auc(labels, values)
    roc = compute_roc(labels, values)
    report = {
        "auc": auc,
        "n_pos": int(sum(labels)),
        "n_neg": int(len(labels) - sum(labels)),
        "n_rows": len(rows),
        "n_used": len(usable),
        "roc": roc.to_dict(),
    }
    Path(out_path).write_text(json.dumps(report, indent=2) + "\n")
    click.echo(f"auc {auc:.6f} over {len(usable)} rows")


@cli.command(name="gen-model")
@click.option("--category", "category_id", required=True, type=click.Choice([c.wire_id for c in ALL_CATEGORIES]))
@click.option("--seed", required=True, type=int)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--input-dim", default=64, show_default=True, type=int)
@click.option("--hidden-dim", default=128, show_default=True, type=int)
def gen_model(category_id: str, seed: int, out_path: str, input_dim: int, hidden_dim: int) -> None:
    """Write a seeded random weight file (for tests and demos)."""
    model = random_model(
        SoundCategory.from_wire(category_id),
        input_dim=input_dim,
        hidden_dim=hidden_dim,
        seed=seed,
    )
    Path(out_path).write_bytes(save_model(model))
    click.echo(f"wrote {category_id} model (input {input_dim}, hidden {hidden_dim}, seed {seed})")


@cli.command(name="inspect-model")
@click.argument("model_file", type=click.Path(dir_okay=False))
def inspect_model(model_file: str) -> None:
    """Print a weight file's manifest and array shapes."""
    data = Path(model_file).read_bytes()
    manifest, arrays = read_container(data)
    for key in sorted(manifest):
        if key != "arrays":
            click.echo(f"{key}: {manifest[key]}")
    for name in sorted(arrays):
        shape = "x".join(str(d) for d in arrays[name].shape)
        click.echo(f"array {name}: {shape}")
    # Confirms the payload is loadable, not just structurally sound.
    load_model(data)
    click.echo("loadable: yes")


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (ScreeningError, OSError, ValueError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
