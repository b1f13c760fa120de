"""Service configuration loaded from one JSON file.

Relative paths are resolved against the config file's own directory so a
deployment tree can be relocated wholesale. Everything the service needs
to read must be readable at load time; the storage directory is created
if absent since the service owns it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from respscreen.audio.mel import DspConfig

DEFAULT_SESSION_TTL_S = 24 * 3600.0
DEFAULT_MAX_UPLOAD_BYTES = 16 * 1024 * 1024


@dataclass(frozen=True)
class ServiceConfig:
    host: str
    port: int
    model_dir: Path
    tree_path: Path
    fusion_config_path: Path
    storage_dir: Path
    session_ttl_s: float = DEFAULT_SESSION_TTL_S
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD_BYTES
    dsp: DspConfig = field(default_factory=DspConfig)
    static_dir: Path | None = None

    def __post_init__(self) -> None:
        if not (0 < self.port < 65536):
            raise ValueError("port must be in 1..65535")
        if self.session_ttl_s <= 0:
            raise ValueError("session_ttl_s must be > 0")
        if self.max_upload_bytes <= 0:
            raise ValueError("max_upload_bytes must be > 0")

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        path = Path(path)
        data = json.loads(path.read_text())
        base = path.parent

        def resolve(key: str, required: bool = True) -> Path | None:
            value = data.get(key)
            if value is None:
                if required:
                    raise ValueError(f"config is missing {key!r}")
                return None
            return (base / value).resolve()

        listen = data.get("listen", "127.0.0.1:8000")
        host, _, port_text = listen.rpartition(":")
        if not host or not port_text.isdigit():
            raise ValueError("listen must look like host:port")

        config = cls(
            host=host,
            port=int(port_text),
            model_dir=resolve("model_dir"),
            tree_path=resolve("tree_path"),
            fusion_config_path=resolve("fusion_config_path"),
            storage_dir=resolve("storage_dir"),
            session_ttl_s=float(data.get("session_ttl_s", DEFAULT_SESSION_TTL_S)),
            max_upload_bytes=int(data.get("max_upload_bytes", DEFAULT_MAX_UPLOAD_BYTES)),
            dsp=DspConfig.from_dict(data["dsp"]) if "dsp" in data else DspConfig(),
            static_dir=resolve("static_dir", required=False),
        )
        config.validate_paths()
        return config

    def validate_paths(self) -> None:
        if not self.model_dir.is_dir():
            raise ValueError(f"model_dir is not a directory: {self.model_dir}")
        for name in ("tree_path", "fusion_config_path"):
            target: Path = getattr(self, name)
            if not target.is_file():
                raise ValueError(f"{name} is not a readable file: {target}")
        if self.static_dir is not None and not self.static_dir.is_dir():
            raise ValueError(f"static_dir is not a directory: {self.static_dir}")
        self.storage_dir.mkdir(parents=True, exist_ok=True)
