from respscreen.service.config import ServiceConfig
from respscreen.service.core import ScreeningService, UploadReport, load_model_dir
from respscreen.service.http import build_app
from respscreen.service.store import SessionStore

__all__ = [
    "ScreeningService",
    "ServiceConfig",
    "SessionStore",
    "UploadReport",
    "build_app",
    "load_model_dir",
]
