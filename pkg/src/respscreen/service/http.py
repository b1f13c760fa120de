"""HTTP surface over the screening service.

Thin translation layer: JSON in, JSON out, one handler per operation.
Failures inside the service arrive as typed errors and map onto status
codes here; bodies are parsed by hand so malformed JSON also comes back
in the same {error_code, message} shape instead of a framework default.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from respscreen.errors import SchemaViolation, ScreeningError
from respscreen.service.core import ScreeningService

_STATUS_BY_ERROR = {
    "UnknownSession": 404,
    "SessionClosed": 409,
    "ModelMissing": 409,
    "PayloadTooLarge": 413,
    "StorageUnavailable": 500,
}
_DEFAULT_ERROR_STATUS = 400


def _error_response(exc: ScreeningError) -> JSONResponse:
    return JSONResponse(
        status_code=_STATUS_BY_ERROR.get(exc.error_code, _DEFAULT_ERROR_STATUS),
        content={"error_code": exc.error_code, "message": str(exc)},
    )


async def _json_body(request: Request) -> dict:
    raw = await request.body()
    try:
        payload = json.loads(raw)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaViolation(f"body is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise SchemaViolation("body must be a JSON object")
    return payload


def build_app(service: ScreeningService) -> FastAPI:
    app = FastAPI(title="respscreen", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ScreeningError)
    async def screening_error_handler(request: Request, exc: ScreeningError):
        return _error_response(exc)

    @app.post("/api/v1/sessions")
    def create_session():
        return {"id": service.create_session()}

    @app.get("/api/v1/sessions/{session_id}")
    def get_session(session_id: str):
        return service.get_session(session_id)

    @app.put("/api/v1/sessions/{session_id}/metadata")
    async def put_metadata(session_id: str, request: Request):
        payload = await _json_body(request)
        await run_in_threadpool(service.submit_metadata, session_id, payload)
        return {"ok": True}

    @app.put("/api/v1/sessions/{session_id}/symptoms")
    async def put_symptoms(session_id: str, request: Request):
        payload = await _json_body(request)
        await run_in_threadpool(service.submit_symptoms, session_id, payload)
        return {"ok": True}

    @app.put("/api/v1/sessions/{session_id}/audio/{category}")
    async def put_audio(session_id: str, category: str, request: Request):
        body = await request.body()
        report = await run_in_threadpool(service.upload_audio, session_id, category, body)
        return report.to_dict()

    @app.post("/api/v1/sessions/{session_id}/score")
    async def post_score(session_id: str):
        result = await run_in_threadpool(service.compute_score, session_id)
        return result.to_dict()

    static_dir = service.config.static_dir
    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
