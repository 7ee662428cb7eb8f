"""HTTP face of the pipeline.

The model is loaded once at startup and immutable afterwards, so
concurrent requests share it freely. Bodies are UTF-8 JSON; every error
is ``{"error": message}`` with a 4xx/5xx status.
"""

from __future__ import annotations

from dataclasses import dataclass

import uvicorn
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .classifier import LogisticModel, load_model
from .embedding import EmbeddingProvider
from .errors import EmbeddingFailedError
from .extraction import DEFAULT_WINDOW_HALF_WIDTH
from .pipeline import analyze, check_compatible, model_fingerprint


@dataclass
class ServeConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    k: int = DEFAULT_WINDOW_HALF_WIDTH


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def create_app(
    model: LogisticModel,
    provider: EmbeddingProvider,
    k: int = DEFAULT_WINDOW_HALF_WIDTH,
) -> FastAPI:
    """Build the service around an already-loaded model and provider."""
    check_compatible(model, provider)
    fingerprint = model_fingerprint(model)
    app = FastAPI(title="fincat", docs_url=None, redoc_url=None)

    @app.get("/health")
    def health():
        return {"status": "ok", "model": fingerprint}

    @app.post("/analyze")
    async def analyze_text(request: Request):
        # Parse by hand: malformed input must yield 400 {"error": ...},
        # not the framework's default validation payload.
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be valid JSON")
        if not isinstance(body, dict):
            return _error(400, 'request body must be a JSON object like {"text": "..."}')
        if body.get("target_span") is not None:
            return _error(400, "target_span is reserved for future use and not yet supported")
        text = body.get("text")
        if not isinstance(text, str):
            return _error(400, 'missing or non-string "text" field')
        try:
            result = analyze(text, model, provider, k)
        except EmbeddingFailedError as exc:
            return _error(502, str(exc))
        return result.to_dict()

    return app


def serve(
    model_path: str,
    provider: EmbeddingProvider,
    config: ServeConfig = ServeConfig(),
) -> None:
    """Load the model and serve until shutdown.

    Raises on a bad model file or an unbindable port; the CLI turns that
    into a diagnostic plus nonzero exit.
    """
    model = load_model(model_path)
    app = create_app(model, provider, config.k)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
