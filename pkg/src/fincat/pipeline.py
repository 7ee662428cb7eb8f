"""End-to-end analysis: extraction -> embedding -> classification.

``analyze`` produces one row per numeral occurrence in text order — the
three-column output (numeral, verdict, probability) plus wall-clock
timing and a fingerprint of the model in use.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass

from .classifier import ClaimLabel, LogisticModel, classify, model_to_json
from .embedding import EmbeddingProvider
from .errors import EmbedderMismatchError, EmbeddingFailedError, FincatError
from .extraction import DEFAULT_WINDOW_HALF_WIDTH, context_window, find_numerals, tokenize


@dataclass(frozen=True)
class AnalysisRow:
    numeral_surface: str
    char_start: int
    char_end: int
    label: ClaimLabel
    probability: float

    def to_dict(self) -> dict:
        return {
            "numeral": self.numeral_surface,
            "start": self.char_start,
            "end": self.char_end,
            "label": self.label.wire_name,
            "probability": self.probability,
        }


@dataclass(frozen=True)
class AnalysisResult:
    rows: tuple[AnalysisRow, ...]
    elapsed_ms: int
    model_fingerprint: str

    def to_dict(self) -> dict:
        return {
            "rows": [row.to_dict() for row in self.rows],
            "elapsed_ms": self.elapsed_ms,
            "model": self.model_fingerprint,
        }


def model_fingerprint(model: LogisticModel) -> str:
    """Short stable digest of the model's canonical serialization."""
    return hashlib.sha256(model_to_json(model).encode("utf-8")).hexdigest()[:16]


def check_compatible(model: LogisticModel, provider: EmbeddingProvider) -> None:
    if not model.embedder.compatible_with(provider.embedder_id):
        raise EmbedderMismatchError(
            f"model was trained for embedder {model.embedder}, "
            f"provider is {provider.embedder_id}"
        )


def analyze(
    text: str,
    model: LogisticModel,
    provider: EmbeddingProvider,
    k: int = DEFAULT_WINDOW_HALF_WIDTH,
    record_id: str = "",
) -> AnalysisResult:
    """Score every numeral in the text; duplicates score independently.

    Text without numerals succeeds with zero rows. ``record_id`` keys the
    cached backend; other providers ignore it. Elapsed time covers the
    whole pipeline at millisecond resolution.
    """
    check_compatible(model, provider)
    started = time.perf_counter()
    tokens = tokenize(text)
    rows = []
    for mention in find_numerals(tokens):
        window = context_window(tokens, mention, k)
        try:
            vector = provider.embed(window, key=(record_id, mention.mention_id))
        except FincatError as exc:
            raise EmbeddingFailedError(
                f"embedding failed for numeral {mention.token.surface!r} "
                f"at [{mention.token.char_start}, {mention.token.char_end}): {exc}"
            ) from exc
        prediction = classify(model, vector)
        rows.append(
            AnalysisRow(
                numeral_surface=mention.token.surface,
                char_start=mention.token.char_start,
                char_end=mention.token.char_end,
                label=prediction.label,
                probability=prediction.probability,
            )
        )
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    return AnalysisResult(
        rows=tuple(rows),
        elapsed_ms=elapsed_ms,
        model_fingerprint=model_fingerprint(model),
    )
