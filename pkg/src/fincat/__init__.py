"""fincat: in-claim vs out-of-claim numeral detection for financial text.

Pipeline: whitespace tokenization -> numeral mentions -> context window
-> embedding provider -> logistic regression -> thresholded verdict.
"""

from .classifier import (
    ClaimLabel,
    LogisticModel,
    Prediction,
    TrainConfig,
    classify,
    load_model,
    loss_and_gradient,
    save_model,
    score,
    train,
)
from .embedding import (
    DEFAULT_DIM,
    CachedEmbedder,
    EmbedderId,
    EmbeddingProvider,
    HashedEmbedder,
    RemoteEmbedder,
    fetch_remote_embedding,
    hashed_embed,
    load_cached_embeddings,
    write_cached_embeddings,
)
from .errors import (
    CacheError,
    CacheMissError,
    DatasetError,
    EmbedderMismatchError,
    EmbeddingFailedError,
    FincatError,
    ModelFormatError,
    ProtocolError,
    ProviderError,
    RemoteEmbeddingError,
    TransportError,
)
from .evaluation import (
    DatasetRecord,
    EvalReport,
    SkippedRecord,
    embed_records,
    evaluate,
    f1_scores,
    load_dataset,
    render_report,
)
from .extraction import (
    DEFAULT_WINDOW_HALF_WIDTH,
    ContextWindow,
    NumeralMention,
    Token,
    context_window,
    find_numerals,
    tokenize,
)
from .pipeline import AnalysisResult, AnalysisRow, analyze, model_fingerprint
from .service import ServeConfig, create_app, serve

__version__ = "0.1.0"

__all__ = [
    "AnalysisResult",
    "AnalysisRow",
    "CacheError",
    "CacheMissError",
    "CachedEmbedder",
    "ClaimLabel",
    "ContextWindow",
    "DEFAULT_DIM",
    "DEFAULT_WINDOW_HALF_WIDTH",
    "DatasetError",
    "DatasetRecord",
    "EmbedderId",
    "EmbedderMismatchError",
    "EmbeddingFailedError",
    "EmbeddingProvider",
    "EvalReport",
    "FincatError",
    "HashedEmbedder",
    "LogisticModel",
    "ModelFormatError",
    "NumeralMention",
    "Prediction",
    "ProtocolError",
    "ProviderError",
    "RemoteEmbedder",
    "RemoteEmbeddingError",
    "ServeConfig",
    "SkippedRecord",
    "Token",
    "TrainConfig",
    "TransportError",
    "analyze",
    "classify",
    "context_window",
    "create_app",
    "embed_records",
    "evaluate",
    "f1_scores",
    "fetch_remote_embedding",
    "find_numerals",
    "hashed_embed",
    "load_cached_embeddings",
    "load_dataset",
    "load_model",
    "loss_and_gradient",
    "model_fingerprint",
    "render_report",
    "save_model",
    "score",
    "serve",
    "tokenize",
    "train",
    "write_cached_embeddings",
]
