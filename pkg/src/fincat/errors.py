"""Exception hierarchy shared across the package."""

from __future__ import annotations


class FincatError(Exception):
    """Base class for all package-specific failures."""


class ModelFormatError(FincatError):
    """Model file is missing, malformed, or from an unknown format version."""


class DatasetError(FincatError):
    """Dataset file is missing or a record fails validation.

    Carries the 1-based line number when the failure is tied to one line.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CacheError(FincatError):
    """Embedding cache file is missing or malformed."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CacheMissError(FincatError):
    """Requested embedding is not present in the cache."""


class EmbedderMismatchError(FincatError):
    """Model and embedding provider identities are incompatible."""


class EmbeddingFailedError(FincatError):
    """A provider failed while embedding a specific mention.

    The message names the mention; the original failure is chained as
    ``__cause__``.
    """


class RemoteEmbeddingError(FincatError):
    """Base class for remote embedding provider failures."""


class TransportError(RemoteEmbeddingError):
    """Network failure or timeout while contacting the provider."""


class ProtocolError(RemoteEmbeddingError):
    """Provider answered but violated the wire contract (e.g. wrong dim)."""


class ProviderError(RemoteEmbeddingError):
    """Provider answered with a non-2xx status; carries the response body."""

    def __init__(self, status: int, body: str):
        super().__init__(f"provider returned status {status}: {body}")
        self.status = status
        self.body = body
