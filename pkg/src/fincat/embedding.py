"""Context-embedding providers behind one small contract.

A provider turns a ContextWindow into a fixed-length float64 vector that
represents the target numeral conditioned on its surrounding words. Three
backends exist:

* ``HashedEmbedder`` — deterministic feature-hashing construction, fully
  offline, bit-reproducible across implementations.
* ``RemoteEmbedder`` — HTTP client for a transformer service that returns
  the already mean-pooled vector for the numeral's subword pieces.
* ``CachedEmbedder`` — lookup into a precomputed dump keyed by
  (record_id, mention_id).

A provider's ``embed`` is a pure function of the window (and, for the
cached backend, the key) for a fixed configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol

import numpy as np
import requests

from .errors import (
    CacheError,
    CacheMissError,
    ProtocolError,
    ProviderError,
    TransportError,
)
from .extraction import ContextWindow

DEFAULT_DIM = 768

# Relative word positions are clamped to this many slots each side,
# mirroring the default window half-width.
_POSITION_CLAMP = 6

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF

_SEP = "\x1f"  # unit separator between feature parts

CacheKey = tuple[str, int]


@dataclass(frozen=True)
class EmbedderId:
    """Identity of an embedding configuration.

    A model may only score vectors produced under a compatible identity;
    see ``compatible_with``.
    """

    kind: str  # "hashed" | "remote" | "cached"
    dim: int
    seed: int | None = None  # hashed only
    endpoint: str | None = None  # remote only

    def __post_init__(self):
        if self.kind not in ("hashed", "remote", "cached"):
            raise ValueError(f"unknown embedder kind {self.kind!r}")
        if self.dim <= 0:
            raise ValueError(f"dim must be positive, got {self.dim}")

    def compatible_with(self, other: EmbedderId) -> bool:
        """True when vectors from ``other`` may be scored by a model built on ``self``.

        Dims must agree. A cached dump carries no upstream identity of its
        own, so the "cached" kind is accepted against any kind; otherwise
        kinds must match, and hashed embedders must also share the seed.
        The remote endpoint is a deployment detail and is not compared.
        """
        if self.dim != other.dim:
            return False
        if self.kind == "cached" or other.kind == "cached":
            return True
        if self.kind != other.kind:
            return False
        if self.kind == "hashed":
            return self.seed == other.seed
        return True

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "dim": self.dim}
        if self.kind == "hashed":
            out["seed"] = self.seed
        if self.kind == "remote":
            out["endpoint"] = self.endpoint
        return out

    @classmethod
    def from_dict(cls, data: dict) -> EmbedderId:
        return cls(
            kind=data["kind"],
            dim=data["dim"],
            seed=data.get("seed"),
            endpoint=data.get("endpoint"),
        )


class EmbeddingProvider(Protocol):
    """Contract every backend satisfies."""

    @property
    def embedder_id(self) -> EmbedderId: ...

    def embed(self, window: ContextWindow, key: CacheKey | None = None) -> np.ndarray: ...


def _fnv1a64(seed: int, data: bytes) -> int:
    """FNV-1a 64-bit over the 8 big-endian seed bytes followed by ``data``."""
    h = _FNV_OFFSET
    for b in seed.to_bytes(8, "big") + data:
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


def _window_features(window: ContextWindow) -> set[bytes]:
    """Enumerate the hashed embedder's feature set for a window.

    One numeral-surface feature, one (surface, clamped relative position)
    feature per context word, and one feature per character 3-gram of the
    numeral surface padded with ``^``/``$``. Duplicates collapse: the
    result is a set.
    """
    numeral = window.words[window.numeral_pos].surface
    features = {f"N{_SEP}{numeral}"}
    for pos, token in enumerate(window.words):
        if pos == window.numeral_pos:
            continue
        rel = max(-_POSITION_CLAMP, min(_POSITION_CLAMP, pos - window.numeral_pos))
        features.add(f"C{_SEP}{token.surface}{_SEP}{rel}")
    padded = f"^{numeral}$"
    for i in range(len(padded) - 2):
        features.add(f"G{_SEP}{padded[i : i + 3]}")
    return {f.encode("utf-8") for f in features}


def hashed_embed(window: ContextWindow, dim: int = DEFAULT_DIM, seed: int = 0) -> np.ndarray:
    """Feature-hash the window into a unit-norm vector of length ``dim``.

    Each feature is FNV-1a-hashed (seed bytes first); the hash picks the
    index (mod dim) and the sign (bit 63). Accumulation is commutative,
    so the vector is independent of feature order, and only surfaces and
    relative positions enter the features, never absolute char offsets.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    values = np.zeros(dim, dtype=np.float64)
    for feature in _window_features(window):
        h = _fnv1a64(seed, feature)
        sign = 1.0 if (h >> 63) == 0 else -1.0
        values[h % dim] += sign
    norm = math.sqrt(float(values @ values))
    if norm == 0.0:  # unreachable with >=1 feature, guarded anyway
        values[0] = 1.0
        return values
    return values / norm


class HashedEmbedder:
    """Deterministic offline backend built on ``hashed_embed``."""

    def __init__(self, dim: int = DEFAULT_DIM, seed: int = 0):
        self._dim = dim
        self._seed = seed
        self._id = EmbedderId(kind="hashed", dim=dim, seed=seed)

    @property
    def embedder_id(self) -> EmbedderId:
        return self._id

    def embed(self, window: ContextWindow, key: CacheKey | None = None) -> np.ndarray:
        return hashed_embed(window, self._dim, self._seed)


def fetch_remote_embedding(
    endpoint: str,
    window: ContextWindow,
    dim: int = DEFAULT_DIM,
    timeout: float = 10.0,
    session: requests.Session | None = None,
) -> np.ndarray:
    """POST the window to ``{endpoint}/embed`` and return the vector.

    The provider owns subword splitting and mean pooling; the response
    must carry exactly ``dim`` finite numbers. Raises TransportError on
    network failure or timeout, ProviderError on a non-2xx status, and
    ProtocolError when the body violates the wire contract.
    """
    url = endpoint.rstrip("/") + "/embed"
    body = {
        "window_words": [t.surface for t in window.words],
        "numeral_pos": window.numeral_pos,
        "dim": dim,
    }
    post = session.post if session is not None else requests.post
    try:
        response = post(url, json=body, timeout=timeout)
    except (requests.ConnectionError, requests.Timeout) as exc:
        raise TransportError(f"could not reach embedding provider at {url}: {exc}") from exc
    except requests.RequestException as exc:
        raise TransportError(f"embedding request to {url} failed: {exc}") from exc
    if not 200 <= response.status_code < 300:
        raise ProviderError(response.status_code, response.text)
    try:
        payload = response.json()
    except ValueError as exc:
        raise ProtocolError(f"provider returned non-JSON body: {exc}") from exc
    vector = payload.get("vector") if isinstance(payload, dict) else None
    if not isinstance(vector, list):
        raise ProtocolError('provider response is missing the "vector" list')
    if len(vector) != dim:
        raise ProtocolError(f"provider returned {len(vector)} values, expected dim={dim}")
    values = np.asarray(vector, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise ProtocolError("provider returned non-finite values")
    return values


class RemoteEmbedder:
    """HTTP client backend; one shared session for connection pooling."""

    def __init__(self, endpoint: str, dim: int = DEFAULT_DIM, timeout: float = 10.0):
        self._endpoint = endpoint
        self._dim = dim
        self._timeout = timeout
        self._session = requests.Session()
        self._id = EmbedderId(kind="remote", dim=dim, endpoint=endpoint)

    @property
    def embedder_id(self) -> EmbedderId:
        return self._id

    def embed(self, window: ContextWindow, key: CacheKey | None = None) -> np.ndarray:
        return fetch_remote_embedding(
            self._endpoint, window, self._dim, self._timeout, self._session
        )


def load_cached_embeddings(path: str) -> tuple[dict[CacheKey, np.ndarray], int]:
    """Load a precomputed embedding dump; returns (entries, dim).

    Format: UTF-8 text, first line ``#dim=<int>``, then one entry per
    line: ``record_id<TAB>mention_id<TAB>v1,v2,...`` with exactly dim
    comma-separated floats. Errors name the offending 1-based line.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CacheError(f"cannot read embedding cache {path!r}: {exc}") from exc
    if not lines or not lines[0].startswith("#dim="):
        raise CacheError('missing "#dim=<int>" header', line=1)
    try:
        dim = int(lines[0][len("#dim=") :])
    except ValueError:
        raise CacheError(f"malformed dim header {lines[0]!r}", line=1) from None
    if dim <= 0:
        raise CacheError(f"dim must be positive, got {dim}", line=1)

    entries: dict[CacheKey, np.ndarray] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise CacheError(f"expected 3 tab-separated columns, got {len(parts)}", line=lineno)
        record_id, mention_str, values_str = parts
        try:
            mention_id = int(mention_str)
        except ValueError:
            raise CacheError(f"mention_id {mention_str!r} is not an integer", line=lineno) from None
        if mention_id < 0:
            raise CacheError(f"mention_id must be >= 0, got {mention_id}", line=lineno)
        try:
            values = np.array([float(v) for v in values_str.split(",")], dtype=np.float64)
        except ValueError:
            raise CacheError("malformed float value", line=lineno) from None
        if values.size != dim:
            raise CacheError(f"expected {dim} values, got {values.size}", line=lineno)
        if not np.all(np.isfinite(values)):
            raise CacheError("non-finite value", line=lineno)
        key = (record_id, mention_id)
        if key in entries:
            raise CacheError(f"duplicate cache key {key!r}", line=lineno)
        entries[key] = values
    return entries, dim


def write_cached_embeddings(path: str, entries: dict[CacheKey, np.ndarray], dim: int) -> None:
    """Write a dump in the format ``load_cached_embeddings`` reads."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"#dim={dim}\n")
        for (record_id, mention_id), values in entries.items():
            joined = ",".join(repr(float(v)) for v in values)
            fh.write(f"{record_id}\t{mention_id}\t{joined}\n")


class CachedEmbedder:
    """Serves precomputed vectors; a miss is an error, never a fallback."""

    def __init__(self, entries: dict[CacheKey, np.ndarray], dim: int):
        self._entries = entries
        self._dim = dim
        self._id = EmbedderId(kind="cached", dim=dim)

    @classmethod
    def from_file(cls, path: str) -> CachedEmbedder:
        entries, dim = load_cached_embeddings(path)
        return cls(entries, dim)

    @property
    def embedder_id(self) -> EmbedderId:
        return self._id

    def embed(self, window: ContextWindow, key: CacheKey | None = None) -> np.ndarray:
        if key is None:
            raise CacheMissError(
                "cached embedder needs a (record_id, mention_id) key; "
                "free-form text without record ids cannot be served from a cache"
            )
        try:
            return self._entries[key]
        except KeyError:
            raise CacheMissError(f"no cached embedding for key {key!r}") from None
