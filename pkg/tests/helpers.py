"""Shared test utilities: window construction and independent oracles."""

from __future__ import annotations

from fincat.extraction import ContextWindow, Token


def window_of(words: list[str], numeral_pos: int, k: int = 6) -> ContextWindow:
    """Build a window from bare word surfaces (single-space layout)."""
    tokens = []
    offset = 0
    for i, word in enumerate(words):
        tokens.append(Token(word, offset, offset + len(word), i))
        offset += len(word) + 1
    return ContextWindow(words=tuple(tokens), numeral_pos=numeral_pos, k=k)


def reference_hashed_vector(
    words: list[str], numeral_pos: int, dim: int, seed: int
) -> list[float]:
    """Straight-line re-derivation of the hashed embedding, list-based.

    Deliberately shares no code with the library: plain Python floats,
    sorted feature iteration, and a `h < 2**63` sign test instead of a
    bit probe. Accumulated values are small integers, so every float op
    here is exact and the result must match the library bit for bit.
    """
    numeral = words[numeral_pos]
    features = {"N\x1f" + numeral}
    for pos, word in enumerate(words):
        if pos == numeral_pos:
            continue
        rel = pos - numeral_pos
        rel = -6 if rel < -6 else (6 if rel > 6 else rel)
        features.add("C\x1f" + word + "\x1f" + str(rel))
    padded = "^" + numeral + "$"
    for i in range(len(padded) - 2):
        features.add("G\x1f" + padded[i : i + 3])

    acc = [0.0] * dim
    for feature in sorted(features):
        h = 14695981039346656037
        for byte in seed.to_bytes(8, "big") + feature.encode("utf-8"):
            h = ((h ^ byte) * 1099511628211) % (1 << 64)
        acc[h % dim] += 1.0 if h < (1 << 63) else -1.0
    norm = sum(v * v for v in acc) ** 0.5
    if norm == 0.0:
        acc[0] = 1.0
        return acc
    return [v / norm for v in acc]
