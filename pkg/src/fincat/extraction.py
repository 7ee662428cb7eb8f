"""Whitespace tokenization, numeral detection, and context windowing.

A "word" is a maximal run of non-whitespace characters; punctuation stays
attached, so "$4.5" and "12%," are single words. A word is a numeral when
its surface holds at least one decimal digit. The context window around a
numeral is the numeral plus up to ``k`` words on each side, truncated
silently at the text boundaries.

Everything here is a pure function over immutable values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_WORD_RE = re.compile(r"\S+")

DEFAULT_WINDOW_HALF_WIDTH = 6


@dataclass(frozen=True)
class Token:
    """One whitespace-delimited word with its exact character span.

    ``char_end`` is exclusive: ``text[char_start:char_end] == surface``.
    """

    surface: str
    char_start: int
    char_end: int
    word_index: int


@dataclass(frozen=True)
class NumeralMention:
    """A digit-bearing token; ``mention_id`` is 0-based in char_start order."""

    token: Token
    mention_id: int


@dataclass(frozen=True)
class ContextWindow:
    """The target numeral plus up to ``k`` words on each side.

    ``words[numeral_pos]`` is the target's token; the words are contiguous
    in ``word_index``.
    """

    words: tuple[Token, ...]
    numeral_pos: int
    k: int


def tokenize(text: str) -> list[Token]:
    """Split text into maximal non-whitespace runs with exact char spans.

    Total: empty or all-whitespace input yields an empty list.
    """
    return [
        Token(m.group(), m.start(), m.end(), i)
        for i, m in enumerate(_WORD_RE.finditer(text))
    ]


def _has_digit(surface: str, ascii_only: bool) -> bool:
    if ascii_only:
        return any("0" <= ch <= "9" for ch in surface)
    # str.isdecimal is True exactly for Unicode general category Nd.
    return any(ch.isdecimal() for ch in surface)


def find_numerals(tokens: list[Token], ascii_only: bool = False) -> list[NumeralMention]:
    """Return every token containing a decimal digit, in text order.

    Each occurrence counts separately; mention ids are consecutive from 0.
    ``ascii_only`` restricts the digit test to 0-9 (default also accepts
    other Unicode decimal digits such as full-width forms).
    """
    return [
        NumeralMention(token, mention_id)
        for mention_id, token in enumerate(
            t for t in tokens if _has_digit(t.surface, ascii_only)
        )
    ]


def context_window(
    tokens: list[Token],
    mention: NumeralMention,
    k: int = DEFAULT_WINDOW_HALF_WIDTH,
) -> ContextWindow:
    """Cut the window of up to ``k`` words on each side of the mention.

    Truncates silently at text boundaries, so the window holds
    ``min(k, available)`` words per side. Raises ValueError when the
    mention's token is not found in ``tokens`` or ``k`` is negative.
    """
    if k < 0:
        raise ValueError(f"window half-width must be >= 0, got {k}")
    idx = mention.token.word_index
    if idx >= len(tokens) or tokens[idx] != mention.token:
        raise ValueError(f"mention token {mention.token!r} not found in tokens")
    lo = max(0, idx - k)
    hi = min(len(tokens), idx + k + 1)
    return ContextWindow(words=tuple(tokens[lo:hi]), numeral_pos=idx - lo, k=k)
