"""Extractive summarization by normalized word frequency.

The five-step procedure: strip special characters, tokenize, drop stopwords
and count word frequency, score sentences by their words' normalized
frequencies, and join the top sentences back into a single paragraph in
original order.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .corpus import StopwordList, normalize
from .tokenization import (
    SENTENCE_TERMINATORS,
    TokenKind,
    byte_slice,
    punct_tokenize,
    segment_sentences,
)


def _keep_char(ch: str) -> bool:
    if ch.isspace() or ch in SENTENCE_TERMINATORS:
        return True
    cp = ord(ch)
    if 0x0980 <= cp <= 0x09FF:  # Bengali block
        return True
    return ("a" <= ch <= "z") or ("A" <= ch <= "Z") or ("0" <= ch <= "9")


def strip_special(text: str) -> str:
    """Remove everything that is not Bengali, ASCII alphanumeric, whitespace,
    or a sentence terminator; whitespace runs collapse afterwards."""
    kept = "".join(ch for ch in text if _keep_char(ch))
    return normalize(kept).strip()


@dataclass(frozen=True)
class SentenceScore:
    sentence_index: int
    score: float


@dataclass(frozen=True)
class Summary:
    selected: tuple[int, ...]
    text: str


def clean_sentences(text: str) -> list[str]:
    """Sentence surfaces of the stripped, normalized text."""
    cleaned = strip_special(normalize(text))
    return [byte_slice(cleaned, s.start, s.end) for s in segment_sentences(cleaned)]


def _prepare(text: str, stopwords: StopwordList):
    cleaned = strip_special(normalize(text))
    spans = segment_sentences(cleaned)
    sentences = [byte_slice(cleaned, s.start, s.end) for s in spans]
    kept_words = [
        [
            tok.surface
            for tok in punct_tokenize(sent)
            if tok.kind is TokenKind.WORD and tok.surface not in stopwords
        ]
        for sent in sentences
    ]
    return sentences, kept_words


def score_sentences(text: str, stopwords: StopwordList) -> list[SentenceScore]:
    """Score each sentence by the sum of its non-stopword words' normalized
    frequencies n(w) = f(w) / max f."""
    _, kept_words = _prepare(text, stopwords)
    freq: Counter = Counter(w for words in kept_words for w in words)
    top = max(freq.values()) if freq else 0
    scores = []
    for idx, words in enumerate(kept_words):
        score = sum(freq[w] / top for w in words) if top else 0.0
        scores.append(SentenceScore(idx, score))
    return scores


def summarize(
    text: str,
    stopwords: StopwordList,
    k: int | None = None,
    ratio: float = 0.3,
) -> Summary:
    """Select the k highest-scoring sentences (ties favor earlier sentences),
    restore original order, and join them into one paragraph.

    When k is omitted, ceil(ratio * sentence_count) sentences are kept.
    """
    sentences, kept_words = _prepare(text, stopwords)
    n = len(sentences)
    if n == 0:
        return Summary((), "")
    if k is None:
        k = max(1, math.ceil(ratio * n))
    if k < 1:
        raise ValueError(f"summary length k must be >= 1, got {k}")
    freq: Counter = Counter(w for words in kept_words for w in words)
    top = max(freq.values()) if freq else 0
    scores = [
        sum(freq[w] / top for w in words) if top else 0.0 for words in kept_words
    ]
    ranked = sorted(range(n), key=lambda i: (-scores[i], i))[: min(k, n)]
    selected = tuple(sorted(ranked))
    return Summary(selected, " ".join(sentences[i] for i in selected))
