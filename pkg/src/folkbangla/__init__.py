"""FolkBangla: NLP toolkit for Bengali folklore texts.

Rule-based Bengali tokenization, BPE subword models, skip-gram word and
character-n-gram embeddings trained from scratch, Propp-style folk character
role assignment, word-frequency extractive summarization, and a
precision/recall/F1 evaluation harness.
"""

__version__ = "0.1.0"

from .corpus import Corpus, Document, StopwordList, load_corpus, normalize, word_count
from .tokenization import (
    SentenceSpan,
    Token,
    TokenKind,
    basic_tokenize,
    punct_tokenize,
    segment_sentences,
)

__all__ = [
    "Corpus",
    "Document",
    "StopwordList",
    "load_corpus",
    "normalize",
    "word_count",
    "Token",
    "TokenKind",
    "SentenceSpan",
    "basic_tokenize",
    "punct_tokenize",
    "segment_sentences",
    "__version__",
]
