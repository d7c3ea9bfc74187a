"""Loading and normalizing raw Bengali folklore text corpora."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FolkBanglaError
from .tokenization import TokenKind, basic_tokenize

_WS_RUN = re.compile(r"[ \t]+")
_SPACE_BEFORE_DANDA = re.compile(r" ([।॥])")


class CorpusLoadError(FolkBanglaError):
    """A corpus or stopword file could not be read or decoded."""


def normalize(text: str) -> str:
    """Canonicalize text: NFC, LF line endings, single spaces, `text।` danda.

    Idempotent; every downstream component assumes its input went through
    this function.
    """
    text = unicodedata.normalize("NFC", text)
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    text = _WS_RUN.sub(" ", text)
    text = _SPACE_BEFORE_DANDA.sub(r"\1", text)
    return text


@dataclass(frozen=True)
class Document:
    id: str
    raw_text: str
    normalized_text: str
    source_path: str


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    name: str = "corpus"

    def __post_init__(self) -> None:
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise CorpusLoadError(f"duplicate document ids in corpus {self.name!r}")

    @classmethod
    def from_texts(cls, texts: list[str] | tuple[str, ...], name: str = "corpus") -> "Corpus":
        docs = tuple(
            Document(f"doc{i}", raw, normalize(raw), "<memory>") for i, raw in enumerate(texts)
        )
        return cls(docs, name)


def load_corpus(paths: list[str | Path], name: str = "corpus") -> Corpus:
    """Load one Document per file, in input order, normalized on read."""
    docs = []
    seen: set[str] = set()
    for path in paths:
        p = Path(path)
        try:
            raw_bytes = p.read_bytes()
        except OSError as exc:
            raise CorpusLoadError(f"cannot read corpus file {p}: {exc}") from exc
        try:
            raw = raw_bytes.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusLoadError(
                f"invalid UTF-8 in {p} at byte offset {exc.start}"
            ) from exc
        doc_id = p.stem if p.stem and p.stem not in seen else str(p)
        if doc_id in seen:
            raise CorpusLoadError(f"duplicate corpus file {p}")
        seen.add(doc_id)
        docs.append(Document(doc_id, raw, normalize(raw), str(p)))
    return Corpus(tuple(docs), name)


def word_count(corpus: Corpus) -> int:
    """Number of Word-kind tokens over all documents (punctuation excluded)."""
    total = 0
    for doc in corpus.documents:
        total += sum(
            1 for tok in basic_tokenize(doc.normalized_text) if tok.kind is TokenKind.WORD
        )
    return total


@dataclass(frozen=True)
class StopwordList:
    words: frozenset[str] = field(default_factory=frozenset)

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_lines(cls, lines, source: str = "<memory>") -> "StopwordList":
        """One word per line; `#` starts a comment line; blanks ignored."""
        words = set()
        for raw in lines:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            words.add(normalize(line))
        return cls(frozenset(words))

    @classmethod
    def from_file(cls, path: str | Path) -> "StopwordList":
        p = Path(path)
        try:
            text = p.read_text("utf-8")
        except OSError as exc:
            raise CorpusLoadError(f"cannot read stopword file {p}: {exc}") from exc
        return cls.from_lines(text.splitlines(), source=str(p))

    @classmethod
    def default(cls) -> "StopwordList":
        from .data import data_text

        return cls.from_lines(data_text("stopwords_bn.txt").splitlines(), source="bundled")
