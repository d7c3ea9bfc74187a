"""Rule-based tokenizers and sentence segmentation for Bengali text.

Three levels are provided: whitespace tokenization (`basic_tokenize`),
whitespace plus edge-punctuation splitting (`punct_tokenize`), and danda-aware
sentence segmentation (`segment_sentences`). All offsets are byte offsets into
the UTF-8 encoding of the input, so tokens can be sliced out of the raw bytes
of a file without re-decoding.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass

DANDA = "।"
DOUBLE_DANDA = "॥"

# Bengali punctuation inventory used for splitting; configurable because the
# right set is genre-dependent.
DEFAULT_PUNCTS = frozenset(
    [DANDA, DOUBLE_DANDA, "?", "!", ",", ";", ":", '"', "'", "(", ")", "-", "—", "…", "."]
)

# Unconditional sentence terminators. ASCII "." terminates only before
# whitespace or end of text, so abbreviations do not split.
SENTENCE_TERMINATORS = frozenset([DANDA, DOUBLE_DANDA, "?", "!"])


class TokenKind(enum.Enum):
    WORD = "Word"
    PUNCT = "Punct"
    NUMBER = "Number"
    OTHER = "Other"


@dataclass(frozen=True)
class Token:
    """A surface string with byte offsets [start, end) into the source text."""

    surface: str
    start: int
    end: int
    kind: TokenKind


@dataclass(frozen=True)
class SentenceSpan:
    """Byte range of one sentence; `index` is the 0-based sentence number."""

    start: int
    end: int
    index: int


def byte_slice(text: str, start: int, end: int) -> str:
    """Slice `text` by UTF-8 byte offsets."""
    return text.encode("utf-8")[start:end].decode("utf-8")


def _byte_offsets(text: str) -> list[int]:
    """Prefix byte offsets: offs[i] is the byte position of code point i."""
    offs = [0]
    for ch in text:
        offs.append(offs[-1] + len(ch.encode("utf-8")))
    return offs


def _is_punct_cp(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _classify(surface: str) -> TokenKind:
    if all(_is_punct_cp(ch) for ch in surface):
        return TokenKind.PUNCT
    core = [ch for ch in surface if not _is_punct_cp(ch)]
    if core and all(unicodedata.category(ch) == "Nd" for ch in core):
        return TokenKind.NUMBER
    if any(unicodedata.category(ch).startswith("L") for ch in surface):
        return TokenKind.WORD
    return TokenKind.OTHER


def basic_tokenize(text: str) -> list[Token]:
    """Split on Unicode whitespace only; punctuation stays attached."""
    tokens: list[Token] = []
    buf: list[str] = []
    bpos = 0
    start = 0
    for ch in text:
        blen = len(ch.encode("utf-8"))
        if ch.isspace():
            if buf:
                surface = "".join(buf)
                tokens.append(Token(surface, start, bpos, _classify(surface)))
                buf = []
        else:
            if not buf:
                start = bpos
            buf.append(ch)
        bpos += blen
    if buf:
        surface = "".join(buf)
        tokens.append(Token(surface, start, bpos, _classify(surface)))
    return tokens


def punct_tokenize(text: str, puncts: frozenset[str] = DEFAULT_PUNCTS) -> list[Token]:
    """Like basic_tokenize, but leading/trailing punctuation code points from
    `puncts` become their own Punct tokens.

    Interior punctuation (hyphenated forms and the like) stays inside the word
    token, which keeps Word tokens in one-to-one correspondence with
    edge-stripped basic tokens.
    """
    out: list[Token] = []
    for tok in basic_tokenize(text):
        s = tok.surface
        offs = _byte_offsets(s)
        n = len(s)
        lead = 0
        while lead < n and s[lead] in puncts:
            lead += 1
        trail = n
        while trail > lead and s[trail - 1] in puncts:
            trail -= 1
        for i in range(lead):
            out.append(Token(s[i], tok.start + offs[i], tok.start + offs[i + 1], TokenKind.PUNCT))
        if trail > lead:
            core = s[lead:trail]
            out.append(
                Token(core, tok.start + offs[lead], tok.start + offs[trail], _classify(core))
            )
        for i in range(trail, n):
            out.append(Token(s[i], tok.start + offs[i], tok.start + offs[i + 1], TokenKind.PUNCT))
    return out


def segment_sentences(text: str) -> list[SentenceSpan]:
    """Split into sentences ending at danda, double danda, '?', or '!'.

    The terminator (and any directly following run of terminators) is part of
    the span. A trailing terminator-less fragment forms the last sentence.
    """
    if not text:
        return []
    offs = _byte_offsets(text)
    n = len(text)
    spans: list[SentenceSpan] = []
    i = 0
    while i < n:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            break
        start = i
        last_nonspace = i
        end = None
        j = i
        while j < n:
            ch = text[j]
            if not ch.isspace():
                last_nonspace = j
            if ch in SENTENCE_TERMINATORS or (
                ch == "." and (j + 1 == n or text[j + 1].isspace())
            ):
                j += 1
                while j < n and (text[j] in SENTENCE_TERMINATORS or text[j] == "."):
                    j += 1
                end = j
                break
            j += 1
        if end is None:
            end = last_nonspace + 1
        spans.append(SentenceSpan(offs[start], offs[end], len(spans)))
        i = end
    return spans
