"""Sentencepiece-style subword model: deterministic BPE training and coding.

Training runs byte-pair-encoding over whitespace-pretokenized words, each
word closed by an end-of-word marker symbol. Merges are picked by highest
pair frequency with lexicographic tie-breaking, so the whole procedure is
reproducible bit for bit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus
from .errors import FolkBanglaError

MARKER = "▁"  # end-of-word marker appended to every word
UNK_GLYPH = "⁇"  # rendered for UNK ids when decoding: ⁇

UNK_PIECE = "<unk>"
BOS_PIECE = "<s>"
EOS_PIECE = "</s>"

FORMAT_HEADER = "folkbangla-bpe v1"


class SubwordTrainingError(FolkBanglaError):
    pass


class SubwordConfigError(FolkBanglaError):
    pass


class SubwordFormatError(FolkBanglaError):
    """Model file is malformed; message carries the 1-based line number."""


class SubwordDecodeError(FolkBanglaError):
    pass


@dataclass(frozen=True)
class PieceSequence:
    """Encoded piece ids plus the byte span each piece covers in the source."""

    ids: tuple[int, ...]
    spans: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.ids)


@dataclass
class SubwordModel:
    pieces: dict[str, int]
    merges: list[tuple[str, str]]
    specials: dict[str, int]
    alphabet: frozenset[str]
    _id_to_piece: list[str] = field(init=False, repr=False, compare=False)
    _word_cache: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        self._id_to_piece = [""] * len(self.pieces)
        for piece, pid in self.pieces.items():
            self._id_to_piece[pid] = piece

    @property
    def unk_id(self) -> int:
        return self.specials["unk"]

    @property
    def base_size(self) -> int:
        """Pieces present before any merge: specials, marker, alphabet."""
        return len(self.specials) + 1 + len(self.alphabet)

    def piece_for_id(self, pid: int) -> str:
        return self._id_to_piece[pid]


def _word_counts(corpus: Corpus) -> Counter:
    counts: Counter = Counter()
    for doc in corpus.documents:
        for word in doc.normalized_text.split():
            word = word.replace(MARKER, "")
            if word:
                counts[word] += 1
    return counts


def _merge_sequence(seq: tuple, left: str, right: str) -> tuple:
    """Replace adjacent (left, right) left-to-right with the joined symbol."""
    out = []
    i = 0
    n = len(seq)
    while i < n:
        if i + 1 < n and seq[i] == left and seq[i + 1] == right:
            out.append(left + right)
            i += 2
        else:
            out.append(seq[i])
            i += 1
    return tuple(out)


def train_subword(corpus: Corpus, vocab_size: int = 500) -> SubwordModel:
    """Learn a BPE model; stops at `vocab_size` pieces or when no pair occurs
    at least twice."""
    words = _word_counts(corpus)
    if not words:
        raise SubwordTrainingError("cannot train a subword model on an empty corpus")
    alphabet = sorted({ch for w in words for ch in w})
    specials = {"unk": 0, "bos": 1, "eos": 2}
    pieces: dict[str, int] = {UNK_PIECE: 0, BOS_PIECE: 1, EOS_PIECE: 2, MARKER: 3}
    for ch in alphabet:
        pieces[ch] = len(pieces)
    if vocab_size < len(pieces):
        raise SubwordConfigError(
            f"vocab_size {vocab_size} is smaller than the base inventory of "
            f"{len(pieces)} pieces (specials + marker + {len(alphabet)} characters)"
        )

    seqs = {w: tuple(w) + (MARKER,) for w in words}
    merges: list[tuple[str, str]] = []
    while len(pieces) < vocab_size:
        pair_counts: Counter = Counter()
        for w, cnt in words.items():
            seq = seqs[w]
            for a, b in zip(seq, seq[1:]):
                pair_counts[(a, b)] += cnt
        eligible = [(pair, cnt) for pair, cnt in pair_counts.items() if cnt >= 2]
        if not eligible:
            break
        top = max(cnt for _, cnt in eligible)
        best = min(pair for pair, cnt in eligible if cnt == top)
        merges.append(best)
        left, right = best
        for w, seq in seqs.items():
            if left in seq and right in seq:
                seqs[w] = _merge_sequence(seq, left, right)
        joined = left + right
        if joined not in pieces:
            pieces[joined] = len(pieces)
    return SubwordModel(pieces, merges, specials, frozenset(alphabet))


def _encode_word(model: SubwordModel, word: str) -> list[tuple[str | None, int, int]]:
    """Symbols for one word with char spans; None marks an out-of-alphabet char.
    The result is cached per word type; spans are code-point offsets."""
    cached = model._word_cache.get(word)
    if cached is not None:
        return cached
    seq: list[tuple[str | None, int, int]] = [
        (ch if ch in model.alphabet else None, i, i + 1) for i, ch in enumerate(word)
    ]
    seq.append((MARKER, len(word), len(word)))
    for left, right in model.merges:
        i = 0
        out: list[tuple[str | None, int, int]] = []
        n = len(seq)
        while i < n:
            if i + 1 < n and seq[i][0] == left and seq[i + 1][0] == right:
                out.append((left + right, seq[i][1], seq[i + 1][2]))
                i += 2
            else:
                out.append(seq[i])
                i += 1
        seq = out
    model._word_cache[word] = seq
    return seq


def encode(model: SubwordModel, text: str) -> PieceSequence:
    """Encode text into piece ids; characters outside the alphabet become UNK."""
    ids: list[int] = []
    spans: list[tuple[int, int]] = []
    bpos = 0
    word_chars: list[str] = []
    char_offs: list[int] = []

    def flush(end_byte: int) -> None:
        if not word_chars:
            return
        word = "".join(word_chars)
        offs = char_offs + [end_byte]
        for sym, cs, ce in _encode_word(model, word):
            if sym is None:
                ids.append(model.unk_id)
            else:
                ids.append(model.pieces[sym])
            spans.append((offs[cs], offs[ce]))
        word_chars.clear()
        char_offs.clear()

    for ch in text:
        blen = len(ch.encode("utf-8"))
        if ch.isspace():
            flush(bpos)
        else:
            word_chars.append(ch)
            char_offs.append(bpos)
        bpos += blen
    flush(bpos)
    return PieceSequence(tuple(ids), tuple(spans))


def decode(model: SubwordModel, ids) -> str:
    """Concatenate pieces and turn end-of-word markers back into spaces."""
    if isinstance(ids, PieceSequence):
        ids = ids.ids
    parts: list[str] = []
    npieces = len(model.pieces)
    skip = {model.specials["bos"], model.specials["eos"]}
    for pid in ids:
        if not 0 <= pid < npieces:
            raise SubwordDecodeError(f"piece id {pid} out of range 0..{npieces - 1}")
        if pid == model.unk_id:
            parts.append(UNK_GLYPH)
        elif pid in skip:
            continue
        else:
            parts.append(model.piece_for_id(pid))
    words = "".join(parts).split(MARKER)
    if words and words[-1] == "":
        words = words[:-1]
    return " ".join(words)


def save_model(model: SubwordModel, path: str | Path) -> None:
    lines = [FORMAT_HEADER, "#pieces"]
    for pid, piece in enumerate(model._id_to_piece):
        lines.append(f"{pid}\t{piece}")
    lines.append("#merges")
    for left, right in model.merges:
        lines.append(f"{left}\t{right}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> SubwordModel:
    try:
        raw = Path(path).read_text("utf-8")
    except OSError as exc:
        raise SubwordFormatError(f"cannot read model file {path}: {exc}") from exc
    lines = raw.splitlines()
    if not lines or lines[0] != FORMAT_HEADER:
        raise SubwordFormatError(f"{path}: line 1: expected header {FORMAT_HEADER!r}")
    if len(lines) < 2 or lines[1] != "#pieces":
        raise SubwordFormatError(f"{path}: line 2: expected '#pieces' section")
    pieces: dict[str, int] = {}
    merges: list[tuple[str, str]] = []
    section = "pieces"
    for lineno, line in enumerate(lines[2:], start=3):
        if line == "#merges":
            section = "merges"
            continue
        if not line:
            continue
        cells = line.split("\t")
        if section == "pieces":
            if len(cells) != 2:
                raise SubwordFormatError(f"{path}: line {lineno}: expected 'id<TAB>piece'")
            try:
                pid = int(cells[0])
            except ValueError:
                raise SubwordFormatError(
                    f"{path}: line {lineno}: piece id {cells[0]!r} is not an integer"
                ) from None
            if pid != len(pieces):
                raise SubwordFormatError(
                    f"{path}: line {lineno}: piece ids must be dense, got {pid}"
                )
            pieces[cells[1]] = pid
        else:
            if len(cells) != 2:
                raise SubwordFormatError(f"{path}: line {lineno}: expected 'left<TAB>right'")
            merges.append((cells[0], cells[1]))
    if section != "merges":
        raise SubwordFormatError(f"{path}: missing '#merges' section (truncated file?)")
    for name, pid in ((UNK_PIECE, 0), (BOS_PIECE, 1), (EOS_PIECE, 2), (MARKER, 3)):
        if pieces.get(name) != pid:
            raise SubwordFormatError(f"{path}: reserved piece {name!r} must have id {pid}")
    alphabet = frozenset(p for p in pieces if len(p) == 1 and p != MARKER)
    return SubwordModel(pieces, merges, {"unk": 0, "bos": 1, "eos": 2}, alphabet)
