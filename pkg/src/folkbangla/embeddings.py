"""Skip-gram embeddings with negative sampling, trained from scratch.

Two model flavors share one SGD engine: plain word vectors (word2vec style)
and subword-composed vectors where a word is represented by the mean of its
word vector and hashed character 3-6 gram bucket vectors (fasttext style).
Training is single-threaded and fully deterministic for a fixed seed; an
optional multi-worker mode trades reproducibility for speed by letting
threads update rows without locks.
"""

from __future__ import annotations

import enum
import math
import threading
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Corpus
from .errors import FolkBanglaError
from .tokenization import TokenKind, byte_slice, punct_tokenize, segment_sentences

NGRAM_MIN = 3
NGRAM_MAX = 6
NOISE_POWER = 0.75


class TrainingError(FolkBanglaError):
    pass


class VectorFormatError(FolkBanglaError):
    """Vector text file is malformed; message carries the 1-based line number."""


class ZeroVectorError(FolkBanglaError):
    """Cosine similarity is undefined for a zero vector."""


class EmbeddingKind(enum.Enum):
    SKIPGRAM_WORD = "word2vec"
    SKIPGRAM_SUBWORD = "fasttext"


@dataclass
class Vocabulary:
    word_to_id: dict[str, int]
    id_to_word: list[str]
    counts: np.ndarray
    min_count: int

    def __len__(self) -> int:
        return len(self.id_to_word)

    def __contains__(self, word: str) -> bool:
        return word in self.word_to_id

    @classmethod
    def from_counter(cls, counter: Counter, min_count: int) -> "Vocabulary":
        # sorted by descending count; stable sort keeps first-occurrence order
        # for ties because Counter preserves insertion order
        kept = [(w, c) for w, c in counter.items() if c >= min_count]
        kept.sort(key=lambda wc: -wc[1])
        if not kept:
            raise TrainingError(
                f"no word occurs at least {min_count} times; lower min_count"
            )
        word_to_id = {w: i for i, (w, _) in enumerate(kept)}
        return cls(
            word_to_id,
            [w for w, _ in kept],
            np.array([c for _, c in kept], dtype=np.int64),
            min_count,
        )


def build_vocab(corpus: Corpus, min_count: int = 10) -> Vocabulary:
    """Count Word-kind tokens (punct_tokenize) and keep those with
    count >= min_count."""
    counter: Counter = Counter()
    for doc in corpus.documents:
        for tok in punct_tokenize(doc.normalized_text):
            if tok.kind is TokenKind.WORD:
                counter[tok.surface] += 1
    return Vocabulary.from_counter(counter, min_count)


@dataclass
class TrainConfig:
    dim: int = 200
    window: int = 3
    min_count: int = 10
    negatives: int = 5
    initial_lr: float = 0.025
    min_lr: float = 1e-4
    epochs: int = 5
    steps: int | None = None  # total center-word SGD steps; overrides epochs
    seed: int = 42
    model: EmbeddingKind = EmbeddingKind.SKIPGRAM_WORD
    buckets: int = 2**18
    workers: int = 1

    def validate(self) -> None:
        if self.dim <= 0:
            raise TrainingError(f"dim must be > 0, got {self.dim}")
        if self.window < 1:
            raise TrainingError(f"window must be >= 1, got {self.window}")
        if self.negatives < 1:
            raise TrainingError(f"negatives must be >= 1, got {self.negatives}")
        if self.epochs < 1:
            raise TrainingError(f"epochs must be >= 1, got {self.epochs}")
        if self.steps is not None and self.steps < 1:
            raise TrainingError(f"steps must be >= 1, got {self.steps}")
        if self.buckets < 1:
            raise TrainingError(f"buckets must be >= 1, got {self.buckets}")


@dataclass
class EmbeddingMatrix:
    vocab: Vocabulary
    input_vectors: np.ndarray
    output_vectors: np.ndarray
    losses: list[float] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.input_vectors.shape[1]

    def vector(self, word: str) -> np.ndarray:
        wid = self.vocab.word_to_id.get(word)
        if wid is None:
            raise LookupError(f"word {word!r} is not in the vocabulary")
        return self.input_vectors[wid]


@dataclass
class SubwordEmbeddingModel:
    vocab: Vocabulary
    word_vectors: np.ndarray
    bucket_vectors: np.ndarray
    output_vectors: np.ndarray
    buckets: int
    ngram_range: tuple[int, int] = (NGRAM_MIN, NGRAM_MAX)
    losses: list[float] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.word_vectors.shape[1]

    def ngram_ids(self, word: str) -> np.ndarray:
        return hashed_ngrams(word, self.buckets, *self.ngram_range)

    def vector(self, word: str) -> np.ndarray:
        """Composed vector; out-of-vocabulary words use n-gram buckets only."""
        if not word:
            raise LookupError("cannot build a vector for the empty string")
        gids = self.ngram_ids(word)
        wid = self.vocab.word_to_id.get(word)
        if wid is None:
            return self.bucket_vectors[gids].mean(axis=0)
        rows = self.bucket_vectors[gids].sum(axis=0) + self.word_vectors[wid]
        return rows / (1 + len(gids))

    @property
    def input_vectors(self) -> np.ndarray:
        """Composed vectors for every in-vocabulary word."""
        out = np.empty_like(self.word_vectors)
        for wid, word in enumerate(self.vocab.id_to_word):
            gids = self.ngram_ids(word)
            out[wid] = (self.bucket_vectors[gids].sum(axis=0) + self.word_vectors[wid]) / (
                1 + len(gids)
            )
        return out


def fnv1a_32(data: bytes) -> int:
    h = 2166136261
    for byte in data:
        h ^= byte
        h = (h * 16777619) & 0xFFFFFFFF
    return h


def hashed_ngrams(word: str, buckets: int, nmin: int = NGRAM_MIN, nmax: int = NGRAM_MAX) -> np.ndarray:
    """Bucket ids of the character n-grams of '<word>'; stable across runs."""
    wrapped = f"<{word}>"
    ids = []
    L = len(wrapped)
    for n in range(nmin, nmax + 1):
        for i in range(L - n + 1):
            ids.append(fnv1a_32(wrapped[i : i + n].encode("utf-8")) % buckets)
    if not ids:  # wrapped length is always >= 3, so only nmin > L lands here
        ids.append(fnv1a_32(wrapped.encode("utf-8")) % buckets)
    return np.array(ids, dtype=np.int64)


class NegativeSampler:
    """Draws noise words from the unigram distribution raised to 0.75."""

    def __init__(self, counts: np.ndarray, power: float = NOISE_POWER):
        weights = counts.astype(np.float64) ** power
        self.probabilities = weights / weights.sum()
        self._cdf = np.cumsum(self.probabilities)

    def draw(self, rng: np.random.Generator, k: int) -> np.ndarray:
        r = rng.random(k)
        idx = np.searchsorted(self._cdf, r, side="right")
        return np.minimum(idx, len(self._cdf) - 1)


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def pair_loss_and_grads(center_vec, context_vec, negative_vecs):
    """Loss and analytic gradients of one negative-sampling pair.

    L = -log sigma(u_o . v_c) - sum_n log sigma(-u_n . v_c)
    Returns (loss, grad_center, grad_context, grad_negatives); dtypes follow
    the inputs.
    """
    z_pos = context_vec @ center_vec
    z_neg = negative_vecs @ center_vec
    loss = float(np.logaddexp(0.0, -z_pos) + np.logaddexp(0.0, z_neg).sum())
    s_pos = _sigmoid(z_pos)
    s_neg = _sigmoid(z_neg)
    grad_context = (s_pos - 1.0) * center_vec
    grad_negatives = s_neg[:, None] * center_vec[None, :]
    grad_center = (s_pos - 1.0) * context_vec + s_neg @ negative_vecs
    return loss, grad_center, grad_context, grad_negatives


def _sentence_ids(corpus: Corpus, vocab: Vocabulary) -> list[np.ndarray]:
    sentences = []
    for doc in corpus.documents:
        text = doc.normalized_text
        for span in segment_sentences(text):
            sent = byte_slice(text, span.start, span.end)
            ids = [
                vocab.word_to_id[t.surface]
                for t in punct_tokenize(sent)
                if t.kind is TokenKind.WORD and t.surface in vocab.word_to_id
            ]
            if ids:
                sentences.append(np.array(ids, dtype=np.int64))
    return sentences


class _Engine:
    """Shared SGD loop; `subword_buckets` switches the center representation
    from a plain word row to the mean of word + n-gram bucket rows."""

    def __init__(self, vocab, sentences, config, subword_buckets=None):
        self.vocab = vocab
        self.sentences = sentences
        self.config = config
        self.rng = np.random.default_rng(config.seed)
        v, dim = len(vocab), config.dim
        self.w_in = ((self.rng.random((v, dim)) - 0.5) / dim).astype(np.float32)
        self.w_buckets = None
        self.ngram_ids: list[np.ndarray] | None = None
        if subword_buckets is not None:
            self.w_buckets = (
                (self.rng.random((subword_buckets, dim)) - 0.5) / dim
            ).astype(np.float32)
            self.ngram_ids = [
                hashed_ngrams(w, subword_buckets) for w in vocab.id_to_word
            ]
        self.w_out = np.zeros((v, dim), dtype=np.float32)
        self.sampler = NegativeSampler(vocab.counts)
        self.centers_per_epoch = sum(len(s) for s in sentences)
        self.epoch = 0
        if self.centers_per_epoch == 0:
            raise TrainingError("corpus has no in-vocabulary tokens to train on")

    def _center_step(self, sent, t, lr, rng):
        cfg = self.config
        center = int(sent[t])
        if self.w_buckets is None:
            rep = self.w_in[center]
        else:
            gids = self.ngram_ids[center]
            nrows = 1 + len(gids)
            rep = (self.w_in[center] + self.w_buckets[gids].sum(axis=0)) / nrows
        b = int(rng.integers(1, cfg.window + 1))
        lo, hi = max(0, t - b), min(len(sent), t + b + 1)
        loss_sum, pairs = 0.0, 0
        for j in range(lo, hi):
            if j == t:
                continue
            ctx = int(sent[j])
            negs = self.sampler.draw(rng, cfg.negatives)
            negs = negs[negs != ctx]
            loss, g_c, g_o, g_n = pair_loss_and_grads(rep, self.w_out[ctx], self.w_out[negs])
            if not math.isfinite(loss):
                raise TrainingError(
                    f"non-finite loss (epoch={self.epoch}, lr={lr:.6g}, pair=({center},{ctx}))"
                )
            if self.w_buckets is None:
                self.w_in[center] -= lr * g_c
            else:
                share = (lr / nrows) * g_c
                self.w_in[center] -= share
                np.subtract.at(self.w_buckets, gids, share)
                rep = (self.w_in[center] + self.w_buckets[gids].sum(axis=0)) / nrows
            self.w_out[ctx] -= lr * g_o
            np.subtract.at(self.w_out, negs, lr * g_n)
            loss_sum += loss
            pairs += 1
        return loss_sum, pairs

    def run(self) -> list[float]:
        cfg = self.config
        if cfg.workers > 1:
            return self._run_parallel()
        total = cfg.steps if cfg.steps is not None else cfg.epochs * self.centers_per_epoch
        losses: list[float] = []
        done = 0
        cur_loss, cur_pairs, cur_centers = 0.0, 0, 0
        while done < total:
            for sent in self.sentences:
                for t in range(len(sent)):
                    if done >= total:
                        break
                    lr = max(cfg.min_lr, cfg.initial_lr * (1.0 - done / total))
                    step_loss, step_pairs = self._center_step(sent, t, lr, self.rng)
                    cur_loss += step_loss
                    cur_pairs += step_pairs
                    done += 1
                    cur_centers += 1
                    if cur_centers == self.centers_per_epoch:
                        losses.append(cur_loss / max(1, cur_pairs))
                        cur_loss, cur_pairs, cur_centers = 0.0, 0, 0
                        self.epoch += 1
                if done >= total:
                    break
        if cur_centers:
            losses.append(cur_loss / max(1, cur_pairs))
        return losses

    def _run_parallel(self):
        # Lock-free row updates: races between workers are accepted, so the
        # result is not bitwise reproducible. Loss is still tracked per epoch.
        cfg = self.config
        chunks = [self.sentences[i :: cfg.workers] for i in range(cfg.workers)]
        losses = []
        for epoch in range(cfg.epochs):
            self.epoch = epoch
            lr = max(cfg.min_lr, cfg.initial_lr * (1.0 - epoch / cfg.epochs))
            results = [None] * cfg.workers

            def work(widx):
                rng = np.random.default_rng((cfg.seed, epoch, widx))
                total_loss, total_pairs = 0.0, 0
                for sent in chunks[widx]:
                    for t in range(len(sent)):
                        step_loss, step_pairs = self._center_step(sent, t, lr, rng)
                        total_loss += step_loss
                        total_pairs += step_pairs
                results[widx] = (total_loss, total_pairs)

            threads = [threading.Thread(target=work, args=(i,)) for i in range(cfg.workers)]
            for th in threads:
                th.start()
            for th in threads:
                th.join()
            loss = sum(r[0] for r in results) / max(1, sum(r[1] for r in results))
            losses.append(loss)
        return losses


def train_skipgram(corpus: Corpus, config: TrainConfig | None = None) -> EmbeddingMatrix:
    """Train plain skip-gram word vectors with negative sampling."""
    config = config or TrainConfig()
    config.validate()
    vocab = build_vocab(corpus, config.min_count)
    engine = _Engine(vocab, _sentence_ids(corpus, vocab), config)
    losses = engine.run()
    matrix = EmbeddingMatrix(vocab, engine.w_in, engine.w_out, losses)
    if not (np.isfinite(matrix.input_vectors).all() and np.isfinite(matrix.output_vectors).all()):
        raise TrainingError("training produced non-finite vectors")
    return matrix


def default_fasttext_config() -> TrainConfig:
    """Default subword training config: 100 epochs, otherwise shared defaults."""
    return TrainConfig(epochs=100, model=EmbeddingKind.SKIPGRAM_SUBWORD)


def train_fasttext(corpus: Corpus, config: TrainConfig | None = None) -> SubwordEmbeddingModel:
    """Train subword-composed skip-gram vectors (100 epochs by default)."""
    if config is None:
        config = default_fasttext_config()
    config.validate()
    vocab = build_vocab(corpus, config.min_count)
    engine = _Engine(vocab, _sentence_ids(corpus, vocab), config, subword_buckets=config.buckets)
    losses = engine.run()
    model = SubwordEmbeddingModel(
        vocab, engine.w_in, engine.w_buckets, engine.w_out, config.buckets, losses=losses
    )
    if not (np.isfinite(model.word_vectors).all() and np.isfinite(model.bucket_vectors).all()):
        raise TrainingError("training produced non-finite vectors")
    return model


def cosine(u, v) -> float:
    """Cosine similarity in float64, clamped to [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ZeroVectorError("cosine similarity is undefined for a zero vector")
    return min(1.0, max(-1.0, float(np.dot(u, v) / (nu * nv))))


def nearest_neighbors(model, word: str, k: int) -> list[tuple[str, float]]:
    """Top-k vocabulary words by cosine over input vectors, excluding the
    query; ties break by ascending word id."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    query = np.asarray(model.vector(word), dtype=np.float64)
    vectors = model.input_vectors
    vocab = model.vocab
    sims = []
    for wid, candidate in enumerate(vocab.id_to_word):
        if candidate == word:
            continue
        row = np.asarray(vectors[wid], dtype=np.float64)
        if not row.any():
            continue
        sims.append((wid, cosine(query, row)))
    sims.sort(key=lambda ws: (-ws[1], ws[0]))
    return [(vocab.id_to_word[wid], sim) for wid, sim in sims[:k]]


def save_text_format(model, path: str | Path) -> None:
    """Standard word2vec text format: header `|V| dim`, one word per row."""
    vocab = model.vocab
    vectors = model.input_vectors
    dim = vectors.shape[1]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(vocab)} {dim}\n")
        for wid, word in enumerate(vocab.id_to_word):
            cells = " ".join(f"{x:.6f}" for x in vectors[wid])
            fh.write(f"{word} {cells}\n")


def load_text_format(path: str | Path) -> EmbeddingMatrix:
    try:
        lines = Path(path).read_text("utf-8").splitlines()
    except OSError as exc:
        raise VectorFormatError(f"cannot read vector file {path}: {exc}") from exc
    if not lines:
        raise VectorFormatError(f"{path}: line 1: empty file, expected '|V| dim' header")
    head = lines[0].split()
    if len(head) != 2:
        raise VectorFormatError(f"{path}: line 1: expected '|V| dim' header")
    try:
        nwords, dim = int(head[0]), int(head[1])
    except ValueError:
        raise VectorFormatError(f"{path}: line 1: header fields must be integers") from None
    rows = [ln for ln in lines[1:] if ln]
    if len(rows) != nwords:
        raise VectorFormatError(
            f"{path}: header says {nwords} rows but file has {len(rows)}"
        )
    words: list[str] = []
    vectors = np.zeros((nwords, dim), dtype=np.float32)
    for i, line in enumerate(rows):
        cells = line.split(" ")
        if len(cells) != dim + 1:
            raise VectorFormatError(
                f"{path}: line {i + 2}: expected word + {dim} values, got {len(cells)} fields"
            )
        words.append(cells[0])
        try:
            vectors[i] = [float(c) for c in cells[1:]]
        except ValueError:
            raise VectorFormatError(f"{path}: line {i + 2}: non-numeric vector cell") from None
    vocab = Vocabulary(
        {w: i for i, w in enumerate(words)}, words, np.ones(nwords, dtype=np.int64), 1
    )
    return EmbeddingMatrix(vocab, vectors, np.zeros_like(vectors))
