"""Command line interface exposing the whole pipeline.

Exit codes: 0 success, 1 usage error, 2 data/processing error. Diagnostics go
to stderr, data to stdout or --out. Every run logs its fully resolved
configuration to stderr so experiments are reproducible from the log alone.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import CorpusLoadError, Document, StopwordList, load_corpus, normalize, word_count
from .embeddings import (
    EmbeddingKind,
    TrainConfig,
    load_text_format,
    nearest_neighbors,
    save_text_format,
    train_fasttext,
    train_skipgram,
)
from .errors import FolkBanglaError
from .evaluation import evaluate, ingest_external_predictions, load_gold, render_table
from .propp import CharacterLexicon, RoleMatrix, ScoreWeights, TriggerLexicon, identify_characters
from .subword import encode as subword_encode
from .subword import load_model, save_model, train_subword
from .summarizer import clean_sentences, score_sentences, summarize
from .tokenization import basic_tokenize, byte_slice, punct_tokenize, segment_sentences


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text("utf-8")
    except OSError as exc:
        raise CorpusLoadError(f"cannot read input {path}: {exc}") from exc


def _write_output(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _log_config(args) -> None:
    resolved = {k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None}
    print(f"config: {resolved}", file=sys.stderr)


def _cmd_tokenize(args) -> int:
    text = normalize(_read_input(args.input))
    lines = []
    if args.mode == "sentences":
        for span in segment_sentences(text):
            surface = byte_slice(text, span.start, span.end)
            lines.append(f"{surface}\t{span.start}\t{span.end}\tSentence")
    else:
        tokenizer = basic_tokenize if args.mode == "basic" else punct_tokenize
        for tok in tokenizer(text):
            lines.append(f"{tok.surface}\t{tok.start}\t{tok.end}\t{tok.kind.value}")
    _write_output(args, "".join(line + "\n" for line in lines))
    return 0


def _cmd_stats(args) -> int:
    corpus = load_corpus(args.inputs)
    _write_output(args, f"{word_count(corpus)}\n")
    return 0


def _cmd_train_subword(args) -> int:
    corpus = load_corpus(args.inputs)
    model = train_subword(corpus, args.vocab_size)
    save_model(model, args.out)
    print(
        f"trained subword model: {len(model.pieces)} pieces, {len(model.merges)} merges",
        file=sys.stderr,
    )
    return 0


def _cmd_encode(args) -> int:
    model = load_model(args.model)
    text = normalize(_read_input(args.input))
    seq = subword_encode(model, text)
    lines = [
        f"{pid}\t{model.piece_for_id(pid)}\t{span[0]}:{span[1]}"
        for pid, span in zip(seq.ids, seq.spans)
    ]
    _write_output(args, "".join(line + "\n" for line in lines))
    return 0


def _cmd_train_embed(args) -> int:
    corpus = load_corpus(args.inputs)
    kind = EmbeddingKind(args.mode)
    epochs = args.epochs
    if epochs is None:
        epochs = 100 if kind is EmbeddingKind.SKIPGRAM_SUBWORD else 5
    config = TrainConfig(
        dim=args.dim,
        window=args.window,
        min_count=args.min_count,
        negatives=args.negatives,
        initial_lr=args.lr,
        epochs=epochs,
        steps=args.steps,
        seed=args.seed,
        model=kind,
        buckets=args.buckets,
        workers=args.workers,
    )
    if kind is EmbeddingKind.SKIPGRAM_SUBWORD:
        model = train_fasttext(corpus, config)
    else:
        model = train_skipgram(corpus, config)
    save_text_format(model, args.out)
    first, last = model.losses[0], model.losses[-1]
    print(
        f"trained {kind.value}: |V|={len(model.vocab)}, dim={config.dim}, "
        f"epoch loss {first:.6f} -> {last:.6f}",
        file=sys.stderr,
    )
    return 0


def _cmd_nn(args) -> int:
    model = load_text_format(args.model)
    try:
        neighbors = nearest_neighbors(model, args.word, args.k)
    except LookupError as exc:
        raise FolkBanglaError(str(exc)) from exc
    _write_output(args, "".join(f"{w}\t{sim:.6f}\n" for w, sim in neighbors))
    return 0


def _cmd_characters(args) -> int:
    text = _read_input(args.input)
    doc = Document("input", text, normalize(text), args.input)
    lexicon = CharacterLexicon.from_file(args.lexicon) if args.lexicon else CharacterLexicon.default()
    matrix = RoleMatrix.from_file(args.matrix) if args.matrix else RoleMatrix.default()
    triggers = TriggerLexicon.from_file(args.triggers) if args.triggers else TriggerLexicon.default()
    stopwords = StopwordList.from_file(args.stopwords) if args.stopwords else StopwordList.default()
    weights = ScoreWeights(args.weight_b, args.weight_c)
    assignments = identify_characters(doc, lexicon, matrix, triggers, weights, stopwords)
    lines = [
        f"{a.entity.canonical}\t{a.role.label}\t{a.score:.6f}\t{len(a.entity.mentions)}"
        for a in assignments
    ]
    _write_output(args, "".join(line + "\n" for line in lines))
    return 0


def _cmd_summarize(args) -> int:
    text = _read_input(args.input)
    stopwords = StopwordList.from_file(args.stopwords) if args.stopwords else StopwordList.default()
    if args.scores:
        sentences = clean_sentences(text)
        rows = score_sentences(text, stopwords)
        _write_output(
            args,
            "".join(
                f"{r.sentence_index}\t{r.score:.6f}\t{sentences[r.sentence_index]}\n"
                for r in rows
            ),
        )
        return 0
    summary = summarize(text, stopwords, k=args.k, ratio=args.ratio)
    _write_output(args, summary.text + "\n")
    return 0


def _cmd_eval(args) -> int:
    gold = load_gold(args.gold)
    pred = ingest_external_predictions(args.pred)
    report = evaluate(pred, gold, model=args.model, entity_only=args.entity_only)
    if args.tsv:
        _write_output(
            args,
            "model\tprecision\trecall\tf1\ttp\tfp\tfn\n"
            f"{report.model or 'unnamed'}\t{report.precision:.4f}\t{report.recall:.4f}"
            f"\t{report.f1:.4f}\t{report.tp}\t{report.fp}\t{report.fn}\n",
        )
    else:
        _write_output(args, render_table([report]) + "\n")
    return 0


def _file_sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _cmd_pipeline(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stage = "tokenize"
    try:
        corpus = load_corpus([args.input])
        doc = corpus.documents[0]
        text = doc.normalized_text
        token_lines = [
            f"{t.surface}\t{t.start}\t{t.end}\t{t.kind.value}" for t in punct_tokenize(text)
        ]
        (out_dir / "tokens.tsv").write_text(
            "".join(line + "\n" for line in token_lines), encoding="utf-8"
        )

        stage = "train-subword"
        model = train_subword(corpus, args.vocab_size)
        save_model(model, out_dir / "subword.bpe")

        stage = "train-embed"
        config = TrainConfig(
            dim=args.dim,
            window=args.window,
            min_count=args.min_count,
            epochs=args.epochs,
            seed=args.seed,
        )
        matrix = train_skipgram(corpus, config)
        save_text_format(matrix, out_dir / "vectors.txt")

        stage = "characters"
        stopwords = StopwordList.default()
        assignments = identify_characters(doc, stopwords=stopwords)
        (out_dir / "characters.tsv").write_text(
            "".join(
                f"{a.entity.canonical}\t{a.role.label}\t{a.score:.6f}\t{len(a.entity.mentions)}\n"
                for a in assignments
            ),
            encoding="utf-8",
        )

        stage = "summarize"
        summary = summarize(doc.normalized_text, stopwords, k=args.k, ratio=args.ratio)
        (out_dir / "summary.txt").write_text(summary.text + "\n", encoding="utf-8")
    except (FolkBanglaError, OSError) as exc:
        print(f"pipeline failed at stage {stage}: {exc}", file=sys.stderr)
        return 2

    artifacts = ["tokens.tsv", "subword.bpe", "vectors.txt", "characters.tsv", "summary.txt"]
    manifest = {
        "version": __version__,
        "seed": args.seed,
        "inputs": {args.input: _file_sha256(Path(args.input))},
        "config": {
            "vocab_size": args.vocab_size,
            "dim": args.dim,
            "window": args.window,
            "min_count": args.min_count,
            "epochs": args.epochs,
            "k": args.k,
            "ratio": args.ratio,
        },
        "artifacts": {name: _file_sha256(out_dir / name) for name in artifacts},
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    print(f"pipeline done: {len(artifacts)} artifacts in {out_dir}", file=sys.stderr)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="folkbangla", description="Bengali folklore NLP toolkit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("tokenize", help="tokenize text or split sentences")
    p.add_argument("--mode", choices=["basic", "punct", "sentences"], default="punct")
    p.add_argument("--out")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=_cmd_tokenize)

    p = sub.add_parser("stats", help="word count of a corpus")
    p.add_argument("--out")
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("train-subword", help="train a BPE subword model")
    p.add_argument("--vocab-size", type=int, default=500)
    p.add_argument("--out", required=True)
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=_cmd_train_subword)

    p = sub.add_parser("encode", help="encode text with a subword model")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("train-embed", help="train word or subword embeddings")
    p.add_argument("--mode", choices=["word2vec", "fasttext"], default="word2vec")
    p.add_argument("--dim", type=int, default=200)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--min-count", type=int, default=10)
    p.add_argument("--negatives", type=int, default=5)
    p.add_argument("--lr", type=float, default=0.025)
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--buckets", type=int, default=2**18)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=_cmd_train_embed)

    p = sub.add_parser("nn", help="nearest neighbors of a word")
    p.add_argument("--model", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_nn)

    p = sub.add_parser("characters", help="identify folk characters and roles")
    p.add_argument("--lexicon")
    p.add_argument("--matrix")
    p.add_argument("--triggers")
    p.add_argument("--stopwords")
    p.add_argument("--weight-b", type=float, default=1.0)
    p.add_argument("--weight-c", type=float, default=1.0)
    p.add_argument("--out")
    p.add_argument("input")
    p.set_defaults(func=_cmd_characters)

    p = sub.add_parser("summarize", help="extractive word-frequency summary")
    p.add_argument("--stopwords")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--k", type=int, default=None)
    group.add_argument("--ratio", type=float, default=0.3)
    p.add_argument("--scores", action="store_true", help="emit per-sentence scores")
    p.add_argument("--out")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=_cmd_summarize)

    p = sub.add_parser("eval", help="precision/recall/F1 against gold annotations")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--model", default="FolkBangla")
    p.add_argument("--entity-only", action="store_true")
    p.add_argument("--tsv", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("pipeline", help="run the full pipeline, writing artifacts")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--vocab-size", type=int, default=500)
    p.add_argument("--dim", type=int, default=200)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--min-count", type=int, default=1)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--ratio", type=float, default=0.3)
    p.add_argument("input")
    p.set_defaults(func=_cmd_pipeline)

    return parser


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        if not argv:
            parser.print_usage(sys.stderr)
            return 1
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            parser.print_usage(sys.stderr)
            return 1
        _log_config(args)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except (FolkBanglaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
