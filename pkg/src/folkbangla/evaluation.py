"""Precision/recall/F1 scoring for character-role predictions and rendering
of model comparison tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import FolkBanglaError
from .propp import RoleLabel, parse_role, strip_suffix


class EvalFormatError(FolkBanglaError):
    """Gold/prediction file is malformed; message carries the line number."""


class PredictionValidationError(FolkBanglaError):
    """Predictions violate the one-entity-per-document rule."""


@dataclass(frozen=True)
class GoldAnnotation:
    document: str
    canonical: str
    role: RoleLabel


@dataclass(frozen=True)
class Prediction:
    document: str
    canonical: str
    role: RoleLabel


@dataclass
class MatchCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    per_role: dict[RoleLabel, tuple[int, int, int]] = field(default_factory=dict)


@dataclass
class EvalReport:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int
    per_role: dict[RoleLabel, tuple[int, int, int]] = field(default_factory=dict)
    model: str = ""


def _as_prediction(item) -> Prediction:
    if isinstance(item, Prediction):
        return item
    if len(item) == 3:
        return Prediction(item[0], item[1], item[2])
    return Prediction("", item[0], item[1])


def match(pred, gold: list[GoldAnnotation], entity_only: bool = False) -> MatchCounts:
    """Greedy matching: a prediction is a true positive iff an unmatched gold
    item in the same document has a stem-equal canonical and (unless
    entity_only) the same role.
    """
    preds = [_as_prediction(p) for p in pred]
    seen: set[tuple[str, str]] = set()
    for p in preds:
        key = (p.document, strip_suffix(p.canonical))
        if key in seen:
            raise PredictionValidationError(
                f"duplicate predicted entity {p.canonical!r} in document {p.document!r}"
            )
        seen.add(key)

    def match_key(doc: str, canonical: str, role: RoleLabel):
        base = (doc, strip_suffix(canonical))
        return base if entity_only else base + (role,)

    unmatched: dict[tuple, list[GoldAnnotation]] = {}
    for g in gold:
        unmatched.setdefault(match_key(g.document, g.canonical, g.role), []).append(g)

    per_role: dict[RoleLabel, list[int]] = {r: [0, 0, 0] for r in RoleLabel}
    tp = fp = 0
    for p in preds:
        bucket = unmatched.get(match_key(p.document, p.canonical, p.role))
        if bucket:
            g = bucket.pop(0)
            tp += 1
            per_role[g.role][0] += 1
        else:
            fp += 1
            per_role[p.role][1] += 1
    fn = 0
    for bucket in unmatched.values():
        for g in bucket:
            fn += 1
            per_role[g.role][2] += 1
    return MatchCounts(
        tp, fp, fn, {r: tuple(v) for r, v in per_role.items() if any(v)}
    )


def metrics(
    tp: int,
    fp: int,
    fn: int,
    model: str = "",
    per_role: dict[RoleLabel, tuple[int, int, int]] | None = None,
) -> EvalReport:
    """P = TP/(TP+FP), R = TP/(TP+FN), F1 their harmonic mean; 0 on empty
    denominators."""
    if min(tp, fp, fn) < 0:
        raise ValueError("counts must be non-negative")
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return EvalReport(precision, recall, f1, tp, fp, fn, per_role or {}, model)


def evaluate(pred, gold: list[GoldAnnotation], model: str = "", entity_only: bool = False) -> EvalReport:
    counts = match(pred, gold, entity_only=entity_only)
    return metrics(counts.tp, counts.fp, counts.fn, model=model, per_role=counts.per_role)


def render_table(reports: list[EvalReport]) -> str:
    """Text table with columns Model Name, Precision, F1, Recall; metric cells
    are percentages with two decimals."""
    if not reports:
        raise ValueError("render_table needs at least one report")
    header = ["Model Name", "Precision", "F1", "Recall"]
    rows = [header]
    for rep in reports:
        rows.append(
            [
                rep.model or "unnamed",
                f"{100 * rep.precision:.2f}",
                f"{100 * rep.f1:.2f}",
                f"{100 * rep.recall:.2f}",
            ]
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = [
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        for row in rows
    ]
    return "\n".join(lines)


def _parse_rows(path: str | Path, cls):
    try:
        lines = Path(path).read_text("utf-8").splitlines()
    except OSError as exc:
        raise EvalFormatError(f"cannot read {path}: {exc}") from exc
    items = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != 3:
            raise EvalFormatError(
                f"{path}: line {lineno}: expected 'document<TAB>canonical<TAB>role'"
            )
        try:
            role = parse_role(cells[2])
        except FolkBanglaError as exc:
            raise EvalFormatError(f"{path}: line {lineno}: {exc}") from None
        items.append(cls(cells[0], cells[1], role))
    return items


def ingest_external_predictions(path: str | Path) -> list[Prediction]:
    """Parse a third-party prediction file: TSV document, canonical, role."""
    return _parse_rows(path, Prediction)


def load_gold(path: str | Path) -> list[GoldAnnotation]:
    """Parse a gold annotation file in the same TSV shape as predictions;
    (document, canonical) pairs must be unique."""
    gold = _parse_rows(path, GoldAnnotation)
    seen: set[tuple[str, str]] = set()
    for g in gold:
        key = (g.document, g.canonical)
        if key in seen:
            raise EvalFormatError(
                f"{path}: duplicate gold entity {g.canonical!r} in document {g.document!r}"
            )
        seen.add(key)
    return gold
