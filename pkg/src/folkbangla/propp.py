"""Folk character identification and Propp-style role assignment.

Mentions are found with a role-noun lexicon plus a repeated-name heuristic,
linked into entities by shared stems, and each entity is scored against the
seven dramatis-personae roles with the linear score

    score = b * lexical_evidence + c * contextual_evidence

where the contextual side weighs the narrative functions tagged in the
sentences the entity appears in through a 7x31 role/function weight matrix.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Document, StopwordList
from .errors import FolkBanglaError
from .tokenization import TokenKind, byte_slice, punct_tokenize, segment_sentences


class ProppFunction(enum.IntEnum):
    ABSENTATION = 1
    INTERDICTION = 2
    VIOLATION = 3
    RECONNAISSANCE = 4
    DELIVERY = 5
    TRICKERY = 6
    COMPLICITY = 7
    VILLAINY_OR_LACK = 8
    MEDIATION = 9
    COUNTERACTION = 10
    DEPARTURE = 11
    FIRST_DONOR_FUNCTION = 12
    HERO_REACTION = 13
    RECEIPT_OF_AGENT = 14
    GUIDANCE = 15
    STRUGGLE = 16
    BRANDING = 17
    VICTORY = 18
    LIQUIDATION = 19
    RETURN = 20
    PURSUIT = 21
    RESCUE = 22
    UNRECOGNIZED_ARRIVAL = 23
    UNFOUNDED_CLAIMS = 24
    DIFFICULT_TASK = 25
    SOLUTION = 26
    RECOGNITION = 27
    EXPOSURE = 28
    TRANSFIGURATION = 29
    PUNISHMENT = 30
    WEDDING = 31

    @property
    def label(self) -> str:
        return "".join(part.capitalize() for part in self.name.split("_"))


class RoleLabel(enum.IntEnum):
    HERO = 1
    VILLAIN = 2
    DONOR = 3
    HELPER = 4
    SOUGHT_FOR_PERSON = 5
    DISPATCHER = 6
    FALSE_HERO = 7

    @property
    def label(self) -> str:
        return "".join(part.capitalize() for part in self.name.split("_"))


_FUNCTION_BY_LABEL = {f.label: f for f in ProppFunction}
_ROLE_BY_LABEL = {r.label: r for r in RoleLabel}


class LexiconFormatError(FolkBanglaError):
    """A lexicon/matrix/trigger file is malformed; message carries the line."""


def parse_function(label: str) -> ProppFunction:
    try:
        return _FUNCTION_BY_LABEL[label]
    except KeyError:
        raise LexiconFormatError(f"unknown narrative function {label!r}") from None


def parse_role(label: str) -> RoleLabel:
    try:
        return _ROLE_BY_LABEL[label]
    except KeyError:
        raise LexiconFormatError(f"unknown role {label!r}") from None


# Case/possessive suffixes stripped when stemming, longest match first.
SUFFIXES = ("েরা", "রা", "কে", "ের", "র")


def strip_suffix(word: str) -> str:
    """Strip at most one case/possessive suffix; never empties the word."""
    for suffix in SUFFIXES:
        if len(word) > len(suffix) and word.endswith(suffix):
            return word[: -len(suffix)]
    return word


@dataclass(frozen=True)
class Mention:
    surface: str
    stem: str
    sentence_index: int
    token_span: tuple[int, int]


@dataclass
class CharacterEntity:
    canonical: str
    stem: str
    mentions: list[Mention]


@dataclass(frozen=True)
class ScoreWeights:
    b: float = 1.0
    c: float = 1.0

    def __post_init__(self) -> None:
        if not (self.b > 0 and self.c > 0):
            raise ValueError(f"weights must be positive, got b={self.b}, c={self.c}")


@dataclass(frozen=True)
class RoleEvidence:
    x: float  # lexical prior strength, in [0, 1]
    y: float  # role-matrix weighted function co-occurrence, in [0, 1]

    def __post_init__(self) -> None:
        if not (0.0 <= self.x <= 1.0 and 0.0 <= self.y <= 1.0):
            raise ValueError(f"evidence must lie in [0, 1], got x={self.x}, y={self.y}")


@dataclass(frozen=True)
class RoleAssignment:
    entity: CharacterEntity
    role: RoleLabel
    score: float


class CharacterLexicon:
    """Role-noun priors: word -> role -> prior weight in [0, 1]."""

    def __init__(self, priors: dict[str, dict[RoleLabel, float]]):
        self.priors = priors

    def __contains__(self, word: str) -> bool:
        return word in self.priors

    def prior(self, word: str, role: RoleLabel) -> float:
        return self.priors.get(word, {}).get(role, 0.0)

    @classmethod
    def from_lines(cls, lines, source: str = "<memory>") -> "CharacterLexicon":
        priors: dict[str, dict[RoleLabel, float]] = {}
        for lineno, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cells = line.split("\t")
            if len(cells) != 3:
                raise LexiconFormatError(
                    f"{source}: line {lineno}: expected 'word<TAB>role<TAB>prior'"
                )
            word, role_label, prior_str = cells
            try:
                role = parse_role(role_label)
                prior = float(prior_str)
            except (LexiconFormatError, ValueError) as exc:
                raise LexiconFormatError(f"{source}: line {lineno}: {exc}") from None
            if not 0.0 <= prior <= 1.0:
                raise LexiconFormatError(
                    f"{source}: line {lineno}: prior {prior} outside [0, 1]"
                )
            priors.setdefault(word, {})[role] = prior
        return cls(priors)

    @classmethod
    def from_file(cls, path: str | Path) -> "CharacterLexicon":
        return cls.from_lines(Path(path).read_text("utf-8").splitlines(), source=str(path))

    @classmethod
    def default(cls) -> "CharacterLexicon":
        from .data import data_text

        return cls.from_lines(data_text("character_lexicon.tsv").splitlines(), "bundled")


class RoleMatrix:
    """7x31 weights linking roles to the narrative functions they co-occur with."""

    def __init__(self, weights: np.ndarray):
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (len(RoleLabel), len(ProppFunction)):
            raise ValueError(f"role matrix must be 7x31, got {weights.shape}")
        if not np.isfinite(weights).all():
            raise ValueError("role matrix weights must be finite")
        if (weights != 0).sum(axis=1).min() == 0:
            raise ValueError("every role row needs at least one nonzero weight")
        self.weights = weights

    def weight(self, role: RoleLabel, function: ProppFunction) -> float:
        return float(self.weights[role - 1, function - 1])

    @classmethod
    def from_lines(cls, lines, source: str = "<memory>") -> "RoleMatrix":
        rows = [ln for ln in (raw.rstrip("\n") for raw in lines) if ln and not ln.startswith("#")]
        if not rows:
            raise LexiconFormatError(f"{source}: empty role matrix file")
        header = rows[0].split("\t")
        if len(header) != 1 + len(ProppFunction):
            raise LexiconFormatError(
                f"{source}: line 1: header needs a role column plus "
                f"{len(ProppFunction)} function names, got {len(header)} cells"
            )
        try:
            functions = [parse_function(cell) for cell in header[1:]]
        except LexiconFormatError as exc:
            raise LexiconFormatError(f"{source}: line 1: {exc}") from None
        if len(set(functions)) != len(ProppFunction):
            raise LexiconFormatError(f"{source}: line 1: duplicate function columns")
        weights = np.zeros((len(RoleLabel), len(ProppFunction)))
        seen: set[RoleLabel] = set()
        for lineno, row in enumerate(rows[1:], start=2):
            cells = row.split("\t")
            if len(cells) != 1 + len(ProppFunction):
                raise LexiconFormatError(
                    f"{source}: line {lineno}: expected role + {len(ProppFunction)} values"
                )
            try:
                role = parse_role(cells[0])
                values = [float(c) for c in cells[1:]]
            except (LexiconFormatError, ValueError) as exc:
                raise LexiconFormatError(f"{source}: line {lineno}: {exc}") from None
            if role in seen:
                raise LexiconFormatError(f"{source}: line {lineno}: duplicate role row")
            seen.add(role)
            for fn, value in zip(functions, values):
                weights[role - 1, fn - 1] = value
        if len(seen) != len(RoleLabel):
            missing = sorted(set(RoleLabel) - seen)
            raise LexiconFormatError(
                f"{source}: missing role rows: {', '.join(r.label for r in missing)}"
            )
        return cls(weights)

    @classmethod
    def from_file(cls, path: str | Path) -> "RoleMatrix":
        return cls.from_lines(Path(path).read_text("utf-8").splitlines(), source=str(path))

    @classmethod
    def default(cls) -> "RoleMatrix":
        from .data import data_text

        return cls.from_lines(data_text("role_matrix.tsv").splitlines(), "bundled")


class TriggerLexicon:
    """Cue word -> narrative functions it signals."""

    def __init__(self, triggers: dict[str, set[ProppFunction]]):
        self.triggers = triggers

    def functions_for(self, form: str) -> set[ProppFunction]:
        return self.triggers.get(form, set())

    @classmethod
    def from_lines(cls, lines, source: str = "<memory>") -> "TriggerLexicon":
        triggers: dict[str, set[ProppFunction]] = {}
        for lineno, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cells = line.split("\t")
            if len(cells) != 2:
                raise LexiconFormatError(
                    f"{source}: line {lineno}: expected 'trigger<TAB>function'"
                )
            try:
                fn = parse_function(cells[1])
            except LexiconFormatError as exc:
                raise LexiconFormatError(f"{source}: line {lineno}: {exc}") from None
            triggers.setdefault(cells[0], set()).add(fn)
        return cls(triggers)

    @classmethod
    def from_file(cls, path: str | Path) -> "TriggerLexicon":
        return cls.from_lines(Path(path).read_text("utf-8").splitlines(), source=str(path))

    @classmethod
    def default(cls) -> "TriggerLexicon":
        from .data import data_text

        return cls.from_lines(data_text("function_triggers.tsv").splitlines(), "bundled")


def _sentence_tokens(doc: Document) -> list[list]:
    text = doc.normalized_text
    return [
        punct_tokenize(byte_slice(text, span.start, span.end))
        for span in segment_sentences(text)
    ]


def detect_mentions(
    doc: Document,
    lexicon: CharacterLexicon,
    stopwords: StopwordList | None = None,
) -> list[Mention]:
    """Find character mentions in document order.

    A Word token is a mention head if its surface (directly or after suffix
    stripping) is a lexicon entry, or if it is a repeated proper-name
    candidate: same stem at least 3 times, at least one occurrence that is
    not sentence-initial, and not a stopword.
    """
    if stopwords is None:
        stopwords = StopwordList.default()
    occurrences = []  # (sentence_index, token_index, surface, stem, lexicon_stem)
    stem_counts: Counter = Counter()
    stem_non_initial: set[str] = set()
    for s_idx, tokens in enumerate(_sentence_tokens(doc)):
        first_word = True
        for t_idx, tok in enumerate(tokens):
            if tok.kind is not TokenKind.WORD:
                continue
            surface = tok.surface
            stem = strip_suffix(surface)
            if surface in lexicon:
                lex_stem = surface
            elif stem in lexicon:
                lex_stem = stem
            else:
                lex_stem = None
            occurrences.append((s_idx, t_idx, surface, stem, lex_stem))
            stem_counts[stem] += 1
            if not first_word:
                stem_non_initial.add(stem)
            first_word = False
    mentions = []
    for s_idx, t_idx, surface, stem, lex_stem in occurrences:
        if lex_stem is not None:
            mentions.append(Mention(surface, lex_stem, s_idx, (t_idx, t_idx + 1)))
        elif (
            stem_counts[stem] >= 3
            and stem in stem_non_initial
            and surface not in stopwords
            and stem not in stopwords
        ):
            mentions.append(Mention(surface, stem, s_idx, (t_idx, t_idx + 1)))
    return mentions


def link_mentions(mentions: list[Mention]) -> list[CharacterEntity]:
    """Merge mentions with equal stems; canonical form is the most frequent
    surface (ties: earliest occurrence). Entities keep first-mention order."""
    by_stem: dict[str, list[Mention]] = {}
    for m in mentions:
        by_stem.setdefault(m.stem, []).append(m)
    entities = []
    for stem, group in by_stem.items():
        counts = Counter(m.surface for m in group)
        best = max(counts.values())
        canonical = next(m.surface for m in group if counts[m.surface] == best)
        entities.append(CharacterEntity(canonical, stem, group))
    return entities


def tag_functions(
    doc: Document, trigger_lexicon: TriggerLexicon
) -> list[tuple[int, ProppFunction]]:
    """Tag each sentence with every function one of its token stems triggers."""
    tags = []
    for s_idx, tokens in enumerate(_sentence_tokens(doc)):
        found: set[ProppFunction] = set()
        for tok in tokens:
            if tok.kind is not TokenKind.WORD:
                continue
            found |= trigger_lexicon.functions_for(tok.surface)
            found |= trigger_lexicon.functions_for(strip_suffix(tok.surface))
        for fn in sorted(found):
            tags.append((s_idx, fn))
    return tags


def score_role(
    entity: CharacterEntity,
    role: RoleLabel,
    evidence: RoleEvidence,
    weights: ScoreWeights,
) -> float:
    """Linear role score b*x + c*y for one (entity, role) hypothesis."""
    return weights.b * evidence.x + weights.c * evidence.y


def role_evidence(
    entity: CharacterEntity,
    role: RoleLabel,
    tags: list[tuple[int, ProppFunction]],
    matrix: RoleMatrix,
    lexicon: CharacterLexicon,
) -> RoleEvidence:
    """Evidence pair for one entity/role: lexicon prior and the mean matrix
    weight of the function tags in the entity's sentences, clamped to [0, 1]."""
    x = lexicon.prior(entity.stem, role)
    sentences = {m.sentence_index for m in entity.mentions}
    contributing = [fn for s_idx, fn in tags if s_idx in sentences]
    if contributing:
        raw = sum(matrix.weight(role, fn) for fn in contributing) / len(contributing)
        y = min(1.0, max(0.0, raw))
    else:
        y = 0.0
    return RoleEvidence(x, y)


def assign_roles(
    entities: list[CharacterEntity],
    tags: list[tuple[int, ProppFunction]],
    matrix: RoleMatrix,
    lexicon: CharacterLexicon,
    weights: ScoreWeights = ScoreWeights(),
) -> list[RoleAssignment]:
    """Give each entity its argmax-scoring role; ties go to the lower role
    index (Hero first)."""
    assignments = []
    for entity in entities:
        best_role = None
        best_score = -1.0
        for role in RoleLabel:
            evidence = role_evidence(entity, role, tags, matrix, lexicon)
            score = score_role(entity, role, evidence, weights)
            if best_role is None or score > best_score:
                best_role = role
                best_score = score
        assignments.append(RoleAssignment(entity, best_role, best_score))
    return assignments


def identify_characters(
    doc: Document,
    lexicon: CharacterLexicon | None = None,
    matrix: RoleMatrix | None = None,
    triggers: TriggerLexicon | None = None,
    weights: ScoreWeights = ScoreWeights(),
    stopwords: StopwordList | None = None,
) -> list[RoleAssignment]:
    """Full character pipeline: detect, link, tag, and assign roles."""
    lexicon = lexicon or CharacterLexicon.default()
    matrix = matrix or RoleMatrix.default()
    triggers = triggers or TriggerLexicon.default()
    mentions = detect_mentions(doc, lexicon, stopwords)
    entities = link_mentions(mentions)
    tags = tag_functions(doc, triggers)
    return assign_roles(entities, tags, matrix, lexicon, weights)
