"""Parsers for the public lexical-simplification dataset layouts.

Two on-disk layouts are supported, both UTF-8 TSV, one instance per line,
no header:

* ranked (LexMTurk / BenchLS / NNSeval as distributed):
  ``sentence TAB word TAB index TAB rank:candidate ...``
* annotator (TSAR-style):
  ``sentence TAB word TAB candidate ...`` where a candidate field may
  repeat (one per annotator) or carry an explicit ``:count`` suffix.

Both are normalized into :class:`Instance` records with weighted gold
substitutions. A canonical JSONL form is used as the interchange format
for the evaluation tooling.
"""

from __future__ import annotations

import json
import logging
import math
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError

logger = logging.getLogger(__name__)

DATASET_NAMES = ("lexmturk", "benchls", "nnseval", "tsar_en")

# Stripped from token edges when matching a token against the complex word;
# TSAR sentences are raw text, so the annotated word may carry punctuation.
_EDGE_PUNCT = ".,;:!?\"'`()[]{}<>«»“”‘’…—–-"


def _tokens(sentence: str) -> list[str]:
    return sentence.split()


def _token_matches(token: str, word: str) -> bool:
    t = token.lower()
    w = word.lower().strip()
    return t == w or t.strip(_EDGE_PUNCT) == w


@dataclass(frozen=True)
class Instance:
    """One evaluation unit: a sentence, its complex word, and weighted gold.

    ``gold`` is ordered by (weight descending, first appearance ascending),
    texts lowercased and trimmed, no duplicates.
    """

    id: int
    sentence: str
    complex_word: str
    word_index: int
    gold: tuple[tuple[str, int], ...]

    def __post_init__(self):
        toks = _tokens(self.sentence)
        if not 0 <= self.word_index < len(toks):
            raise ValueError(
                f"word_index {self.word_index} out of range for a "
                f"{len(toks)}-token sentence"
            )
        tok = toks[self.word_index]
        if not _token_matches(tok, self.complex_word):
            raise ValueError(
                f"token {tok!r} at word_index {self.word_index} does not "
                f"match complex word {self.complex_word!r}"
            )
        if not self.gold:
            raise ValueError("gold substitution list is empty")
        seen = set()
        prev_weight = None
        for text, weight in self.gold:
            if text != text.strip().lower() or not text:
                raise ValueError(f"gold text {text!r} is not in lowercase normal form")
            if weight < 1:
                raise ValueError(f"gold weight {weight} for {text!r} is below 1")
            if text in seen:
                raise ValueError(f"duplicate gold entry {text!r}")
            seen.add(text)
            if prev_weight is not None and weight > prev_weight:
                raise ValueError("gold entries are not sorted by descending weight")
            prev_weight = weight


@dataclass(frozen=True)
class Dataset:
    """An immutable, named collection of instances with ids 0..n-1."""

    name: str
    instances: tuple[Instance, ...]

    def __post_init__(self):
        if self.name not in DATASET_NAMES:
            raise ValueError(f"unknown dataset name {self.name!r}; expected one of {DATASET_NAMES}")
        for position, instance in enumerate(self.instances):
            if instance.id != position:
                raise ValueError(
                    f"instance ids must be contiguous from 0; found id {instance.id} at position {position}"
                )

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)

    def __getitem__(self, index: int) -> Instance:
        return self.instances[index]


@dataclass(frozen=True)
class Split:
    """A deterministic train/validation partition of a dataset."""

    train: tuple[Instance, ...]
    validation: tuple[Instance, ...]
    seed: int


def _sort_gold(pairs: list[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    # Stable sort keeps first-appearance order among equal weights.
    return tuple(sorted(pairs, key=lambda p: -p[1]))


def load_ranked_dataset(path: str | Path, name: str) -> Dataset:
    """Parse a rank-prefixed TSV file (LexMTurk / BenchLS / NNSeval layout).

    Candidate fields look like ``2:rest``; weights are derived as
    ``max_rank - rank + 1`` so that rank 1 carries the largest weight.
    Malformed candidate fields are logged and skipped; structural problems
    (missing columns, bad index, word/index mismatch) raise
    :class:`~lexsimp.errors.ParseError` with the line number.
    """
    path = Path(path)
    instances = []
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, 1):
            line = raw.rstrip("\r\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) < 4:
                raise ParseError(
                    f"expected at least 4 tab-separated fields, got {len(fields)}",
                    path=path, line_no=line_no,
                )
            sentence, word = fields[0], fields[1].strip()
            try:
                word_index = int(fields[2])
            except ValueError:
                raise ParseError(
                    f"word index {fields[2]!r} is not an integer",
                    path=path, line_no=line_no,
                ) from None

            ranked: list[tuple[int, str]] = []
            for field in fields[3:]:
                if not field:
                    continue
                rank_text, sep, cand = field.partition(":")
                cand = cand.strip().lower()
                if not sep or not cand or not rank_text.isdigit() or int(rank_text) < 1:
                    logger.warning(
                        "%s:%d: skipping malformed candidate field %r",
                        path, line_no, field,
                    )
                    continue
                ranked.append((int(rank_text), cand))
            if not ranked:
                raise ParseError(
                    "no usable rank:candidate fields", path=path, line_no=line_no
                )

            max_rank = max(rank for rank, _ in ranked)
            weighted = [(cand, max_rank - rank + 1) for rank, cand in ranked]
            gold: list[tuple[str, int]] = []
            seen: set[str] = set()
            for cand, weight in _sort_gold(weighted):
                if cand in seen:
                    logger.warning(
                        "%s:%d: dropping duplicate candidate %r", path, line_no, cand
                    )
                    continue
                seen.add(cand)
                gold.append((cand, weight))

            instances.append(
                _build_instance(len(instances), sentence, word, word_index,
                                tuple(gold), path, line_no)
            )
    return Dataset(name=name, instances=tuple(instances))


def load_tsar(path: str | Path) -> Dataset:
    """Parse an annotator-suggestion TSV file (TSAR layout).

    Each candidate field counts one annotator vote unless it carries an
    explicit ``:count`` suffix. Votes for the same lowercase text are
    merged. The word index is recovered as the first whitespace token that
    matches the complex word, exact match first, then with edge
    punctuation stripped.
    """
    path = Path(path)
    instances = []
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, 1):
            line = raw.rstrip("\r\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) < 3:
                raise ParseError(
                    "expected sentence, complex word, and at least one "
                    f"substitution field; got {len(fields)} fields",
                    path=path, line_no=line_no,
                )
            sentence, word = fields[0], fields[1].strip()

            counts: dict[str, int] = {}
            for field in fields[2:]:
                if not field.strip():
                    continue
                text, sep, suffix = field.rpartition(":")
                if sep and text and suffix.isdigit() and int(suffix) >= 1:
                    cand, votes = text, int(suffix)
                else:
                    cand, votes = field, 1
                cand = cand.strip().lower()
                if not cand:
                    logger.warning(
                        "%s:%d: skipping empty candidate field %r", path, line_no, field
                    )
                    continue
                counts[cand] = counts.get(cand, 0) + votes
            if not counts:
                raise ParseError("no substitution fields", path=path, line_no=line_no)

            word_index = _locate_word(sentence, word)
            if word_index is None:
                raise ParseError(
                    f"complex word {word!r} not found in the whitespace-tokenized sentence",
                    path=path, line_no=line_no,
                )
            gold = _sort_gold(list(counts.items()))
            instances.append(
                _build_instance(len(instances), sentence, word, word_index,
                                gold, path, line_no)
            )
    return Dataset(name="tsar_en", instances=tuple(instances))


def _locate_word(sentence: str, word: str) -> int | None:
    toks = _tokens(sentence)
    target = word.lower().strip()
    for i, tok in enumerate(toks):
        if tok.lower() == target:
            return i
    for i, tok in enumerate(toks):
        if tok.lower().strip(_EDGE_PUNCT) == target:
            return i
    return None


def _build_instance(idx, sentence, word, word_index, gold, path, line_no) -> Instance:
    try:
        return Instance(id=idx, sentence=sentence, complex_word=word,
                        word_index=word_index, gold=gold)
    except ValueError as exc:
        raise ParseError(str(exc), path=path, line_no=line_no) from None


def split_dataset(dataset: Dataset, validation_fraction: float, seed: int = 42) -> Split:
    """Partition a dataset with a seeded shuffle.

    The first ``round(fraction * n)`` shuffled ids (half-up rounding) form
    the validation side. Instances keep their id order within each side.
    """
    if not 0 < validation_fraction < 1:
        raise ValueError(
            f"validation_fraction must be strictly between 0 and 1, got {validation_fraction}"
        )
    ids = list(range(len(dataset)))
    random.Random(seed).shuffle(ids)
    n_validation = int(math.floor(validation_fraction * len(ids) + 0.5))
    validation_ids = set(ids[:n_validation])
    train = tuple(inst for inst in dataset if inst.id not in validation_ids)
    validation = tuple(inst for inst in dataset if inst.id in validation_ids)
    return Split(train=train, validation=validation, seed=seed)


# --- serialization ---------------------------------------------------------

def dump_ranked(dataset: Dataset, path: str | Path) -> None:
    """Write a dataset in the rank-prefixed layout.

    Ranks are emitted as ``max_weight - weight + 1``, which inverts the
    loader's weight rule; a dataset parsed from this layout round-trips
    exactly.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for inst in dataset:
            max_weight = inst.gold[0][1]
            cands = "\t".join(
                f"{max_weight - weight + 1}:{text}" for text, weight in inst.gold
            )
            handle.write(f"{inst.sentence}\t{inst.complex_word}\t{inst.word_index}\t{cands}\n")


def dump_tsar(dataset: Dataset, path: str | Path) -> None:
    """Write a dataset in the TSAR layout with explicit ``:count`` suffixes."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for inst in dataset:
            cands = "\t".join(f"{text}:{weight}" for text, weight in inst.gold)
            handle.write(f"{inst.sentence}\t{inst.complex_word}\t{cands}\n")


def dump_jsonl(dataset: Dataset, path: str | Path) -> None:
    """Write the canonical JSONL export, one instance per line."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for inst in dataset:
            handle.write(instance_to_json(inst) + "\n")


def instance_to_json(inst: Instance) -> str:
    record = {
        "id": inst.id,
        "sentence": inst.sentence,
        "complex_word": inst.complex_word,
        "word_index": inst.word_index,
        "gold": [[text, weight] for text, weight in inst.gold],
    }
    return json.dumps(record, ensure_ascii=False)


def load_jsonl(path: str | Path, name: str) -> Dataset:
    """Read the canonical JSONL export back into a Dataset."""
    path = Path(path)
    instances = []
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc}", path=path, line_no=line_no) from None
            try:
                gold = tuple((text, int(weight)) for text, weight in record["gold"])
                instances.append(
                    _build_instance(
                        record["id"], record["sentence"], record["complex_word"],
                        record["word_index"], gold, path, line_no,
                    )
                )
            except (KeyError, TypeError) as exc:
                raise ParseError(f"missing or malformed field: {exc}", path=path, line_no=line_no) from None
    return Dataset(name=name, instances=tuple(instances))
