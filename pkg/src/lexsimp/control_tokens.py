"""Control-token values and training-pair construction.

Three tokens condition generation, always serialized in this order:

* CR: quantized gold rank of the candidate, in {1.00, 0.75, 0.50, 0.25, 0.00}
* WL: character-length ratio target/complex
* WR: frequency-rarity ratio target/complex

A source string is ``<CR_c> <WL_w> <WR_r> `` followed by the sentence with
the complex token wrapped in ``[T]...[/T]``; the paired target is the
sentence with the candidate substituted and wrapped the same way. All
numeric values are rendered with exactly two decimals, rounded half-up.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from .dataset_io import Instance
from .freq_lexicon import FrequencyLexicon

logger = logging.getLogger(__name__)

CR_VALUES = (1.00, 0.75, 0.50, 0.25, 0.00)

MARK_OPEN = "[T]"
MARK_CLOSE = "[/T]"

_TOKEN_RUN = re.compile(r"\S+")


def round2(value: float) -> float:
    """Round to two decimals, half-up, on the shortest decimal form."""
    return float(Decimal(str(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def format2(value: float) -> str:
    """Render with exactly two decimals and a leading digit, e.g. 0.54, 1.00."""
    return str(Decimal(str(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class ControlValues:
    """The (CR, WL, WR) triple governing one generation."""

    cr: float
    wl: float
    wr: float

    def __post_init__(self):
        if self.cr not in CR_VALUES:
            raise ValueError(f"cr must be one of {CR_VALUES}, got {self.cr}")
        if self.wl <= 0:
            raise ValueError(f"wl must be positive, got {self.wl}")
        if self.wr <= 0:
            raise ValueError(f"wr must be positive, got {self.wr}")

    def prefix(self) -> str:
        return f"<CR_{format2(self.cr)}> <WL_{format2(self.wl)}> <WR_{format2(self.wr)}>"


@dataclass(frozen=True)
class TrainingPair:
    """One source/target line of control-token training data."""

    source: str
    target: str

    def __post_init__(self):
        for text in (self.source, self.target):
            if text.count(MARK_OPEN) != 1 or text.count(MARK_CLOSE) != 1:
                raise ValueError(f"expected exactly one marked span in {text!r}")
            if text.index(MARK_OPEN) > text.index(MARK_CLOSE):
                raise ValueError(f"markers out of order in {text!r}")
        if not self.source.startswith("<CR_"):
            raise ValueError("source must begin with the CR control token")


def compute_wl(complex_word: str, target_word: str) -> float:
    """Character-length ratio len(target) / len(complex), two decimals."""
    if not complex_word or not target_word:
        raise ValueError("words must be non-empty")
    ratio = Decimal(len(target_word)) / Decimal(len(complex_word))
    return float(ratio.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def compute_wr(
    complex_word: str,
    target_word: str,
    lexicon: FrequencyLexicon,
    method: str = "log",
) -> float:
    """Rarity ratio of target vs. complex from frequency ranks, two decimals.

    ``log`` (default) returns log(1 + rank_target) / log(1 + rank_complex);
    ``raw`` returns rank_target / rank_complex.
    """
    rank_target = lexicon.rank_of(target_word)
    rank_complex = lexicon.rank_of(complex_word)
    if method == "log":
        ratio = math.log1p(rank_target) / math.log1p(rank_complex)
    elif method == "raw":
        ratio = rank_target / rank_complex
    else:
        raise ValueError(f"unknown wr method {method!r}; expected 'log' or 'raw'")
    return round2(ratio)


def cr_for_rank(rank_index: int) -> float:
    """Quantized CR for a 1-based gold rank: 1.00, 0.75, 0.50, 0.25, then 0.00."""
    if rank_index < 1:
        raise ValueError(f"rank_index must be >= 1, got {rank_index}")
    if rank_index <= 4:
        return CR_VALUES[rank_index - 1]
    return 0.0


def _spans(sentence: str):
    return list(_TOKEN_RUN.finditer(sentence))


def wrap_token(sentence: str, word_index: int) -> str:
    """Wrap the word_index-th whitespace token in [T]...[/T], in place.

    Original spacing is preserved byte-for-byte outside the markers.
    """
    spans = _spans(sentence)
    if not 0 <= word_index < len(spans):
        raise ValueError(
            f"word_index {word_index} out of range for a {len(spans)}-token sentence"
        )
    m = spans[word_index]
    return f"{sentence[:m.start()]}{MARK_OPEN}{m.group()}{MARK_CLOSE}{sentence[m.end():]}"


def substitute_token(sentence: str, word_index: int, replacement: str) -> str:
    """Replace the word_index-th whitespace token with [T]replacement[/T]."""
    spans = _spans(sentence)
    if not 0 <= word_index < len(spans):
        raise ValueError(
            f"word_index {word_index} out of range for a {len(spans)}-token sentence"
        )
    m = spans[word_index]
    return f"{sentence[:m.start()]}{MARK_OPEN}{replacement}{MARK_CLOSE}{sentence[m.end():]}"


def serialize_source(values: ControlValues, sentence: str, word_index: int) -> str:
    """Build the model input: control-token prefix plus the marked sentence."""
    return f"{values.prefix()} {wrap_token(sentence, word_index)}"


def build_training_pairs(
    instance: Instance,
    lexicon: FrequencyLexicon,
    wr_method: str = "log",
) -> list[TrainingPair]:
    """One training pair per gold candidate, taken as-is (no filtering).

    The candidate at 1-based gold position i receives ``cr_for_rank(i)``;
    WL and WR are computed from that candidate against the complex word.
    """
    ties = [
        instance.gold[i][0]
        for i in range(1, len(instance.gold))
        if instance.gold[i][1] == instance.gold[i - 1][1]
    ]
    if ties:
        logger.info(
            "instance %d has tied gold weights; CR assigned by sorted position for %s",
            instance.id, ties,
        )
    pairs = []
    for position, (candidate, _weight) in enumerate(instance.gold, 1):
        values = ControlValues(
            cr=cr_for_rank(position),
            wl=compute_wl(instance.complex_word, candidate),
            wr=compute_wr(instance.complex_word, candidate, lexicon, method=wr_method),
        )
        pairs.append(
            TrainingPair(
                source=serialize_source(values, instance.sentence, instance.word_index),
                target=substitute_token(instance.sentence, instance.word_index, candidate),
            )
        )
    return pairs


def write_pairs_tsv(pairs, path: str | Path) -> None:
    """Write training pairs as two-column TSV: source TAB target."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for pair in pairs:
            handle.write(f"{pair.source}\t{pair.target}\n")
