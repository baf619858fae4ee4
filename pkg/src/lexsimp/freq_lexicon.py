"""Word-to-frequency-rank lexicon backing the word-rarity control token.

The input file lists words in descending frequency order, either as a
plain word list (one word per line) or as a word-vectors text file whose
first whitespace-separated token per line is the word. A leading header
line of two integers (vocab size, dimension) is detected and skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import LexsimpError


@dataclass(frozen=True)
class FrequencyLexicon:
    """Immutable word -> rank mapping; rank 1 is the most frequent word.

    Lookups are case-insensitive. Out-of-vocabulary words rank ``size + 1``
    (treated as maximally rare). Multi-word phrases take the maximum rank
    over their whitespace tokens.
    """

    ranks: dict[str, int] = field(repr=False)
    size: int

    def rank_of(self, word: str) -> int:
        tokens = word.lower().split()
        if not tokens:
            return self.size + 1
        return max(self.ranks.get(token, self.size + 1) for token in tokens)

    def __contains__(self, word: str) -> bool:
        return word.lower().strip() in self.ranks


def lexicon_from_words(words) -> FrequencyLexicon:
    """Build a lexicon from words already in descending-frequency order."""
    ranks: dict[str, int] = {}
    for word in words:
        key = word.lower().strip()
        if key and key not in ranks:
            ranks[key] = len(ranks) + 1
    if not ranks:
        raise LexsimpError("cannot build a frequency lexicon from zero words")
    return FrequencyLexicon(ranks=ranks, size=len(ranks))


def load_lexicon(path: str | Path, limit: int | None = None) -> FrequencyLexicon:
    """Load a frequency-ordered word list or vectors text file.

    The i-th distinct word (after lowercasing, first occurrence wins)
    receives rank i. Reading stops after ``limit`` distinct words when
    given.
    """
    path = Path(path)
    ranks: dict[str, int] = {}
    with open(path, encoding="utf-8", errors="replace") as handle:
        first = True
        for line in handle:
            parts = line.split()
            if not parts:
                continue
            if first:
                first = False
                # word2vec-style header: "<vocab_size> <dim>"
                if len(parts) == 2 and all(p.isdigit() for p in parts):
                    continue
            word = parts[0].lower()
            if word not in ranks:
                ranks[word] = len(ranks) + 1
                if limit is not None and len(ranks) >= limit:
                    break
    if not ranks:
        raise LexsimpError(f"lexicon file {path} contains no words")
    return FrequencyLexicon(ranks=ranks, size=len(ranks))
