"""Dataset statistics motivating the length and rarity control tokens.

Both statistics compare each instance's complex word against its best
candidate (gold position 1 after the weight-descending, first-appearance
ordering). Percentages are over instances and reported to two decimals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .control_tokens import round2
from .dataset_io import Dataset
from .freq_lexicon import FrequencyLexicon


@dataclass(frozen=True)
class LengthStats:
    """Character-length comparison of complex word vs. best candidate."""

    pct_complex_longer: float
    pct_complex_shorter: float
    pct_equal: float
    n_longer: int
    n_shorter: int
    n_equal: int
    n_instances: int


@dataclass(frozen=True)
class FrequencyStats:
    """Rank comparison of complex word vs. best candidate.

    ``pct_complex_rarer`` counts strictly greater complex-word ranks; rank
    ties (including both-OOV) are tallied separately, never as rarer.
    """

    pct_complex_rarer: float
    pct_ties: float
    n_rarer: int
    n_ties: int
    n_evaluated: int


def length_stats(dataset: Dataset) -> LengthStats:
    if len(dataset) == 0:
        raise ValueError("cannot compute length statistics of an empty dataset")
    n_longer = n_shorter = n_equal = 0
    for inst in dataset:
        best = inst.gold[0][0]
        if len(inst.complex_word) > len(best):
            n_longer += 1
        elif len(inst.complex_word) < len(best):
            n_shorter += 1
        else:
            n_equal += 1
    total = len(dataset)
    return LengthStats(
        pct_complex_longer=round2(100.0 * n_longer / total),
        pct_complex_shorter=round2(100.0 * n_shorter / total),
        pct_equal=round2(100.0 * n_equal / total),
        n_longer=n_longer,
        n_shorter=n_shorter,
        n_equal=n_equal,
        n_instances=total,
    )


def frequency_stats(dataset: Dataset, lexicon: FrequencyLexicon) -> FrequencyStats:
    if len(dataset) == 0:
        raise ValueError("cannot compute frequency statistics of an empty dataset")
    n_rarer = n_ties = 0
    for inst in dataset:
        best = inst.gold[0][0]
        rank_complex = lexicon.rank_of(inst.complex_word)
        rank_best = lexicon.rank_of(best)
        if rank_complex > rank_best:
            n_rarer += 1
        elif rank_complex == rank_best:
            n_ties += 1
    total = len(dataset)
    return FrequencyStats(
        pct_complex_rarer=round2(100.0 * n_rarer / total),
        pct_ties=round2(100.0 * n_ties / total),
        n_rarer=n_rarer,
        n_ties=n_ties,
        n_evaluated=total,
    )
