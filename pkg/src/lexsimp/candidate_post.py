"""Candidate extraction from generated sequences and list post-processing.

Generated sequences mark the substituted word with ``[T]...[/T]``. The
post-processing pipeline applies, in order: lowercase normalization,
removal of candidates equal to the complex word, first-occurrence
deduplication, truncation to the top k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .control_tokens import MARK_CLOSE, MARK_OPEN
from .errors import ExtractionError, ParseError


@dataclass(frozen=True)
class CandidateList:
    """Ordered, deduplicated substitution candidates for one instance."""

    complex_word: str
    candidates: tuple[str, ...]

    def __post_init__(self):
        word = self.complex_word.strip().lower()
        seen = set()
        for cand in self.candidates:
            if cand != cand.strip().lower():
                raise ValueError(f"candidate {cand!r} is not in lowercase normal form")
            if cand == word:
                raise ValueError(f"candidate {cand!r} equals the complex word")
            if cand in seen:
                raise ValueError(f"duplicate candidate {cand!r}")
            seen.add(cand)

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)


def extract_candidate(generated: str) -> str:
    """Return the trimmed text between the first ``[T]`` and the following ``[/T]``."""
    start = generated.find(MARK_OPEN)
    if start < 0:
        raise ExtractionError(f"no {MARK_OPEN} marker in {generated!r}")
    end = generated.find(MARK_CLOSE, start + len(MARK_OPEN))
    if end < 0:
        raise ExtractionError(f"no {MARK_CLOSE} marker after {MARK_OPEN} in {generated!r}")
    return generated[start + len(MARK_OPEN):end].strip()


def postprocess(raw: Sequence[str], complex_word: str, k: int) -> CandidateList:
    """Normalize, filter, deduplicate, and truncate raw candidates.

    An empty result is a valid candidate list.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    word = complex_word.strip().lower()
    kept: list[str] = []
    seen: set[str] = set()
    for item in raw:
        cand = item.strip().lower()
        if cand == word or cand in seen:
            continue
        seen.add(cand)
        kept.append(cand)
        if len(kept) == k:
            break
    return CandidateList(complex_word=complex_word, candidates=tuple(kept))


# --- prediction interchange format (JSONL) ---------------------------------

def prediction_to_json(instance_id: int, prediction: CandidateList) -> str:
    record = {
        "id": instance_id,
        "complex_word": prediction.complex_word,
        "candidates": list(prediction.candidates),
    }
    return json.dumps(record, ensure_ascii=False)


def write_predictions(predictions: Mapping[int, CandidateList] | Iterable[tuple[int, CandidateList]],
                      path: str | Path) -> None:
    """Write prediction records as JSONL, ordered by instance id."""
    items = predictions.items() if isinstance(predictions, Mapping) else predictions
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for instance_id, prediction in sorted(items, key=lambda kv: kv[0]):
            handle.write(prediction_to_json(instance_id, prediction) + "\n")


def read_predictions(path: str | Path) -> dict[int, CandidateList]:
    """Read prediction JSONL into an id-keyed mapping; duplicate ids are an error."""
    path = Path(path)
    predictions: dict[int, CandidateList] = {}
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
                instance_id = int(record["id"])
                prediction = CandidateList(
                    complex_word=record["complex_word"],
                    candidates=tuple(record["candidates"]),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"malformed prediction record: {exc}", path=path, line_no=line_no) from None
            if instance_id in predictions:
                raise ParseError(f"duplicate prediction id {instance_id}", path=path, line_no=line_no)
            predictions[instance_id] = prediction
    return predictions
