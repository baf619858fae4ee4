"""Evaluation metrics at K for substitution candidate lists.

Six metric families, each computed per instance against the weighted gold
annotations and averaged over the dataset:

* accuracy@1: top-ranked candidate is anywhere in the gold set
* accuracy@k@top1: any of the top k hits the most-suggested gold
  candidate(s), ties included
* potential@k: any of the top k is in the gold set
* MAP@k: binary-relevance average precision, denominator min(k, |gold|)
* precision@k: share of the top k found in gold, denominator min(k, |pred|)
* recall@k: share of gold found in the top k

Matching is exact string equality on lowercase trimmed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .candidate_post import CandidateList
from .control_tokens import round2
from .dataset_io import Dataset, Instance

ALL_K = tuple(range(1, 11))
ACC_TOP1_K = (1, 2, 3, 4, 5)

# Column sets of the usual report layout.
REPORT_COLUMNS = {
    "acc_k_top1": (1, 2, 3, 4, 5),
    "potential": (2, 3, 4, 5, 10),
    "map_k": (2, 3, 4, 5, 10),
    "precision": (3, 5, 10),
    "recall": (3, 5, 10),
}


@dataclass(frozen=True)
class GoldView:
    """Gold annotations reduced to the two sets the metrics need."""

    all: frozenset[str]
    top1: frozenset[str]

    def __post_init__(self):
        if not self.top1:
            raise ValueError("top1 gold set is empty")
        if not self.top1 <= self.all:
            raise ValueError("top1 gold set is not a subset of the full gold set")

    @classmethod
    def from_instance(cls, instance: Instance) -> "GoldView":
        max_weight = instance.gold[0][1]
        return cls(
            all=frozenset(text for text, _ in instance.gold),
            top1=frozenset(text for text, weight in instance.gold if weight == max_weight),
        )


def _top(pred: CandidateList, k: int) -> tuple[str, ...]:
    return pred.candidates[:k]


def acc_at_1(pred: CandidateList, gold: GoldView) -> int:
    """1 iff the first candidate exists and is in the gold set."""
    return int(bool(pred.candidates) and pred.candidates[0] in gold.all)


def acc_k_top1(pred: CandidateList, gold: GoldView, k: int) -> int:
    """1 iff any of the top k candidates hits a most-suggested gold entry."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return int(any(c in gold.top1 for c in _top(pred, k)))


def potential_k(pred: CandidateList, gold: GoldView, k: int) -> int:
    """1 iff any of the top k candidates is in the gold set."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return int(any(c in gold.all for c in _top(pred, k)))


def map_k(pred: CandidateList, gold: GoldView, k: int) -> float:
    """Average precision over the top k with binary relevance.

    AP@k = sum over relevant positions i <= k of (relevant in first i) / i,
    divided by min(k, |gold|).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    top = _top(pred, k)
    if not top:
        return 0.0
    hits = 0
    precision_sum = 0.0
    for i, cand in enumerate(top, 1):
        if cand in gold.all:
            hits += 1
            precision_sum += hits / i
    return precision_sum / min(k, len(gold.all))


def precision_k(pred: CandidateList, gold: GoldView, k: int, denominator: str = "pred") -> float:
    """Share of the top k candidates found in gold.

    ``denominator="pred"`` (default) divides by min(k, |pred|) so short
    lists are not double-penalized; ``denominator="k"`` divides by k.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    top = _top(pred, k)
    if not top:
        return 0.0
    relevant = sum(1 for c in top if c in gold.all)
    if denominator == "pred":
        return relevant / len(top)
    if denominator == "k":
        return relevant / k
    raise ValueError(f"unknown precision denominator {denominator!r}")


def recall_k(pred: CandidateList, gold: GoldView, k: int) -> float:
    """Share of the gold set found in the top k candidates."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    relevant = sum(1 for c in _top(pred, k) if c in gold.all)
    return relevant / len(gold.all)


@dataclass
class EvaluationReport:
    """The full metric grid for one system on one dataset, in percent."""

    n_instances: int
    n_missing_predictions: int
    acc_at_1: float
    acc_k_top1: dict[int, float]
    potential: dict[int, float]
    map_k: dict[int, float]
    precision: dict[int, float]
    recall: dict[int, float]

    def to_json_dict(self) -> dict:
        def grid(values: dict[int, float]) -> dict[str, float]:
            return {str(k): round2(v) for k, v in values.items()}

        return {
            "n_instances": self.n_instances,
            "n_missing_predictions": self.n_missing_predictions,
            "acc_at_1": round2(self.acc_at_1),
            "acc_k_top1": grid(self.acc_k_top1),
            "potential": grid(self.potential),
            "map_k": grid(self.map_k),
            "precision": grid(self.precision),
            "recall": grid(self.recall),
        }


def _dedup(pred: CandidateList) -> CandidateList:
    # Defensive: interchange files are already postprocessed, but counting
    # must never see duplicates.
    seen = set()
    kept = []
    for cand in pred.candidates:
        if cand not in seen:
            seen.add(cand)
            kept.append(cand)
    if len(kept) == len(pred.candidates):
        return pred
    return CandidateList(complex_word=pred.complex_word, candidates=tuple(kept))


def evaluate(
    dataset: Dataset,
    predictions: Mapping[int, CandidateList],
    precision_denominator: str = "pred",
) -> EvaluationReport:
    """Average every metric over the dataset and scale to percentages.

    Instances without a prediction record are scored with an empty
    candidate list and counted in ``n_missing_predictions``.
    """
    if len(dataset) == 0:
        raise ValueError("cannot evaluate an empty dataset")
    n = len(dataset)
    missing = 0
    sum_acc1 = 0.0
    sum_acc_top1 = {k: 0.0 for k in ALL_K}
    sum_potential = {k: 0.0 for k in ALL_K}
    sum_map = {k: 0.0 for k in ALL_K}
    sum_precision = {k: 0.0 for k in ALL_K}
    sum_recall = {k: 0.0 for k in ALL_K}

    for inst in dataset:
        gold = GoldView.from_instance(inst)
        pred = predictions.get(inst.id)
        if pred is None:
            missing += 1
            pred = CandidateList(complex_word=inst.complex_word, candidates=())
        else:
            pred = _dedup(pred)
        sum_acc1 += acc_at_1(pred, gold)
        for k in ALL_K:
            sum_acc_top1[k] += acc_k_top1(pred, gold, k)
            sum_potential[k] += potential_k(pred, gold, k)
            sum_map[k] += map_k(pred, gold, k)
            sum_precision[k] += precision_k(pred, gold, k, denominator=precision_denominator)
            sum_recall[k] += recall_k(pred, gold, k)

    def pct(total: float) -> float:
        return 100.0 * total / n

    return EvaluationReport(
        n_instances=n,
        n_missing_predictions=missing,
        acc_at_1=pct(sum_acc1),
        acc_k_top1={k: pct(sum_acc_top1[k]) for k in ACC_TOP1_K},
        potential={k: pct(sum_potential[k]) for k in ALL_K},
        map_k={k: pct(sum_map[k]) for k in ALL_K},
        precision={k: pct(sum_precision[k]) for k in ALL_K},
        recall={k: pct(sum_recall[k]) for k in ALL_K},
    )


def render_report(report: EvaluationReport, title: str | None = None) -> str:
    """Plain-text aligned table with the usual column layout."""
    rows: list[tuple[str, dict[int, float], tuple[int, ...]]] = [
        ("ACC@1", {1: report.acc_at_1}, (1,)),
        ("ACC@k@Top1", report.acc_k_top1, REPORT_COLUMNS["acc_k_top1"]),
        ("Potential@k", report.potential, REPORT_COLUMNS["potential"]),
        ("MAP@k", report.map_k, REPORT_COLUMNS["map_k"]),
        ("Precision@k", report.precision, REPORT_COLUMNS["precision"]),
        ("Recall@k", report.recall, REPORT_COLUMNS["recall"]),
    ]
    all_columns = sorted({k for _, _, columns in rows for k in columns})
    header = ["metric"] + [f"@{k}" for k in all_columns]
    lines = []
    if title:
        lines.append(title)
    table = [header]
    for label, values, columns in rows:
        cells = [label]
        for k in all_columns:
            cells.append(f"{values[k]:.2f}" if k in columns else "")
        table.append(cells)
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row_no, cells in enumerate(table):
        line = "  ".join(
            cells[i].ljust(widths[i]) if i == 0 else cells[i].rjust(widths[i])
            for i in range(len(cells))
        )
        lines.append(line.rstrip())
        if row_no == 0:
            lines.append("-" * len(line.rstrip()))
    lines.append(f"n = {report.n_instances}"
                 + (f", missing predictions = {report.n_missing_predictions}"
                    if report.n_missing_predictions else ""))
    return "\n".join(lines)
