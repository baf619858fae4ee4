"""Exhaustive grid search for inference-time length/rarity token values.

The search scores every (WL, WR) grid point by mean accuracy@1@top1 over a
validation set, with CR held fixed. Grid values pass through the same
two-decimal rendering as the control tokens, so every searched value is
representable in the token vocabulary. Ties resolve to the first point in
row-major order (WL outer ascending, WR inner ascending).
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .control_tokens import CR_VALUES, ControlValues, round2
from .dataset_io import Instance
from .errors import LexsimpError
from .generator import (
    DEFAULT_NUM_RETURN,
    GenerationProvider,
    _candidates_for_instance,
)
from .metrics import GoldView, acc_k_top1

logger = logging.getLogger(__name__)


def _axis(lo: float, hi: float, step: float) -> tuple[float, ...]:
    values = []
    i = 0
    while True:
        value = lo + i * step
        if value > hi + 1e-9:
            break
        values.append(round2(value))
        i += 1
    return tuple(values)


@dataclass(frozen=True)
class SearchSpace:
    """Inclusive (WL, WR) grid with a fixed CR."""

    wl_min: float = 0.5
    wl_max: float = 1.25
    wr_min: float = 0.5
    wr_max: float = 1.25
    step: float = 0.05
    cr_fixed: float = 1.0

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.wl_min > self.wl_max or self.wr_min > self.wr_max:
            raise ValueError("axis minimum exceeds maximum")
        if self.cr_fixed not in CR_VALUES:
            raise ValueError(f"cr_fixed must be one of {CR_VALUES}, got {self.cr_fixed}")

    def wl_values(self) -> tuple[float, ...]:
        return _axis(self.wl_min, self.wl_max, self.step)

    def wr_values(self) -> tuple[float, ...]:
        return _axis(self.wr_min, self.wr_max, self.step)

    def points(self) -> list[tuple[float, float]]:
        return [(wl, wr) for wl in self.wl_values() for wr in self.wr_values()]


@dataclass(frozen=True)
class SearchResult:
    """Argmax of the grid plus the full trace in iteration order."""

    best_wl: float
    best_wr: float
    best_score: float
    trace: tuple[tuple[float, float, float], ...]

    def to_json_dict(self) -> dict:
        return {
            "best_wl": self.best_wl,
            "best_wr": self.best_wr,
            "best_score": self.best_score,
            "trace": [
                {"wl": wl, "wr": wr, "score": score} for wl, wr, score in self.trace
            ],
        }


def grid_search(
    validation: Sequence[Instance],
    provider: GenerationProvider,
    space: SearchSpace,
    k: int = 10,
    num_return: int = DEFAULT_NUM_RETURN,
    jobs: int = 1,
) -> SearchResult:
    """Score every grid point and return the first argmax with a full trace.

    A provider failure on one instance scores that instance 0 for the
    current point. If every generation call at every point fails, the
    search itself is considered failed.
    """
    validation = list(validation)
    if not validation:
        raise ValueError("validation set is empty")
    gold_views = [GoldView.from_instance(inst) for inst in validation]
    points = space.points()

    def score_point(point: tuple[float, float]) -> tuple[float, int]:
        wl, wr = point
        control = ControlValues(cr=space.cr_fixed, wl=wl, wr=wr)
        hits = 0
        successes = 0
        for inst, gold in zip(validation, gold_views):
            prediction, failure, _ = _candidates_for_instance(
                inst, provider, control, k, num_return
            )
            if failure is None:
                successes += 1
                hits += acc_k_top1(prediction, gold, 1)
            # a failed instance contributes 0
        return 100.0 * hits / len(validation), successes

    if jobs > 1 and provider.concurrent_safe and len(points) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            scored = list(pool.map(score_point, points))
    else:
        scored = [score_point(point) for point in points]

    if all(successes == 0 for _, successes in scored):
        raise LexsimpError("generation failed for every instance at every grid point")

    trace = tuple(
        (wl, wr, score) for (wl, wr), (score, _) in zip(points, scored)
    )
    best_wl, best_wr, best_score = max(trace, key=lambda entry: entry[2])
    # max() keeps the first maximum, which is the row-major tie-break.
    return SearchResult(best_wl=best_wl, best_wr=best_wr, best_score=best_score, trace=trace)


def render_heat_table(result: SearchResult) -> str:
    """Two-axis text table of scores, WL down the rows, WR across the columns."""
    wl_values = sorted({wl for wl, _, _ in result.trace})
    wr_values = sorted({wr for _, wr, _ in result.trace})
    by_point = {(wl, wr): score for wl, wr, score in result.trace}
    header = ["wl \\ wr"] + [f"{wr:.2f}" for wr in wr_values]
    rows = [header]
    for wl in wl_values:
        rows.append(
            [f"{wl:.2f}"] + [f"{by_point[(wl, wr)]:.2f}" for wr in wr_values]
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = []
    for row in rows:
        lines.append("  ".join(cell.rjust(widths[i]) for i, cell in enumerate(row)))
    lines.append(
        f"best: wl={result.best_wl:.2f} wr={result.best_wr:.2f} "
        f"score={result.best_score:.2f}"
    )
    return "\n".join(lines)
