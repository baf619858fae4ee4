import json

import pytest

from lexsimp import (
    GoldOracleProvider,
    LexsimpError,
    SearchSpace,
    grid_search,
    render_heat_table,
)
from lexsimp.generator import GenerationResponse


class PlantedOptimumProvider:
    """Returns the gold top-1 only at one (wl, wr) point, garbage elsewhere."""

    name = "planted"
    returns_full_sequences = False
    concurrent_safe = True

    def __init__(self, dataset, wl, wr):
        self._top1 = {
            (inst.sentence, inst.word_index): inst.gold[0][0] for inst in dataset
        }
        self.wl = wl
        self.wr = wr

    def generate(self, request):
        if (request.control.wl, request.control.wr) == (self.wl, self.wr):
            text = self._top1[(request.sentence, request.word_index)]
        else:
            text = "garbagezz"
        return GenerationResponse(candidates=((text, None),), provider=self.name)


class FailingProvider:
    name = "failing"
    returns_full_sequences = False
    concurrent_safe = True

    def generate(self, request):
        raise LexsimpError("always down")


def test_default_space_has_256_points():
    space = SearchSpace()
    assert len(space.points()) == 256
    assert space.wl_values()[0] == 0.5
    assert space.wl_values()[-1] == 1.25
    assert len(space.wl_values()) == 16


def test_axis_values_are_two_decimal_rendered():
    space = SearchSpace(wl_min=0.5, wl_max=0.65, wr_min=1.0, wr_max=1.0, step=0.05)
    assert space.wl_values() == (0.5, 0.55, 0.6, 0.65)
    assert space.wr_values() == (1.0,)


def test_degenerate_single_point(tiny_dataset):
    space = SearchSpace(wl_min=0.8, wl_max=0.8, wr_min=0.75, wr_max=0.75, step=0.05)
    provider = GoldOracleProvider(tiny_dataset)
    result = grid_search(tiny_dataset.instances, provider, space)
    assert len(result.trace) == 1
    assert (result.best_wl, result.best_wr) == (0.8, 0.75)


def test_planted_optimum_recovered(tiny_dataset):
    provider = PlantedOptimumProvider(tiny_dataset, wl=0.8, wr=0.75)
    result = grid_search(tiny_dataset.instances, provider, SearchSpace())
    assert (result.best_wl, result.best_wr) == (0.8, 0.75)
    assert result.best_score == 100.0
    assert len(result.trace) == 256


def test_trace_scores_bounded_and_argmax_consistent(tiny_dataset):
    provider = PlantedOptimumProvider(tiny_dataset, wl=1.05, wr=0.5)
    result = grid_search(tiny_dataset.instances, provider, SearchSpace())
    assert all(0.0 <= score <= 100.0 for _, _, score in result.trace)
    assert result.best_score == max(score for _, _, score in result.trace)


def test_tie_break_is_first_in_row_major_order(tiny_dataset):
    # oracle scores 100 everywhere, so the first grid point must win
    provider = GoldOracleProvider(tiny_dataset)
    space = SearchSpace(wl_min=0.5, wl_max=0.55, wr_min=0.5, wr_max=0.55, step=0.05)
    result = grid_search(tiny_dataset.instances, provider, space)
    assert (result.best_wl, result.best_wr) == (0.5, 0.5)


def test_trace_is_row_major(tiny_dataset):
    provider = GoldOracleProvider(tiny_dataset)
    space = SearchSpace(wl_min=0.5, wl_max=0.55, wr_min=0.7, wr_max=0.75, step=0.05)
    result = grid_search(tiny_dataset.instances, provider, space)
    assert [(wl, wr) for wl, wr, _ in result.trace] == [
        (0.5, 0.7), (0.5, 0.75), (0.55, 0.7), (0.55, 0.75)
    ]


def test_reruns_are_byte_identical(tiny_dataset):
    provider = PlantedOptimumProvider(tiny_dataset, wl=0.6, wr=1.2)
    space = SearchSpace(wl_min=0.5, wl_max=0.7, wr_min=1.1, wr_max=1.25, step=0.05)
    first = json.dumps(grid_search(tiny_dataset.instances, provider, space).to_json_dict())
    second = json.dumps(grid_search(tiny_dataset.instances, provider, space).to_json_dict())
    assert first == second


def test_parallel_matches_serial(tiny_dataset):
    provider = PlantedOptimumProvider(tiny_dataset, wl=0.9, wr=0.95)
    space = SearchSpace(wl_min=0.85, wl_max=1.0, wr_min=0.85, wr_max=1.0, step=0.05)
    serial = grid_search(tiny_dataset.instances, provider, space, jobs=1)
    parallel = grid_search(tiny_dataset.instances, provider, space, jobs=4)
    assert serial == parallel


def test_empty_validation_rejected(tiny_dataset):
    with pytest.raises(ValueError):
        grid_search([], GoldOracleProvider(tiny_dataset), SearchSpace())


def test_total_generator_failure_is_an_error(tiny_dataset):
    space = SearchSpace(wl_min=0.5, wl_max=0.55, wr_min=0.5, wr_max=0.5, step=0.05)
    with pytest.raises(LexsimpError, match="every instance"):
        grid_search(tiny_dataset.instances, FailingProvider(), space)


def test_space_validation():
    with pytest.raises(ValueError):
        SearchSpace(step=0.0)
    with pytest.raises(ValueError):
        SearchSpace(wl_min=1.0, wl_max=0.5)
    with pytest.raises(ValueError):
        SearchSpace(cr_fixed=0.33)


def test_heat_table_renders_grid(tiny_dataset):
    provider = GoldOracleProvider(tiny_dataset)
    space = SearchSpace(wl_min=0.5, wl_max=0.6, wr_min=0.5, wr_max=0.6, step=0.05)
    table = render_heat_table(grid_search(tiny_dataset.instances, provider, space))
    lines = table.splitlines()
    assert len(lines) == 3 + 2  # header + 3 wl rows + best line
    assert "best:" in lines[-1]
