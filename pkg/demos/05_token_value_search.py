"""Grid-searching the inference-time token values.

The search sweeps WL and WR over 0.50..1.25 in steps of 0.05 (256 points,
CR fixed at 1.00) and keeps the pair that maximizes accuracy@1@top1 on a
validation set. Here a synthetic provider only answers correctly at
(0.80, 0.75), so the search must land exactly there.
"""

from lexsimp import Dataset, Instance, SearchSpace, grid_search, render_heat_table
from lexsimp.generator import GenerationResponse


class PlantedOptimumProvider:
    """Correct answers only at one grid point, noise everywhere else."""

    name = "planted"
    returns_full_sequences = False
    concurrent_safe = True

    def __init__(self, dataset, wl, wr):
        self._best = {inst.sentence: inst.gold[0][0] for inst in dataset}
        self._point = (wl, wr)

    def generate(self, request):
        if (request.control.wl, request.control.wr) == self._point:
            answer = self._best[request.sentence]
        else:
            answer = "noise"
        return GenerationResponse(candidates=((answer, None),), provider=self.name)


validation = Dataset(
    name="tsar_en",
    instances=tuple(
        Instance(id=i, sentence=f"entry {i} holds a mystery{i} token",
                 complex_word=f"mystery{i}", word_index=4,
                 gold=((f"puzzle{i}", 3), (f"riddle{i}", 1)))
        for i in range(12)
    ),
)

provider = PlantedOptimumProvider(validation, wl=0.80, wr=0.75)
space = SearchSpace()  # 0.50..1.25 step 0.05 on both axes, CR fixed at 1.00
print(f"searching {len(space.points())} grid points "
      f"on {len(validation)} validation instances...")

result = grid_search(validation.instances, provider, space)
print(f"found wl={result.best_wl} wr={result.best_wr} "
      f"with accuracy@1@top1 = {result.best_score}\n")

# a compact view of one WL row around the optimum
row = [(wl, wr, s) for wl, wr, s in result.trace if wl == result.best_wl]
print("scores along wl =", result.best_wl)
print("  " + "  ".join(f"{wr:.2f}:{s:.0f}" for _, wr, s in row))

# the full two-axis table is available as text
heat = render_heat_table(result)
print("\nfirst rows of the heat table:")
print("\n".join(heat.splitlines()[:5]))
