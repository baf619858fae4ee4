"""The full batch loop: generate candidates, post-process, evaluate at K.

Two offline providers are shown: the gold oracle (an upper bound that
should score 100 everywhere) and a neighbor-table baseline whose mistakes
show up across the metric grid.
"""

from lexsimp import (
    ControlValues,
    Dataset,
    GoldOracleProvider,
    Instance,
    LexiconTableProvider,
    evaluate,
    render_report,
    run_generation,
)

dataset = Dataset(
    name="benchls",
    instances=(
        Instance(id=0, sentence="currently on hiatus here", complex_word="hiatus",
                 word_index=2, gold=(("break", 4), ("rest", 1))),
        Instance(id=1, sentence="a compulsory test", complex_word="compulsory",
                 word_index=1, gold=(("required", 3), ("mandatory", 1))),
        Instance(id=2, sentence="the carnage mounts", complex_word="carnage",
                 word_index=1, gold=(("destruction", 6), ("bloodshed", 3), ("war", 1))),
    ),
)
control = ControlValues(cr=1.00, wl=0.85, wr=0.80)

print("=== gold oracle (upper bound) ===")
oracle = GoldOracleProvider(dataset)
predictions, diagnostics = run_generation(dataset, oracle, control, k=10)
print(render_report(evaluate(dataset, predictions)))

print("\n=== neighbor-table baseline ===")
baseline = LexiconTableProvider({
    "hiatus": ["pause", "break", "gap"],
    "compulsory": ["forced", "mandatory"],
    "carnage": ["carnage", "chaos", "destruction"],  # echoes the complex word
})
predictions, diagnostics = run_generation(dataset, baseline, control, k=10)
for instance_id, prediction in predictions.items():
    print(f"  [{instance_id}] {prediction.complex_word}: {list(prediction.candidates)}")
print()
print(render_report(evaluate(dataset, predictions)))
print("\n(the echoed complex word was filtered before scoring; "
      f"extraction failures: {diagnostics.extraction_failures})")
