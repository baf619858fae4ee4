"""Parsing the two dataset layouts and making a reproducible split.

Both public layouts are tab-separated, one instance per line. The ranked
layout carries explicit rank prefixes; the annotator layout repeats a
substitution once per annotator (or uses an explicit :count suffix).
"""

import tempfile
from pathlib import Path

from lexsimp import dump_jsonl, load_ranked_dataset, load_tsar, split_dataset

workdir = Path(tempfile.mkdtemp(prefix="lexsimp-demo-"))

# --- ranked layout (LexMTurk / BenchLS / NNSeval) ---------------------------

ranked = workdir / "benchls.tsv"
ranked.write_text(
    "The Hush Sound is currently on hiatus.\thiatus\t6\t1:break\t2:rest\n"
    "It was a compulsory step.\tcompulsory\t3\t1:required\t2:mandatory\t3:needed\n",
    encoding="utf-8",
)
dataset = load_ranked_dataset(ranked, "benchls")
print(f"ranked file -> {len(dataset)} instances")
for inst in dataset:
    print(f"  [{inst.id}] {inst.complex_word!r} at token {inst.word_index}: {inst.gold}")

# Rank 1 gets the largest weight (max_rank - rank + 1), so downstream code
# only ever sees weighted gold lists, whatever the source layout was.

# --- annotator layout (TSAR style) ------------------------------------------

annotated = workdir / "tsar_en.tsv"
annotated.write_text(
    "has yet to stop the carnage that mounts every day.\tcarnage\t"
    "destruction:6\tbloodshed:3\tmassacre:3\tslaughter:3\tcarnage:2\twar:1\n"
    "the issue was big enough\tbig\tlarge\tlarge\thuge\n",
    encoding="utf-8",
)
dataset = load_tsar(annotated)
print(f"\nannotator file -> {len(dataset)} instances")
print("  repeated votes merge:", dataset[1].gold)

# --- deterministic split ------------------------------------------------------

split = split_dataset(dataset, validation_fraction=0.5, seed=42)
print(f"\nsplit with seed {split.seed}: "
      f"{len(split.train)} train / {len(split.validation)} validation")
print("  validation ids:", [inst.id for inst in split.validation])

# --- canonical JSONL interchange ------------------------------------------------

out = workdir / "dataset.jsonl"
dump_jsonl(dataset, out)
print(f"\ncanonical JSONL written to {out}:")
print(out.read_text(encoding="utf-8").splitlines()[0][:100] + " ...")
