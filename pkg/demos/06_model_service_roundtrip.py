"""The whole loop against a real model service: preprocess, train, serve,
generate, evaluate.

Uses the optional service package (see service/) with a tiny from-scratch
model so everything runs offline in seconds. The toy model's outputs are
mostly noise; the point is the plumbing: byte-identical source strings on
both sides of the wire, marker extraction, post-processing, and the metric
grid at the end.
"""

import socket
import tempfile
import threading
import time
from pathlib import Path

try:
    import uvicorn
    from ls_service import TrainSpec, create_app, train
except ImportError:
    raise SystemExit("this demo needs the service package: pip install -e service/")

from lexsimp import (
    ControlValues,
    RemoteProvider,
    evaluate,
    load_tsar,
    render_report,
    run_generation,
)
from lexsimp.cli import main as lexsimp_cli

workdir = Path(tempfile.mkdtemp(prefix="lexsimp-service-demo-"))

# --- a small training corpus in the annotator layout -------------------------

corpus = workdir / "tsar_en.tsv"
corpus.write_text(
    "".join(
        f"entry {i} holds a mystery{i} token\tmystery{i}\tpuzzle{i}:3\triddle{i}:1\n"
        for i in range(12)
    ),
    encoding="utf-8",
)
vocab = workdir / "vocab.txt"
vocab.write_text("\n".join(
    ["entry", "holds", "token", "a"]
    + [w for i in range(12) for w in (f"puzzle{i}", f"riddle{i}", f"mystery{i}")]
), encoding="utf-8")

# --- preprocess through the CLI ----------------------------------------------

out = workdir / "preprocessed"
assert lexsimp_cli(["preprocess", "--dataset", str(corpus), "--lexicon", str(vocab),
                    "--out", str(out), "--seed", "42"]) == 0
print(f"training pairs at {out / 'pairs.train.tsv'}")

# --- toy fine-tune -------------------------------------------------------------

print("training a tiny from-scratch model (seconds on CPU)...")
checkpoint = train(
    TrainSpec(train_tsv=str(out / "pairs.train.tsv"), model_size="small",
              epochs=2, learning_rate=1e-3, init="scratch", seed=7),
    workdir / "checkpoint",
)

# --- serve on a local socket ----------------------------------------------------

with socket.socket() as probe:
    probe.bind(("127.0.0.1", 0))
    port = probe.getsockname()[1]
server = uvicorn.Server(uvicorn.Config(create_app(checkpoint), host="127.0.0.1",
                                       port=port, log_level="error"))
threading.Thread(target=server.run, daemon=True).start()
while not server.started:
    time.sleep(0.05)
endpoint = f"http://127.0.0.1:{port}"
print(f"service up at {endpoint}")

# --- generate and evaluate over the wire -----------------------------------------

dataset = load_tsar(corpus)
with RemoteProvider(endpoint) as provider:
    predictions, diagnostics = run_generation(
        dataset, provider, ControlValues(cr=1.00, wl=0.80, wr=0.75),
        k=10, num_return=8,
    )
print(f"generated for {len(predictions)} instances "
      f"(provider failures: {len(diagnostics.provider_failures)}, "
      f"sequences without markers: {diagnostics.extraction_failures})")

print()
print(render_report(evaluate(dataset, predictions),
                    title="toy model over the wire (noise expected)"))
server.should_exit = True
