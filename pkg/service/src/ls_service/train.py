"""Fine-tuning of the text-to-text generation model on pairs TSV data.

The default hyperparameters are the reference configuration: T5-Large,
8 epochs, AdamW with learning rate 1e-5 and epsilon 1e-8, batch size 8,
maximum sequence length 128.

Two initialization modes:

* ``pretrained``: loads ``t5-{size}`` from the model hub (needs network);
  control tokens and markers ride along as plain text.
* ``scratch``: builds a small randomly initialized model plus a
  sentencepiece tokenizer trained on the TSV itself, for offline smoke
  runs and CI; sizes map to reduced dimension presets, not the real T5
  architecture sizes.
"""

import argparse
import dataclasses
import json
import logging
import random
from dataclasses import dataclass
from pathlib import Path

import torch
from transformers import T5Config, T5ForConditionalGeneration

from .spm_tokenizer import SPM_FILENAME, SpmTokenizer, train_tokenizer

logger = logging.getLogger(__name__)

MODEL_SIZES = ("small", "base", "large")

SCRATCH_PRESETS = {
    "small": dict(d_model=64, d_ff=256, num_layers=2, num_heads=4, d_kv=16),
    "base": dict(d_model=128, d_ff=512, num_layers=3, num_heads=4, d_kv=32),
    "large": dict(d_model=256, d_ff=1024, num_layers=4, num_heads=8, d_kv=32),
}

SPEC_FILENAME = "train_spec.json"
LOSS_LOG_FILENAME = "loss_log.json"


class ServiceError(Exception):
    """Raised for unusable training or serving configurations."""


@dataclass
class TrainSpec:
    """Training configuration; defaults are the reference setup."""

    train_tsv: str
    model_size: str = "large"
    epochs: int = 8
    learning_rate: float = 1e-5
    adam_epsilon: float = 1e-8
    batch_size: int = 8
    max_length: int = 128
    init: str = "pretrained"
    seed: int = 42
    vocab_size: int = 512

    def __post_init__(self):
        if self.model_size not in MODEL_SIZES:
            raise ServiceError(f"model_size must be one of {MODEL_SIZES}, got {self.model_size!r}")
        if self.init not in ("pretrained", "scratch"):
            raise ServiceError(f"init must be 'pretrained' or 'scratch', got {self.init!r}")
        if self.epochs < 1 or self.batch_size < 1 or self.max_length < 8:
            raise ServiceError("epochs and batch_size must be >= 1, max_length >= 8")


def read_pairs(path: str | Path) -> list[tuple[str, str]]:
    path = Path(path)
    if not path.exists():
        raise ServiceError(
            f"training TSV {path} does not exist; run the toolkit's preprocess "
            "command first"
        )
    pairs = []
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != 2:
                raise ServiceError(
                    f"{path}:{line_no}: expected two tab-separated columns, got {len(columns)}"
                )
            pairs.append((columns[0], columns[1]))
    if not pairs:
        raise ServiceError(f"training TSV {path} is empty")
    return pairs


def _pad_batch(sequences: list[list[int]], pad_id: int) -> torch.Tensor:
    width = max(len(seq) for seq in sequences)
    return torch.tensor([seq + [pad_id] * (width - len(seq)) for seq in sequences])


def _load_model_and_tokenizer(spec: TrainSpec, pairs, out_dir: Path):
    if spec.init == "scratch":
        texts = [text for pair in pairs for text in pair]
        tokenizer = train_tokenizer(texts, out_dir, vocab_size=spec.vocab_size)
        config = T5Config(
            vocab_size=tokenizer.vocab_size,
            decoder_start_token_id=tokenizer.pad_id,
            pad_token_id=tokenizer.pad_id,
            eos_token_id=tokenizer.eos_id,
            **SCRATCH_PRESETS[spec.model_size],
        )
        model = T5ForConditionalGeneration(config)
        model_name = f"t5-scratch-{spec.model_size}"
        return model, tokenizer, model_name

    from transformers import AutoTokenizer  # hub access happens only here

    model_name = f"t5-{spec.model_size}"
    try:
        hub_tokenizer = AutoTokenizer.from_pretrained(model_name)
        model = T5ForConditionalGeneration.from_pretrained(model_name)
    except Exception as exc:
        raise ServiceError(
            f"could not load {model_name} from the model hub ({exc}); "
            "use init='scratch' for offline runs"
        ) from exc
    hub_tokenizer.save_pretrained(out_dir)
    return model, _HubTokenizer(hub_tokenizer), model_name


class _HubTokenizer:
    """Adapts a hub tokenizer to the encode/decode surface used here."""

    def __init__(self, tokenizer):
        self._tokenizer = tokenizer
        self.pad_id = tokenizer.pad_token_id
        self.eos_id = tokenizer.eos_token_id

    def encode(self, text, max_length=None, add_eos=True):
        return self._tokenizer.encode(
            text, truncation=max_length is not None, max_length=max_length
        )

    def decode(self, ids):
        return self._tokenizer.decode(ids, skip_special_tokens=True)


def train(spec: TrainSpec, out_dir: str | Path) -> Path:
    """Fine-tune with the given training spec and save a checkpoint directory.

    The checkpoint is self-contained: model weights, tokenizer, the exact
    TrainSpec used, and the per-step loss log.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    pairs = read_pairs(spec.train_tsv)

    torch.manual_seed(spec.seed)
    model, tokenizer, model_name = _load_model_and_tokenizer(spec, pairs, out_dir)
    device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
    model.to(device)
    model.train()

    optimizer = torch.optim.AdamW(
        model.parameters(), lr=spec.learning_rate, eps=spec.adam_epsilon
    )

    encoded = [
        (
            tokenizer.encode(source, max_length=spec.max_length),
            tokenizer.encode(target, max_length=spec.max_length),
        )
        for source, target in pairs
    ]

    rng = random.Random(spec.seed)
    losses: list[float] = []
    step = 0
    for epoch in range(1, spec.epochs + 1):
        order = list(range(len(encoded)))
        rng.shuffle(order)
        for start in range(0, len(order), spec.batch_size):
            batch = [encoded[i] for i in order[start:start + spec.batch_size]]
            input_ids = _pad_batch([s for s, _ in batch], tokenizer.pad_id).to(device)
            attention_mask = (input_ids != tokenizer.pad_id).long()
            labels = _pad_batch([t for _, t in batch], tokenizer.pad_id).to(device)
            labels[labels == tokenizer.pad_id] = -100

            optimizer.zero_grad()
            output = model(input_ids=input_ids, attention_mask=attention_mask, labels=labels)
            output.loss.backward()
            optimizer.step()

            step += 1
            losses.append(float(output.loss.item()))
            logger.info("epoch %d step %d loss %.4f", epoch, step, losses[-1])

    model.save_pretrained(out_dir)
    (out_dir / SPEC_FILENAME).write_text(
        json.dumps({"model_name": model_name, **dataclasses.asdict(spec)}, indent=2) + "\n",
        encoding="utf-8",
    )
    (out_dir / LOSS_LOG_FILENAME).write_text(
        json.dumps({"losses": losses}) + "\n", encoding="utf-8"
    )
    logger.info("checkpoint saved to %s (first loss %.4f, last loss %.4f)",
                out_dir, losses[0], losses[-1])
    return out_dir


def load_checkpoint(checkpoint: str | Path):
    """Load (model, tokenizer, model_name, spec dict) from a checkpoint dir."""
    checkpoint = Path(checkpoint)
    spec_file = checkpoint / SPEC_FILENAME
    if not spec_file.exists():
        raise ServiceError(f"{checkpoint} is not a checkpoint directory (no {SPEC_FILENAME})")
    spec = json.loads(spec_file.read_text(encoding="utf-8"))
    try:
        model = T5ForConditionalGeneration.from_pretrained(checkpoint)
    except Exception as exc:
        raise ServiceError(f"could not load model weights from {checkpoint}: {exc}") from exc
    if (checkpoint / SPM_FILENAME).exists():
        tokenizer = SpmTokenizer(checkpoint / SPM_FILENAME)
    else:
        from transformers import AutoTokenizer

        tokenizer = _HubTokenizer(AutoTokenizer.from_pretrained(checkpoint))
    model.eval()
    return model, tokenizer, spec.get("model_name", "unknown"), spec


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ls-service-train",
        description="Fine-tune the generation model on preprocess output.",
    )
    parser.add_argument("--train-tsv", required=True, help="pairs TSV (source TAB target)")
    parser.add_argument("--out", required=True, help="checkpoint directory to create")
    parser.add_argument("--model-size", choices=list(MODEL_SIZES), default="large")
    parser.add_argument("--epochs", type=int, default=8)
    parser.add_argument("--learning-rate", type=float, default=1e-5)
    parser.add_argument("--adam-epsilon", type=float, default=1e-8)
    parser.add_argument("--batch-size", type=int, default=8)
    parser.add_argument("--max-length", type=int, default=128)
    parser.add_argument("--init", choices=["pretrained", "scratch"], default="pretrained")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s %(message)s")
    spec = TrainSpec(
        train_tsv=args.train_tsv,
        model_size=args.model_size,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        adam_epsilon=args.adam_epsilon,
        batch_size=args.batch_size,
        max_length=args.max_length,
        init=args.init,
        seed=args.seed,
    )
    try:
        train(spec, args.out)
    except ServiceError as exc:
        print(f"error: {exc}")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
