"""Command-line entry point for reproducible batch workflows.

Subcommands: preprocess, stats, generate, search, evaluate, report.
Configuration precedence: command-line flags override config-file keys
override built-in defaults; the effective configuration is echoed into
every JSON artifact under the "config" key.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .candidate_post import read_predictions, write_predictions
from .control_tokens import ControlValues, build_training_pairs, write_pairs_tsv
from .corpus_stats import frequency_stats, length_stats
from .dataset_io import (
    DATASET_NAMES,
    Dataset,
    dump_jsonl,
    load_jsonl,
    load_ranked_dataset,
    load_tsar,
    split_dataset,
)
from .errors import LexsimpError
from .freq_lexicon import load_lexicon
from .generator import (
    DEFAULT_NUM_RETURN,
    GoldOracleProvider,
    LexiconTableProvider,
    RemoteProvider,
    run_generation,
)
from .metrics import evaluate, render_report
from .token_search import SearchSpace, grid_search, render_heat_table

DEFAULTS = {
    "format": "tsar",
    "name": None,
    "validation_fraction": 0.10,
    "seed": 42,
    "k": 10,
    "num_return": DEFAULT_NUM_RETURN,
    "jobs": 1,
    "provider": "gold-oracle",
    "endpoint": None,
    "neighbors": None,
    "lexicon": None,
    "limit": None,
    "wr_method": "log",
    "wl": 1.0,
    "wr": 1.0,
    "cr": 1.0,
    "wl_min": 0.5,
    "wl_max": 1.25,
    "wr_min": 0.5,
    "wr_max": 1.25,
    "step": 0.05,
    "timeout": 30.0,
}


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, encoding="utf-8") as handle:
        config = json.load(handle)
    if not isinstance(config, dict):
        raise LexsimpError(f"config file {path} must hold a flat JSON object")
    return config


class _Resolver:
    """flags > config file > built-in defaults, with a provenance echo."""

    def __init__(self, args: argparse.Namespace):
        self._args = vars(args)
        self._config = _load_config_file(self._args.get("config"))
        self.effective: dict = {}

    def get(self, key: str, default=None):
        value = self._args.get(key)
        if value is None:
            value = self._config.get(key)
        if value is None:
            value = DEFAULTS.get(key, default)
        self.effective[key] = value
        return value


def _infer_name(path: str, explicit: str | None) -> str:
    if explicit:
        if explicit not in DATASET_NAMES:
            raise LexsimpError(f"unknown dataset name {explicit!r}; expected one of {DATASET_NAMES}")
        return explicit
    stem = Path(path).stem.lower().replace("-", "_")
    for name in DATASET_NAMES:
        if name in stem or name.replace("_", "") in stem.replace("_", ""):
            return name
    raise LexsimpError(
        f"cannot infer dataset name from {path!r}; pass --name with one of {DATASET_NAMES}"
    )


def _load_dataset(cfg: _Resolver) -> Dataset:
    path = cfg.get("dataset")
    if not path:
        raise LexsimpError("--dataset is required")
    fmt = cfg.get("format")
    if fmt == "tsar":
        dataset = load_tsar(path)
        cfg.effective["name"] = dataset.name
        return dataset
    name = _infer_name(path, cfg.get("name"))
    if fmt == "ranked":
        return load_ranked_dataset(path, name)
    if fmt == "jsonl":
        return load_jsonl(path, name)
    raise LexsimpError(f"unknown dataset format {fmt!r}; expected tsar, ranked, or jsonl")


def _build_provider(cfg: _Resolver, dataset: Dataset):
    kind = cfg.get("provider")
    if kind == "gold-oracle":
        return GoldOracleProvider(dataset)
    if kind == "lexicon":
        neighbors = cfg.get("neighbors")
        if not neighbors:
            raise LexsimpError("--neighbors TSV is required for the lexicon provider")
        return LexiconTableProvider.from_tsv(neighbors)
    if kind == "remote":
        endpoint = cfg.get("endpoint")
        if not endpoint:
            raise LexsimpError("--endpoint is required for the remote provider")
        return RemoteProvider(endpoint, timeout=float(cfg.get("timeout")))
    raise LexsimpError(f"unknown provider {kind!r}; expected gold-oracle, lexicon, or remote")


def _write_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=False)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def cmd_preprocess(args: argparse.Namespace) -> int:
    cfg = _Resolver(args)
    dataset = _load_dataset(cfg)
    if len(dataset) == 0:
        raise LexsimpError("dataset is empty; nothing to preprocess")
    lexicon_path = cfg.get("lexicon")
    if not lexicon_path:
        raise LexsimpError("--lexicon is required")
    lexicon = load_lexicon(lexicon_path, limit=cfg.get("limit"))
    wr_method = cfg.get("wr_method")
    seed = int(cfg.get("seed"))
    fraction = float(cfg.get("validation_fraction"))
    out_dir = Path(cfg.get("out") or ".")
    out_dir.mkdir(parents=True, exist_ok=True)

    split = split_dataset(dataset, fraction, seed=seed)
    validation_ids = {inst.id for inst in split.validation}

    pairs_by_id = {
        inst.id: build_training_pairs(inst, lexicon, wr_method=wr_method)
        for inst in dataset
    }
    write_pairs_tsv(
        (pair for inst in dataset for pair in pairs_by_id[inst.id]),
        out_dir / "pairs.tsv",
    )
    write_pairs_tsv(
        (pair for inst in dataset if inst.id not in validation_ids for pair in pairs_by_id[inst.id]),
        out_dir / "pairs.train.tsv",
    )
    write_pairs_tsv(
        (pair for inst in dataset if inst.id in validation_ids for pair in pairs_by_id[inst.id]),
        out_dir / "pairs.valid.tsv",
    )
    dump_jsonl(dataset, out_dir / "dataset.jsonl")
    manifest = {
        "seed": seed,
        "n_train": len(split.train),
        "n_validation": len(split.validation),
        "train_ids": [inst.id for inst in split.train],
        "validation_ids": [inst.id for inst in split.validation],
        "config": cfg.effective,
    }
    _write_json(manifest, str(out_dir / "split.json"))
    print(f"wrote {sum(len(p) for p in pairs_by_id.values())} pairs to {out_dir / 'pairs.tsv'}")
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    cfg = _Resolver(args)
    dataset = _load_dataset(cfg)
    lengths = length_stats(dataset)
    payload = {
        "n_instances": lengths.n_instances,
        "n_longer": lengths.n_longer,
        "n_shorter": lengths.n_shorter,
        "n_equal": lengths.n_equal,
        "pct_complex_longer": lengths.pct_complex_longer,
        "pct_complex_shorter": lengths.pct_complex_shorter,
        "pct_equal": lengths.pct_equal,
    }
    lexicon_path = cfg.get("lexicon")
    if lexicon_path:
        frequencies = frequency_stats(dataset, load_lexicon(lexicon_path, limit=cfg.get("limit")))
        payload.update(
            {
                "n_evaluated": frequencies.n_evaluated,
                "n_rarer": frequencies.n_rarer,
                "n_ties": frequencies.n_ties,
                "pct_complex_rarer": frequencies.pct_complex_rarer,
                "pct_ties": frequencies.pct_ties,
            }
        )
    payload["config"] = cfg.effective
    _write_json(payload, cfg.get("out"))
    return 0


def _control_from_cfg(cfg: _Resolver) -> ControlValues:
    return ControlValues(
        cr=float(cfg.get("cr")), wl=float(cfg.get("wl")), wr=float(cfg.get("wr"))
    )


def cmd_generate(args: argparse.Namespace) -> int:
    cfg = _Resolver(args)
    dataset = _load_dataset(cfg)
    provider = _build_provider(cfg, dataset)
    control = _control_from_cfg(cfg)
    predictions, diagnostics = run_generation(
        dataset,
        provider,
        control,
        k=int(cfg.get("k")),
        num_return=int(cfg.get("num_return")),
        jobs=int(cfg.get("jobs")),
    )
    out = cfg.get("out")
    if not out:
        raise LexsimpError("--out prediction JSONL path is required")
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    write_predictions(predictions, out)
    sidecar = {
        "n_instances": len(dataset),
        "diagnostics": diagnostics.as_dict(),
        "config": cfg.effective,
    }
    _write_json(sidecar, str(Path(out).with_suffix(".meta.json")))
    print(f"wrote {len(predictions)} prediction records to {out}")
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    cfg = _Resolver(args)
    dataset = _load_dataset(cfg)
    provider = _build_provider(cfg, dataset)
    space = SearchSpace(
        wl_min=float(cfg.get("wl_min")),
        wl_max=float(cfg.get("wl_max")),
        wr_min=float(cfg.get("wr_min")),
        wr_max=float(cfg.get("wr_max")),
        step=float(cfg.get("step")),
        cr_fixed=float(cfg.get("cr")),
    )
    split = split_dataset(dataset, float(cfg.get("validation_fraction")), seed=int(cfg.get("seed")))
    result = grid_search(
        split.validation,
        provider,
        space,
        k=int(cfg.get("k")),
        num_return=int(cfg.get("num_return")),
        jobs=int(cfg.get("jobs")),
    )
    payload = result.to_json_dict()
    payload["n_validation"] = len(split.validation)
    payload["config"] = cfg.effective
    _write_json(payload, cfg.get("out"))
    print(render_heat_table(result))
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = _Resolver(args)
    dataset = _load_dataset(cfg)
    predictions_path = cfg.get("predictions")
    if not predictions_path:
        raise LexsimpError("--predictions JSONL path is required")
    predictions = read_predictions(predictions_path)
    allow_missing = bool(cfg.get("allow_missing", False))
    if not allow_missing:
        dataset_ids = {inst.id for inst in dataset}
        for inst in dataset:
            if inst.id not in predictions:
                raise LexsimpError(f"prediction file is missing dataset id {inst.id}")
        for instance_id in predictions:
            if instance_id not in dataset_ids:
                raise LexsimpError(f"prediction id {instance_id} is not in the dataset")
    report = evaluate(dataset, predictions, precision_denominator=cfg.get("precision_denominator", "pred") or "pred")
    payload = report.to_json_dict()
    payload["config"] = cfg.effective
    _write_json(payload, cfg.get("out"))
    print(render_report(report, title=f"{dataset.name} (n={len(dataset)})"))
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    cfg = _Resolver(args)
    path = cfg.get("report")
    if not path:
        raise LexsimpError("--report JSON path is required")
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    from .metrics import EvaluationReport

    report = EvaluationReport(
        n_instances=payload["n_instances"],
        n_missing_predictions=payload.get("n_missing_predictions", 0),
        acc_at_1=payload["acc_at_1"],
        acc_k_top1={int(k): v for k, v in payload["acc_k_top1"].items()},
        potential={int(k): v for k, v in payload["potential"].items()},
        map_k={int(k): v for k, v in payload["map_k"].items()},
        precision={int(k): v for k, v in payload["precision"].items()},
        recall={int(k): v for k, v in payload["recall"].items()},
    )
    print(render_report(report))
    return 0


def _add_dataset_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dataset", help="path to the dataset file")
    parser.add_argument("--format", choices=["tsar", "ranked", "jsonl"],
                        help="dataset file layout (default: tsar)")
    parser.add_argument("--name", choices=list(DATASET_NAMES),
                        help="dataset name; inferred from the filename when omitted")


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat JSON config file; flags override its keys")
    parser.add_argument("--out", help="output path (stdout for JSON commands when omitted)")
    parser.add_argument("--seed", type=int, help="random seed (default: 42)")
    parser.add_argument("--jobs", type=int, help="parallelism bound (default: 1)")


def _add_provider_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--provider", choices=["gold-oracle", "lexicon", "remote"],
                        help="candidate source (default: gold-oracle)")
    parser.add_argument("--neighbors", help="neighbor-table TSV for the lexicon provider")
    parser.add_argument("--endpoint", help="base URL for the remote provider")
    parser.add_argument("--timeout", type=float, help="remote request timeout in seconds (default: 30)")
    parser.add_argument("--num-return", dest="num_return", type=int,
                        help="sequences requested per instance (default: 15)")
    parser.add_argument("--k", type=int, help="candidates kept after post-processing (default: 10)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexsimp",
        description="Batch toolkit for controllable lexical simplification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="build control-token training pairs and the split manifest")
    _add_dataset_flags(p)
    _add_common_flags(p)
    p.add_argument("--lexicon", help="frequency-ordered word list or vectors file")
    p.add_argument("--limit", type=int, help="read at most this many lexicon words")
    p.add_argument("--wr-method", dest="wr_method", choices=["log", "raw"],
                   help="rarity ratio formula (default: log)")
    p.add_argument("--validation-fraction", dest="validation_fraction", type=float,
                   help="held-out share of instances (default: 0.10)")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("stats", help="length and rarity statistics of a dataset")
    _add_dataset_flags(p)
    _add_common_flags(p)
    p.add_argument("--lexicon", help="frequency-ordered word list; enables the rarity statistic")
    p.add_argument("--limit", type=int, help="read at most this many lexicon words")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("generate", help="produce a prediction JSONL with a provider")
    _add_dataset_flags(p)
    _add_common_flags(p)
    _add_provider_flags(p)
    p.add_argument("--wl", type=float, help="word-length token value (default: 1.0)")
    p.add_argument("--wr", type=float, help="word-rarity token value (default: 1.0)")
    p.add_argument("--cr", type=float, help="candidate-ranking token value (default: 1.0)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("search", help="grid-search WL/WR on the validation split")
    _add_dataset_flags(p)
    _add_common_flags(p)
    _add_provider_flags(p)
    p.add_argument("--wl-min", dest="wl_min", type=float, help="WL axis start (default: 0.5)")
    p.add_argument("--wl-max", dest="wl_max", type=float, help="WL axis end (default: 1.25)")
    p.add_argument("--wr-min", dest="wr_min", type=float, help="WR axis start (default: 0.5)")
    p.add_argument("--wr-max", dest="wr_max", type=float, help="WR axis end (default: 1.25)")
    p.add_argument("--step", type=float, help="axis step (default: 0.05)")
    p.add_argument("--cr", type=float, help="fixed CR value (default: 1.0)")
    p.add_argument("--validation-fraction", dest="validation_fraction", type=float,
                   help="held-out share of instances (default: 0.10)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("evaluate", help="score a prediction JSONL against a dataset")
    _add_dataset_flags(p)
    _add_common_flags(p)
    p.add_argument("--predictions", help="prediction JSONL file")
    p.add_argument("--allow-missing", dest="allow_missing", action="store_const", const=True,
                   help="score missing prediction ids as empty lists instead of failing")
    p.add_argument("--precision-denominator", dest="precision_denominator",
                   choices=["pred", "k"], help="precision@k denominator (default: pred)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("report", help="render a saved evaluation report as a text table")
    p.add_argument("--report", help="report JSON produced by evaluate")
    p.add_argument("--config", help="flat JSON config file; flags override its keys")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LexsimpError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
