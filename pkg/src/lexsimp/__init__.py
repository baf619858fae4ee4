"""Batch toolkit for controllable lexical simplification.

Builds control-token training data, post-processes and ranks substitution
candidates, searches inference-time token values, and evaluates candidate
lists against weighted gold annotations.
"""

from .candidate_post import (
    CandidateList,
    extract_candidate,
    postprocess,
    read_predictions,
    write_predictions,
)
from .control_tokens import (
    ControlValues,
    TrainingPair,
    build_training_pairs,
    compute_wl,
    compute_wr,
    cr_for_rank,
    serialize_source,
)
from .corpus_stats import FrequencyStats, LengthStats, frequency_stats, length_stats
from .dataset_io import (
    Dataset,
    Instance,
    Split,
    dump_jsonl,
    load_jsonl,
    load_ranked_dataset,
    load_tsar,
    split_dataset,
)
from .errors import (
    ExtractionError,
    LexsimpError,
    ParseError,
    ProtocolError,
    TransportError,
)
from .freq_lexicon import FrequencyLexicon, lexicon_from_words, load_lexicon
from .generator import (
    GenerationRequest,
    GenerationResponse,
    GoldOracleProvider,
    LexiconTableProvider,
    RemoteProvider,
    run_generation,
)
from .metrics import (
    EvaluationReport,
    GoldView,
    acc_at_1,
    acc_k_top1,
    evaluate,
    map_k,
    potential_k,
    precision_k,
    recall_k,
    render_report,
)
from .token_search import SearchResult, SearchSpace, grid_search, render_heat_table

__version__ = "0.1.0"

__all__ = [
    "CandidateList",
    "ControlValues",
    "Dataset",
    "EvaluationReport",
    "ExtractionError",
    "FrequencyLexicon",
    "FrequencyStats",
    "GenerationRequest",
    "GenerationResponse",
    "GoldOracleProvider",
    "GoldView",
    "Instance",
    "LengthStats",
    "LexiconTableProvider",
    "LexsimpError",
    "ParseError",
    "ProtocolError",
    "RemoteProvider",
    "SearchResult",
    "SearchSpace",
    "Split",
    "TrainingPair",
    "TransportError",
    "acc_at_1",
    "acc_k_top1",
    "build_training_pairs",
    "compute_wl",
    "compute_wr",
    "cr_for_rank",
    "dump_jsonl",
    "evaluate",
    "extract_candidate",
    "frequency_stats",
    "grid_search",
    "length_stats",
    "lexicon_from_words",
    "load_jsonl",
    "load_lexicon",
    "load_ranked_dataset",
    "load_tsar",
    "map_k",
    "postprocess",
    "potential_k",
    "precision_k",
    "read_predictions",
    "recall_k",
    "render_heat_table",
    "render_report",
    "run_generation",
    "serialize_source",
    "split_dataset",
    "write_predictions",
]
