"""Candidate-generation providers behind one interface.

Three providers cover the pipeline's needs without coupling it to any
model runtime:

* gold-oracle: answers from the dataset's own gold lists (testing and
  upper-bound runs)
* lexicon-table: answers from a user-supplied TSV neighbor table
* remote: JSON-over-HTTP client for a generation service

Providers declare ``returns_full_sequences``; when true, the caller runs
marked-span extraction on every sequence before post-processing.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Protocol, Sequence, runtime_checkable

import httpx

from .candidate_post import CandidateList, extract_candidate, postprocess
from .control_tokens import ControlValues
from .dataset_io import Dataset, Instance
from .errors import ExtractionError, LexsimpError, ProtocolError, TransportError

logger = logging.getLogger(__name__)

DEFAULT_NUM_RETURN = 15
DEFAULT_TIMEOUT = 30.0
DEFAULT_JOBS = 4


@dataclass(frozen=True)
class GenerationRequest:
    """One generation call: a sentence, its complex word, and control values."""

    sentence: str
    complex_word: str
    word_index: int
    control: ControlValues
    n: int = DEFAULT_NUM_RETURN

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.word_index < len(self.sentence.split()):
            raise ValueError(
                f"word_index {self.word_index} out of range for the request sentence"
            )


@dataclass(frozen=True)
class GenerationResponse:
    """Ranked raw candidates; duplicates and the complex word may appear."""

    candidates: tuple[tuple[str, float | None], ...]
    provider: str

    def texts(self) -> list[str]:
        return [text for text, _ in self.candidates]


@runtime_checkable
class GenerationProvider(Protocol):
    name: str
    returns_full_sequences: bool
    concurrent_safe: bool

    def generate(self, request: GenerationRequest) -> GenerationResponse: ...


class GoldOracleProvider:
    """Returns the gold substitutions of the matching instance, weight order."""

    name = "gold-oracle"
    returns_full_sequences = False
    concurrent_safe = True

    def __init__(self, dataset: Dataset):
        self._by_key = {
            (inst.sentence, inst.complex_word.lower(), inst.word_index): inst
            for inst in dataset
        }

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        key = (request.sentence, request.complex_word.lower(), request.word_index)
        instance = self._by_key.get(key)
        if instance is None:
            raise LexsimpError(
                f"gold oracle has no instance for complex word {request.complex_word!r}"
            )
        candidates = tuple(
            (text, float(weight)) for text, weight in instance.gold[:request.n]
        )
        return GenerationResponse(candidates=candidates, provider=self.name)


class LexiconTableProvider:
    """Reads candidates from a word -> neighbors table, generation-free."""

    name = "lexicon-table"
    returns_full_sequences = False
    concurrent_safe = True

    def __init__(self, neighbors: Mapping[str, Sequence[str]]):
        self._neighbors = {
            word.lower().strip(): tuple(values) for word, values in neighbors.items()
        }

    @classmethod
    def from_tsv(cls, path: str | Path) -> "LexiconTableProvider":
        """Load a neighbor table: word TAB neighbor1 TAB neighbor2 ..."""
        neighbors: dict[str, tuple[str, ...]] = {}
        with open(path, encoding="utf-8") as handle:
            for raw in handle:
                line = raw.rstrip("\r\n")
                if not line:
                    continue
                fields = line.split("\t")
                neighbors[fields[0]] = tuple(f for f in fields[1:] if f)
        return cls(neighbors)

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        found = self._neighbors.get(request.complex_word.lower().strip(), ())
        return GenerationResponse(
            candidates=tuple((text, None) for text in found[:request.n]),
            provider=self.name,
        )


def request_body(request: GenerationRequest) -> bytes:
    """Canonical wire body; byte-identical for identical requests."""
    payload = {
        "sentence": request.sentence,
        "complex_word": request.complex_word,
        "word_index": request.word_index,
        "control": {
            "cr": request.control.cr,
            "wl": request.control.wl,
            "wr": request.control.wr,
        },
        "num_return": request.n,
    }
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


class RemoteProvider:
    """HTTP client for the generation wire protocol.

    POSTs to ``{endpoint}/generate`` and expects
    ``{"candidates": [{"text", "score"}, ...], "model": str}``. Transport
    failures raise :class:`TransportError`; bad status codes or malformed
    bodies raise :class:`ProtocolError`.
    """

    name = "remote"
    returns_full_sequences = True
    concurrent_safe = True

    def __init__(self, endpoint: str, timeout: float = DEFAULT_TIMEOUT, transport=None):
        self.endpoint = endpoint.rstrip("/")
        self._client = httpx.Client(timeout=timeout, transport=transport)

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "RemoteProvider":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        try:
            response = self._client.post(
                f"{self.endpoint}/generate",
                content=request_body(request),
                headers={"content-type": "application/json"},
            )
        except httpx.HTTPError as exc:
            raise TransportError(f"request to {self.endpoint} failed: {exc}") from exc
        if response.status_code != 200:
            raise ProtocolError(
                f"endpoint returned status {response.status_code}: {response.text[:200]}",
                status_code=response.status_code,
            )
        try:
            body = response.json()
            candidates = tuple(
                (item["text"], None if item.get("score") is None else float(item["score"]))
                for item in body["candidates"]
            )
            model = body.get("model", "")
        except (ValueError, KeyError, TypeError) as exc:
            raise ProtocolError(f"malformed response body: {exc}") from exc
        return GenerationResponse(candidates=candidates, provider=f"{self.name}:{model}")


@dataclass
class GenerationDiagnostics:
    """Per-run failure bookkeeping; a run always completes."""

    provider_failures: list[tuple[int, str]] = field(default_factory=list)
    extraction_failures: int = 0

    def as_dict(self) -> dict:
        return {
            "provider_failures": [
                {"id": instance_id, "error": message}
                for instance_id, message in self.provider_failures
            ],
            "extraction_failures": self.extraction_failures,
        }


def _candidates_for_instance(
    instance: Instance,
    provider: GenerationProvider,
    control: ControlValues,
    k: int,
    num_return: int,
) -> tuple[CandidateList, str | None, int]:
    """Returns (prediction, provider failure message or None, extraction failures)."""
    request = GenerationRequest(
        sentence=instance.sentence,
        complex_word=instance.complex_word,
        word_index=instance.word_index,
        control=control,
        n=num_return,
    )
    try:
        response = provider.generate(request)
    except LexsimpError as exc:
        logger.warning("provider %s failed on instance %d: %s", provider.name, instance.id, exc)
        return CandidateList(complex_word=instance.complex_word, candidates=()), str(exc), 0

    texts = []
    dropped = 0
    for sequence in response.texts():
        if provider.returns_full_sequences:
            try:
                texts.append(extract_candidate(sequence))
            except ExtractionError:
                dropped += 1
        else:
            texts.append(sequence)
    return postprocess(texts, instance.complex_word, k), None, dropped


def run_generation(
    dataset: Dataset,
    provider: GenerationProvider,
    control: ControlValues,
    k: int,
    num_return: int = DEFAULT_NUM_RETURN,
    jobs: int = DEFAULT_JOBS,
) -> tuple[dict[int, CandidateList], GenerationDiagnostics]:
    """Generate, extract, and post-process candidates for a whole dataset.

    Returns an id-keyed mapping in dataset order plus diagnostics. A
    provider failure on one instance yields an empty candidate list for it;
    the run always completes. In-flight requests are bounded by ``jobs``
    (serial when the provider is not safe for concurrent calls), and the
    output order never depends on completion order.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    instances = list(dataset)
    worker = lambda inst: _candidates_for_instance(inst, provider, control, k, num_return)
    if jobs > 1 and provider.concurrent_safe and len(instances) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, instances))
    else:
        results = [worker(inst) for inst in instances]

    diagnostics = GenerationDiagnostics()
    predictions: dict[int, CandidateList] = {}
    for inst, (prediction, failure, dropped) in zip(instances, results):
        predictions[inst.id] = prediction
        if failure is not None:
            diagnostics.provider_failures.append((inst.id, failure))
        diagnostics.extraction_failures += dropped
    return predictions, diagnostics
