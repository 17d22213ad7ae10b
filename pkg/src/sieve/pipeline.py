"""End-to-end selection runs: truncate, score, select, optionally read.

Questions are independent units of work; with several workers the
output is still identical to a single-worker run because results are
collected in input order. Wall times cover the selection stage only
(scoring plus top-k), never file ingestion.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .adapter import ExternalReader
from .corpus import RetrievalBundle
from .errors import AdapterError, SelectorError
from .selection import ScoredSentence, Selector, score_all, select_top_k

DEFAULT_K_SENTENCES = 10
DEFAULT_K_DOCUMENTS = 50


@dataclass
class PipelineConfig:
    k_sentences: int = DEFAULT_K_SENTENCES
    k_documents: int = DEFAULT_K_DOCUMENTS
    workers: int = 1

    def __post_init__(self) -> None:
        if self.k_sentences < 1:
            raise ValueError("k_sentences must be >= 1")
        if self.k_documents < 1:
            raise ValueError("k_documents must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class SelectionResult:
    """Selected sentences for one question, in selection order."""

    question_id: str
    selected: list[ScoredSentence] = field(default_factory=list)
    context_tokens: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    reader_answer: str | None = None
    reader_score: float | None = None
    error: str | None = None


def truncate_bundle(bundle: RetrievalBundle, k_documents: int) -> RetrievalBundle:
    """Keep only the top k documents by retrieval rank."""
    if len(bundle.documents) <= k_documents:
        return bundle
    return RetrievalBundle(
        question_id=bundle.question_id,
        question=bundle.question,
        documents=bundle.documents[:k_documents],
        answers=bundle.answers,
    )


def _process_question(
    bundle: RetrievalBundle,
    selector: Selector,
    config: PipelineConfig,
    reader: ExternalReader | None,
) -> SelectionResult:
    truncated = truncate_bundle(bundle, config.k_documents)
    result = SelectionResult(question_id=bundle.question_id)
    start = time.perf_counter()
    try:
        scored = score_all(selector, truncated)
        result.selected = select_top_k(scored, config.k_sentences)
    except (AdapterError, SelectorError) as exc:
        if isinstance(exc, SelectorError) and not isinstance(exc.__cause__, AdapterError):
            raise
        result.wall_time = time.perf_counter() - start
        result.error = str(exc)
        return result
    result.wall_time = time.perf_counter() - start
    result.context_tokens = [
        t.text for item in result.selected for t in item.sentence.tokens
    ]
    if reader is not None:
        try:
            answer, score = reader.read(
                bundle.question_id, bundle.question.texts(), result.context_tokens
            )
            result.reader_answer = answer
            result.reader_score = score
        except AdapterError as exc:
            result.error = str(exc)
    return result


def run_pipeline(
    bundles: Sequence[RetrievalBundle],
    selector: Selector,
    config: PipelineConfig | None = None,
    reader: ExternalReader | None = None,
) -> list[SelectionResult]:
    """Score, select, and optionally read every bundle.

    Adapter failures (crash, timeout, bad response) become per-question
    error records; the run continues. Results come back in input order
    regardless of the worker count.
    """
    config = config or PipelineConfig()
    if config.workers == 1:
        return [_process_question(b, selector, config, reader) for b in bundles]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        futures = [
            pool.submit(_process_question, b, selector, config, reader) for b in bundles
        ]
        return [f.result() for f in futures]


@dataclass
class BenchmarkReport:
    """Throughput of the selection stage over a reproducible sample."""

    selector: str
    sample_size: int
    seed: int
    question_ids: list[str]
    total_seconds: float
    questions_per_second: float
    k_sentences: int
    k_documents: int

    def to_dict(self) -> dict:
        return {
            "selector": self.selector,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "question_ids": self.question_ids,
            "total_seconds": self.total_seconds,
            "questions_per_second": self.questions_per_second,
            "k_sentences": self.k_sentences,
            "k_documents": self.k_documents,
        }


def benchmark(
    bundles: Sequence[RetrievalBundle],
    selector: Selector,
    config: PipelineConfig | None = None,
    sample_size: int = 100,
    seed: int = 0,
) -> BenchmarkReport:
    """Time the selection stage over a seeded question sample, one worker.

    Ingestion and truncation stay outside the clock; only scoring and
    top-k selection are measured.
    """
    config = config or PipelineConfig()
    n = min(sample_size, len(bundles))
    rng = np.random.default_rng(seed)
    indices = sorted(rng.choice(len(bundles), size=n, replace=False)) if n else []
    sample = [truncate_bundle(bundles[i], config.k_documents) for i in indices]

    total = 0.0
    for bundle in sample:
        start = time.perf_counter()
        scored = score_all(selector, bundle)
        select_top_k(scored, config.k_sentences)
        total += time.perf_counter() - start

    return BenchmarkReport(
        selector=selector.name,
        sample_size=n,
        seed=seed,
        question_ids=[b.question_id for b in sample],
        total_seconds=total,
        questions_per_second=n / total if total > 0 else 0.0,
        k_sentences=config.k_sentences,
        k_documents=config.k_documents,
    )
