"""Selector contract, deterministic top-k selection, score bookkeeping.

Every selector maps (bundle, document, sentence) to a finite float
score; scoring is a pure function of the inputs and the selector's
frozen parameters. Ties in top-k selection are broken by document
rank, then sentence index, so selection is fully deterministic and
independent of input order.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Iterable

from .corpus import AnnotatedSentence, Document, RetrievalBundle
from .errors import SelectorError


@dataclass(frozen=True)
class ScoredSentence:
    """A sentence reference with its selection score and tie-break key."""

    doc_rank: int
    sentence_index: int
    score: float
    sentence: AnnotatedSentence

    def sort_key(self) -> tuple[float, int, int]:
        return (-self.score, self.doc_rank, self.sentence_index)


class Selector(ABC):
    """Base class for sentence selectors.

    Subclasses implement ``score_sentence``; ``prepare`` may build
    per-question context (cached statistics, encoded question, ...) that
    is reused for every sentence of the bundle. Both must be free of
    side effects so scoring can run concurrently.
    """

    name: str = "selector"

    def prepare(self, bundle: RetrievalBundle) -> Any:
        return None

    @abstractmethod
    def score_sentence(
        self, bundle: RetrievalBundle, doc: Document, sentence_index: int, ctx: Any
    ) -> float:
        ...

    def score(self, bundle: RetrievalBundle, doc: Document, sentence_index: int) -> float:
        """Score one sentence (contract form; builds context on the fly)."""
        return self.score_sentence(bundle, doc, sentence_index, self.prepare(bundle))


class ConstantSelector(Selector):
    """Assigns the same score to every sentence; useful as a baseline."""

    name = "constant"

    def __init__(self, value: float = 0.0):
        self.value = float(value)

    def score_sentence(self, bundle, doc, sentence_index, ctx) -> float:
        return self.value


def score_all(selector: Selector, bundle: RetrievalBundle) -> list[ScoredSentence]:
    """Score every sentence of every retrieved document.

    Output is ordered (doc rank asc, sentence_index asc) with exactly
    one entry per sentence. Selector failures are re-raised with
    (doc_id, sentence_index) context attached.
    """
    ctx = selector.prepare(bundle)
    scored = []
    for doc in bundle.documents:
        for sentence in doc.sentences:
            try:
                value = float(
                    selector.score_sentence(bundle, doc, sentence.sentence_index, ctx)
                )
            except Exception as exc:
                raise SelectorError(
                    f"selector {selector.name!r} failed on doc_id={doc.doc_id!r} "
                    f"sentence_index={sentence.sentence_index}: {exc}"
                ) from exc
            if not math.isfinite(value):
                raise SelectorError(
                    f"selector {selector.name!r} returned non-finite score {value!r} "
                    f"on doc_id={doc.doc_id!r} sentence_index={sentence.sentence_index}"
                )
            scored.append(
                ScoredSentence(
                    doc_rank=doc.rank,
                    sentence_index=sentence.sentence_index,
                    score=value,
                    sentence=sentence,
                )
            )
    return scored


def select_top_k(scored: Iterable[ScoredSentence], k: int) -> list[ScoredSentence]:
    """Top min(k, n) sentences by (score desc, doc rank asc, sentence asc)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return sorted(scored, key=ScoredSentence.sort_key)[:k]
