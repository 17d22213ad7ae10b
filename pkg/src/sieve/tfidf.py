"""Retrieval-based selector: cosine similarity of tf-idf vectors.

Terms are lowercased token texts, nothing else (no stemming, no
stopword removal). Weights use the smoothed scheme

    weight(t) = (1 + ln(count_t)) * (ln((1 + N) / (1 + df_t)) + 1)

where N and df are counted over the question's own retrieved sentence
set, so the selector is stateless across questions.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .corpus import Document, RetrievalBundle, Token
from .selection import Selector

SparseVector = dict[str, float]


@dataclass(frozen=True)
class TfIdfStats:
    """Per-question collection statistics: sentence count and document frequencies."""

    n_sentences: int
    df: Mapping[str, int]


def _terms(tokens: Iterable[Token]) -> list[str]:
    return [t.text.lower() for t in tokens]


def build_stats(bundle: RetrievalBundle) -> TfIdfStats:
    """Count df over the lowercased token texts of every retrieved sentence."""
    df: Counter[str] = Counter()
    n = 0
    for _, sentence in bundle.sentences():
        n += 1
        df.update(set(_terms(sentence.tokens)))
    return TfIdfStats(n_sentences=n, df=dict(df))


def vectorize(tokens: Iterable[Token], stats: TfIdfStats) -> SparseVector:
    """tf-idf vector of a token sequence; unseen terms get df = 0."""
    counts = Counter(_terms(tokens))
    n = stats.n_sentences
    vec: SparseVector = {}
    for term, count in counts.items():
        tf = 1.0 + math.log(count)
        idf = math.log((1.0 + n) / (1.0 + stats.df.get(term, 0))) + 1.0
        vec[term] = tf * idf
    return vec


def cosine(u: SparseVector, v: SparseVector) -> float:
    """Cosine similarity in [0, 1]; 0 when either vector is empty.

    The shared-term sum runs in sorted term order, which makes the
    function exactly symmetric and independent of dict insertion order.
    """
    if not u or not v:
        return 0.0
    dot = sum(u[t] * v[t] for t in sorted(u.keys() & v.keys()))
    nu = math.sqrt(sum(w * w for w in u.values()))
    nv = math.sqrt(sum(w * w for w in v.values()))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def tfidf_score(
    bundle: RetrievalBundle, doc: Document, sentence_index: int, stats: TfIdfStats | None = None
) -> float:
    """Cosine between the question's and the sentence's tf-idf vectors."""
    if stats is None:
        stats = build_stats(bundle)
    sentence = next(s for s in doc.sentences if s.sentence_index == sentence_index)
    return cosine(vectorize(bundle.question.tokens, stats), vectorize(sentence.tokens, stats))


class TfIdfSelector(Selector):
    """Scores each sentence by question/sentence tf-idf cosine similarity."""

    name = "tfidf"

    def prepare(self, bundle: RetrievalBundle):
        stats = build_stats(bundle)
        return stats, vectorize(bundle.question.tokens, stats)

    def score_sentence(self, bundle, doc: Document, sentence_index: int, ctx) -> float:
        stats, question_vec = ctx
        sentence = next(s for s in doc.sentences if s.sentence_index == sentence_index)
        return cosine(question_vec, vectorize(sentence.tokens, stats))
