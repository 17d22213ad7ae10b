"""Evidence matching: count question constituents found in each sentence.

The question's base constituents form an evidence set of lemma
sequences; a sentence scores one point per evidence item it contains as
a contiguous lemma subsequence, and one more per item contained in the
preceding sentence of the same document. Adding the answer-finding bit
on top gives the ensemble score.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ansfind import AnsFindModel, encode_question, question_prefix, s_ans
from .corpus import (
    AnnotatedSentence,
    ConstituentSpan,
    Document,
    EmbeddingTable,
    RetrievalBundle,
    previous_sentence,
)
from .selection import Selector

WH_WORDS = frozenset(
    {"who", "what", "when", "where", "why", "which", "how", "whom", "whose"}
)


@dataclass(frozen=True)
class Evidence:
    """One evidence item: the lemma sequence of a base question constituent."""

    lemmas: tuple[str, ...]
    source: ConstituentSpan


def _is_punct(lemma: str) -> bool:
    return bool(lemma) and not any(ch.isalnum() for ch in lemma)


def evidence_set(question: AnnotatedSentence) -> list[Evidence]:
    """Evidence items from the question's base constituents.

    Constituents that are purely punctuation or purely wh-words carry no
    matchable content and are dropped; duplicate lemma sequences are
    kept once.
    """
    out: list[Evidence] = []
    seen: set[tuple[str, ...]] = set()
    for span in question.constituents:
        if not span.is_base:
            continue
        lemmas = tuple(t.lemma for t in question.tokens[span.start : span.end])
        if all(_is_punct(l) for l in lemmas):
            continue
        if all(l in WH_WORDS for l in lemmas):
            continue
        if lemmas in seen:
            continue
        seen.add(lemmas)
        out.append(Evidence(lemmas=lemmas, source=span))
    return out


def match(u: Evidence, sentence: AnnotatedSentence) -> int:
    """1 iff the evidence lemmas occur contiguously in the sentence lemmas."""
    hay = sentence.lemmas()
    n = len(u.lemmas)
    if n == 0 or n > len(hay):
        return 0
    target = tuple(u.lemmas)
    for i in range(len(hay) - n + 1):
        if tuple(hay[i : i + n]) == target:
            return 1
    return 0


def s_evd(
    bundle: RetrievalBundle,
    doc: Document,
    sentence_index: int,
    evidence: list[Evidence] | None = None,
) -> float:
    """Evidence count over the sentence plus its predecessor (same document)."""
    if evidence is None:
        evidence = evidence_set(bundle.question)
    current = next(s for s in doc.sentences if s.sentence_index == sentence_index)
    prev = previous_sentence(doc, sentence_index)
    total = 0
    for u in evidence:
        total += match(u, current)
        if prev is not None:
            total += match(u, prev)
    return float(total)


class EvdMatchSelector(Selector):
    """Scores sentences by evidence-match counts alone."""

    name = "evdmatch"

    def prepare(self, bundle: RetrievalBundle):
        return evidence_set(bundle.question)

    def score_sentence(self, bundle, doc, sentence_index, ctx) -> float:
        return s_evd(bundle, doc, sentence_index, evidence=ctx)


def ensemble_score(
    bundle: RetrievalBundle,
    doc: Document,
    sentence_index: int,
    ansfind_model: AnsFindModel,
    table: EmbeddingTable,
) -> float:
    """Combined selection score: answer-finding bit plus evidence count."""
    return s_ans(bundle, doc, sentence_index, ansfind_model, table) + s_evd(
        bundle, doc, sentence_index
    )


class EnsembleSelector(Selector):
    """Sums the answer-finding bit and the evidence-match count."""

    name = "ensemble"

    def __init__(self, ansfind_model: AnsFindModel, table: EmbeddingTable):
        self.model = ansfind_model
        self.table = table

    def prepare(self, bundle: RetrievalBundle):
        h_q = encode_question(question_prefix(bundle.question), self.model, self.table)
        return evidence_set(bundle.question), h_q

    def score_sentence(self, bundle, doc, sentence_index, ctx) -> float:
        evidence, h_q = ctx
        return s_ans(
            bundle, doc, sentence_index, self.model, self.table, h_q=h_q
        ) + s_evd(bundle, doc, sentence_index, evidence=evidence)
