"""Answer normalization and evaluation metrics (recall, EM, F1)."""

from __future__ import annotations

import re
import string
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus import AnnotatedSentence, RetrievalBundle
from .errors import AlignmentError

_ARTICLE_RE = re.compile(r"\b(a|an|the)\b")
_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


def normalize_answer(s: str) -> str:
    """Lowercase, drop whole-word articles, strip punctuation, collapse spaces."""
    s = s.lower()
    s = _ARTICLE_RE.sub(" ", s)
    s = s.translate(_PUNCT_TABLE)
    return " ".join(s.split())


def _contains_contiguous(haystack: Sequence[str], needle: Sequence[str]) -> bool:
    n = len(needle)
    if n == 0 or n > len(haystack):
        return False
    target = tuple(needle)
    return any(tuple(haystack[i : i + n]) == target for i in range(len(haystack) - n + 1))


def contains_answer(sentences: Iterable[AnnotatedSentence], answers: Sequence[str]) -> bool:
    """True iff some normalized answer appears contiguously in some sentence.

    Matching is at the normalized-token level, never raw substrings, so
    "art" does not match inside "party".
    """
    answer_tokens = [normalize_answer(a).split() for a in answers]
    answer_tokens = [toks for toks in answer_tokens if toks]
    if not answer_tokens:
        return False
    for sentence in sentences:
        stream = normalize_answer(" ".join(sentence.texts())).split()
        if any(_contains_contiguous(stream, toks) for toks in answer_tokens):
            return True
    return False


def exact_match(prediction: str, answers: Sequence[str]) -> float:
    """1.0 iff the normalized prediction equals some normalized gold answer."""
    pred = normalize_answer(prediction)
    return 1.0 if any(pred == normalize_answer(a) for a in answers) else 0.0


def _f1_single(prediction: str, answer: str) -> float:
    pred_tokens = normalize_answer(prediction).split()
    gold_tokens = normalize_answer(answer).split()
    if not pred_tokens or not gold_tokens:
        return 1.0 if pred_tokens == gold_tokens else 0.0
    common = Counter(pred_tokens) & Counter(gold_tokens)
    overlap = sum(common.values())
    if overlap == 0:
        return 0.0
    precision = overlap / len(pred_tokens)
    recall = overlap / len(gold_tokens)
    return 2.0 * precision * recall / (precision + recall)


def f1_score(prediction: str, answers: Sequence[str]) -> float:
    """Token-overlap F1, maximized over the gold answers."""
    return max(_f1_single(prediction, a) for a in answers) if answers else 0.0


@dataclass
class EvalReport:
    """Aggregate metrics plus one record per question.

    ``em`` and ``f1`` stay None when no reader answers were produced;
    they are reader-dependent and absent, not zero, without one.
    """

    selector: str
    recall: float
    em: float | None
    f1: float | None
    questions_per_second: float
    per_question: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "selector": self.selector,
            "recall": self.recall,
            "em": self.em,
            "f1": self.f1,
            "questions_per_second": self.questions_per_second,
            "per_question": self.per_question,
        }

    def csv_rows(self) -> list[list]:
        header = ["question_id", "selector", "recall_hit", "em", "f1", "latency_ms"]
        rows = [header]
        for rec in self.per_question:
            rows.append(
                [
                    rec["question_id"],
                    self.selector,
                    rec["recall_hit"],
                    rec["em"],
                    rec["f1"],
                    rec["latency_ms"],
                ]
            )
        return rows


def evaluate(results, bundles: Sequence[RetrievalBundle], selector_name: str = "") -> EvalReport:
    """Compute recall (and EM/F1 when reader answers exist) for aligned results.

    ``results`` is the output of run_pipeline; alignment is by
    question_id and mismatches raise AlignmentError.
    """
    by_id = {b.question_id: b for b in bundles}
    if len(by_id) != len(bundles):
        raise AlignmentError("duplicate question_id in bundles")

    per_question = []
    hits = 0
    labeled = 0
    em_values: list[float] = []
    f1_values: list[float] = []
    total_wall = 0.0

    for result in results:
        bundle = by_id.get(result.question_id)
        if bundle is None:
            raise AlignmentError(f"result for unknown question_id {result.question_id!r}")
        record: dict = {
            "question_id": result.question_id,
            "recall_hit": None,
            "em": None,
            "f1": None,
            "latency_ms": result.wall_time * 1000.0,
            "error": result.error,
        }
        total_wall += result.wall_time
        if bundle.answers and result.error is None:
            labeled += 1
            hit = contains_answer((s.sentence for s in result.selected), bundle.answers)
            record["recall_hit"] = hit
            hits += int(hit)
            if result.reader_answer is not None:
                em = exact_match(result.reader_answer, bundle.answers)
                f1 = f1_score(result.reader_answer, bundle.answers)
                record["em"] = em * 100.0
                record["f1"] = f1 * 100.0
                em_values.append(em)
                f1_values.append(f1)
        per_question.append(record)

    if labeled == 0:
        raise AlignmentError("no labeled questions to evaluate")
    n = len(per_question)
    return EvalReport(
        selector=selector_name,
        recall=100.0 * hits / labeled,
        em=100.0 * sum(em_values) / len(em_values) if em_values else None,
        f1=100.0 * sum(f1_values) / len(f1_values) if f1_values else None,
        questions_per_second=n / total_wall if total_wall > 0 else 0.0,
        per_question=per_question,
    )
