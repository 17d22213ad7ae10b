import pytest
from hypothesis import given, strategies as st

from sieve.errors import AlignmentError
from sieve.metrics import (
    contains_answer,
    evaluate,
    exact_match,
    f1_score,
    normalize_answer,
)
from sieve.pipeline import SelectionResult
from sieve.selection import ScoredSentence

from .conftest import make_bundle, make_sentence


class TestNormalizeAnswer:
    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("The Beatles!", "beatles"),
            ("", ""),
            ("a  dog", "dog"),
            ("An Apple a Day", "apple day"),
            ("U.S. (1977)", "us 1977"),
        ],
    )
    def test_examples(self, raw, expected):
        assert normalize_answer(raw) == expected

    @given(st.text(max_size=40))
    def test_idempotent(self, s):
        once = normalize_answer(s)
        assert normalize_answer(once) == once


class TestContainsAnswer:
    def test_verbatim_hit(self):
        sentence = make_sentence(["Paris", "is", "nice"])
        assert contains_answer([sentence], ["Paris"])

    def test_absent(self):
        sentence = make_sentence(["Paris", "is", "nice"])
        assert not contains_answer([sentence], ["London"])

    def test_normalized_match(self):
        sentence = make_sentence(["see", "the", "eiffel", "tower", "today"])
        assert contains_answer([sentence], ["The Eiffel Tower"])

    def test_token_level_not_substring(self):
        sentence = make_sentence(["party", "time"])
        assert not contains_answer([sentence], ["art"])

    def test_multi_token_contiguity(self):
        sentence = make_sentence(["new", "thing", "york"])
        assert not contains_answer([sentence], ["new york"])


class TestEmF1:
    def test_exact_match_after_normalization(self):
        assert exact_match("the beatles", ["The Beatles!"]) == 1.0
        assert exact_match("beatle", ["The Beatles!"]) == 0.0

    def test_f1_half_overlap(self):
        # pred {a, b} vs gold {b, c}: p = r = 1/2, F1 = 0.5
        assert f1_score("cat dog", ["dog bird"]) == pytest.approx(0.5)

    def test_f1_at_least_em(self):
        for pred, golds in [("x y", ["x y"]), ("x", ["x y"]), ("z", ["x"])]:
            assert f1_score(pred, golds) >= exact_match(pred, golds)

    def test_max_over_answers(self):
        assert f1_score("dog", ["cat", "dog"]) == 1.0


def _result(bundle, n_sentences=None, reader_answer=None, error=None):
    selected = []
    for doc, sentence in bundle.sentences():
        selected.append(
            ScoredSentence(
                doc_rank=doc.rank,
                sentence_index=sentence.sentence_index,
                score=1.0,
                sentence=sentence,
            )
        )
    if n_sentences is not None:
        selected = selected[:n_sentences]
    return SelectionResult(
        question_id=bundle.question_id,
        selected=selected,
        context_tokens=[t.text for s in selected for t in s.sentence.tokens],
        wall_time=0.001,
        reader_answer=reader_answer,
        error=error,
    )


class TestEvaluate:
    def test_recall_counts_hits(self):
        hit = make_bundle(["q"], docs=[[["paris", "x"]]], answers=["paris"], qid="q1")
        miss = make_bundle(["q"], docs=[[["london", "x"]]], answers=["paris"], qid="q2")
        report = evaluate([_result(hit), _result(miss)], [hit, miss], selector_name="t")
        assert report.recall == pytest.approx(50.0)
        assert report.em is None and report.f1 is None

    def test_em_f1_with_reader_answers(self):
        bundle = make_bundle(["q"], docs=[[["paris", "x"]]], answers=["paris"], qid="q1")
        report = evaluate([_result(bundle, reader_answer="paris")], [bundle])
        assert report.em == pytest.approx(100.0)
        assert report.f1 == pytest.approx(100.0)
        bundle2 = make_bundle(["q"], docs=[[["paris", "x"]]], answers=["paris city"], qid="q1")
        report2 = evaluate([_result(bundle2, reader_answer="paris")], [bundle2])
        assert report2.em == 0.0
        assert report2.f1 == pytest.approx(100.0 * 2 / 3)
        assert report2.f1 >= report2.em

    def test_unknown_question_id_rejected(self):
        bundle = make_bundle(["q"], docs=[[["x"]]], answers=["x"], qid="q1")
        stray = _result(bundle)
        stray.question_id = "other"
        with pytest.raises(AlignmentError):
            evaluate([stray], [bundle])

    def test_error_records_excluded_from_recall(self):
        ok = make_bundle(["q"], docs=[[["paris"]]], answers=["paris"], qid="q1")
        bad = make_bundle(["q"], docs=[[["paris"]]], answers=["paris"], qid="q2")
        report = evaluate([_result(ok), _result(bad, error="adapter timeout")], [ok, bad])
        assert report.recall == pytest.approx(100.0)
        records = {r["question_id"]: r for r in report.per_question}
        assert records["q2"]["error"] == "adapter timeout"
        assert records["q2"]["recall_hit"] is None

    def test_no_labeled_questions_rejected(self):
        bundle = make_bundle(["q"], docs=[[["x"]]], answers=[], qid="q1")
        with pytest.raises(AlignmentError):
            evaluate([_result(bundle)], [bundle])
