import json
import sys
from pathlib import Path

import pytest

from sieve.adapter import (
    AdapterClient,
    AdapterCrash,
    AdapterProtocolError,
    AdapterTimeout,
    ExternalReader,
    ExternalSelector,
    adapter_call,
)
from sieve.metrics import evaluate
from sieve.pipeline import PipelineConfig, run_pipeline
from sieve.selection import score_all, select_top_k

from .conftest import make_bundle

STUBS = Path(__file__).resolve().parent / "stubs"


def stub(name: str, *args: str) -> str:
    parts = [sys.executable, str(STUBS / name), *args]
    return " ".join(parts)


@pytest.fixture
def bundle():
    return make_bundle(
        ["who", "wrote", "it"],
        docs=[[["alpha", "beta"], ["gamma"], ["delta", "eps", "zeta"]]],
        answers=["alpha"],
    )


class TestClient:
    def test_loopback_round_trip(self):
        request = {"type": "score", "question_id": "q9", "question": ["a"], "sentences": [["b"]]}
        response = adapter_call(stub("stub_echo.py"), request, timeout=10.0)
        assert response == request

    def test_timeout(self):
        with AdapterClient(stub("stub_misbehave.py", "sleep", "5"), timeout=0.3) as client:
            with pytest.raises(AdapterTimeout):
                client.request({"type": "score", "question_id": "q", "sentences": []})

    def test_crash(self):
        with AdapterClient(stub("stub_misbehave.py", "crash"), timeout=5.0) as client:
            with pytest.raises(AdapterCrash):
                client.request({"type": "score", "question_id": "q", "sentences": []})

    def test_bad_json(self):
        with AdapterClient(stub("stub_misbehave.py", "badjson"), timeout=5.0) as client:
            with pytest.raises(AdapterProtocolError):
                client.request({"type": "score", "question_id": "q", "sentences": []})

    def test_unstartable_command(self):
        with pytest.raises(AdapterCrash):
            AdapterClient("/no/such/binary-xyz", timeout=1.0)


class TestExternalSelector:
    def test_zero_stub_gives_uniform_scores(self, bundle):
        selector = ExternalSelector(stub("stub_selector.py", "zeros"), timeout=10.0)
        try:
            assert [s.score for s in score_all(selector, bundle)] == [0.0, 0.0, 0.0]
        finally:
            selector.close()

    def test_pattern_scores_drive_selection_order(self, bundle):
        selector = ExternalSelector(stub("stub_selector.py", "pattern", "3", "1", "2"), timeout=10.0)
        try:
            top = select_top_k(score_all(selector, bundle), 3)
            assert [s.sentence_index for s in top] == [0, 2, 1]
        finally:
            selector.close()

    def test_scores_passed_through_verbatim(self, bundle):
        selector = ExternalSelector(stub("stub_selector.py", "length"), timeout=10.0)
        try:
            assert [s.score for s in score_all(selector, bundle)] == [2.0, 1.0, 3.0]
        finally:
            selector.close()

    @pytest.mark.parametrize("mode", ["wrongtype", "shortscores", "badid"])
    def test_protocol_violations(self, bundle, mode):
        selector = ExternalSelector(stub("stub_misbehave.py", mode), timeout=5.0)
        try:
            with pytest.raises(AdapterProtocolError):
                selector.prepare(bundle)
        finally:
            selector.close()


class TestPipelineErrorRecords:
    def test_malformed_response_becomes_error_record(self, bundle):
        selector = ExternalSelector(stub("stub_misbehave.py", "badjson"), timeout=5.0)
        try:
            results = run_pipeline([bundle], selector, PipelineConfig(k_sentences=2))
        finally:
            selector.close()
        assert results[0].error is not None
        assert results[0].selected == []

    def test_timeout_does_not_abort_run(self, bundle):
        selector = ExternalSelector(stub("stub_misbehave.py", "sleep", "5"), timeout=0.3)
        other = make_bundle(["q2"], docs=[[["alpha"]]], answers=["alpha"], qid="q2")
        try:
            results = run_pipeline([bundle, other], selector, PipelineConfig(k_sentences=2))
        finally:
            selector.close()
        assert results[0].error is not None
        assert results[1].error is not None  # same stub times out for both
        assert [r.question_id for r in results] == ["q1", "q2"]

    def test_crash_recorded_and_run_continues(self, bundle):
        selector = ExternalSelector(stub("stub_misbehave.py", "crash"), timeout=5.0)
        try:
            results = run_pipeline([bundle], selector, PipelineConfig())
        finally:
            selector.close()
        assert "adapter" in results[0].error.lower() or "exited" in results[0].error


class TestReader:
    def test_reader_answers_recorded_and_scored(self, bundle):
        from sieve.tfidf import TfIdfSelector

        reader = ExternalReader(stub("stub_reader.py", "fixed", "alpha"), timeout=10.0)
        try:
            results = run_pipeline([bundle], TfIdfSelector(), PipelineConfig(), reader=reader)
        finally:
            reader.close()
        assert results[0].reader_answer == "alpha"
        assert results[0].reader_score == 0.9
        report = evaluate(results, [bundle], selector_name="tfidf")
        assert report.em == 100.0
        assert report.f1 == 100.0

    def test_reader_first_tokens_mode(self, bundle):
        reader = ExternalReader(stub("stub_reader.py", "first", "2"), timeout=10.0)
        try:
            answer, score = reader.read("q1", ["who"], ["alpha", "beta", "gamma"])
        finally:
            reader.close()
        assert answer == "alpha beta"
        assert score == 0.9

    def test_reader_error_becomes_record(self, bundle):
        from sieve.tfidf import TfIdfSelector

        reader = ExternalReader(stub("stub_misbehave.py", "badjson"), timeout=5.0)
        try:
            results = run_pipeline([bundle], TfIdfSelector(), PipelineConfig(), reader=reader)
        finally:
            reader.close()
        assert results[0].error is not None
        assert results[0].selected  # selection succeeded, only the read failed
