"""Plug an external process into the pipeline as a selector and a reader.

Writes two tiny child-process scripts, then drives a select -> read ->
evaluate run over them using the line-delimited JSON protocol. Any
program speaking the same protocol (a heavyweight QA model, a remote
service shim) can sit in either seat.
"""

import sys
import tempfile
from pathlib import Path

from sieve.adapter import ExternalReader, ExternalSelector
from sieve.corpus import load_dataset
from sieve.metrics import evaluate
from sieve.pipeline import PipelineConfig, run_pipeline

FIXTURES = Path(__file__).resolve().parent.parent / "data" / "fixtures"

SELECTOR_SCRIPT = """\
import json, sys
for line in sys.stdin:
    request = json.loads(line)
    question = set(request["question"])
    scores = [float(len(question & set(s))) for s in request["sentences"]]
    print(json.dumps({"type": "scores", "question_id": request["question_id"],
                      "scores": scores}), flush=True)
"""

READER_SCRIPT = """\
import json, sys
for line in sys.stdin:
    request = json.loads(line)
    answer = " ".join(request["context"][:3])
    print(json.dumps({"type": "answer", "question_id": request["question_id"],
                      "answer": answer, "score": 0.5}), flush=True)
"""


def main():
    bundles = load_dataset(FIXTURES / "toy.jsonl")
    with tempfile.TemporaryDirectory() as tmp:
        selector_path = Path(tmp) / "overlap_selector.py"
        reader_path = Path(tmp) / "prefix_reader.py"
        selector_path.write_text(SELECTOR_SCRIPT)
        reader_path.write_text(READER_SCRIPT)

        selector = ExternalSelector(f"{sys.executable} {selector_path}", timeout=30.0)
        reader = ExternalReader(f"{sys.executable} {reader_path}", timeout=30.0)
        try:
            results = run_pipeline(
                bundles, selector, PipelineConfig(k_sentences=5), reader=reader
            )
        finally:
            selector.close()
            reader.close()

    report = evaluate(results, bundles, selector_name="external-overlap")
    print(f"questions:        {len(results)}")
    print(f"recall@5:         {report.recall:.1f}")
    print(f"reader EM / F1:   {report.em:.1f} / {report.f1:.1f}")
    for result in results[:3]:
        print(f"  {result.question_id}: answer={result.reader_answer!r}")


if __name__ == "__main__":
    main()
