"""Selection-stage throughput of every selector on a 100-question sample.

The seeded benchmark times scoring plus top-k only (no file I/O), one
worker, so numbers are comparable across selectors. Sparse matching is
orders of magnitude cheaper than running the neural answer finder.
"""

from pathlib import Path

from sieve import ansfind as af
from sieve.bow import BowSelector, BowTrainConfig, train_bow
from sieve.corpus import load_dataset, load_embeddings
from sieve.evdmatch import EnsembleSelector, EvdMatchSelector
from sieve.pipeline import benchmark
from sieve.tfidf import TfIdfSelector

FIXTURES = Path(__file__).resolve().parent.parent / "data" / "fixtures"


def main():
    table = load_embeddings(FIXTURES / "pipeline_vectors.txt")
    train = load_dataset(FIXTURES / "pipeline_train.jsonl")
    eval_bundles = load_dataset(FIXTURES / "pipeline_eval.jsonl")

    bow_model, _ = train_bow(train, table, BowTrainConfig(seed=13))
    instances = af.training_instances(train, seed=13)
    ans_model, _ = af.train_ansfind(instances, table, af.AnsFindTrainConfig(seed=13))

    selectors = [
        ("tfidf", TfIdfSelector()),
        ("bow", BowSelector(bow_model, table)),
        ("evdmatch", EvdMatchSelector()),
        ("ansfind", af.AnsFindSelector(ans_model, table)),
        ("ensemble", EnsembleSelector(ans_model, table)),
    ]
    reports = []
    for name, selector in selectors:
        report = benchmark(eval_bundles, selector, sample_size=100, seed=0)
        reports.append((name, report))
    reports.sort(key=lambda item: -item[1].questions_per_second)
    print(f"{'selector':<10} {'questions/s':>12} {'total s':>9}")
    for name, report in reports:
        print(f"{name:<10} {report.questions_per_second:12.0f} {report.total_seconds:9.3f}")


if __name__ == "__main__":
    main()
