"""Recall-at-k comparison of every selector on the bundled 200-question corpus.

Trains the bag-of-words and answer-finding models on the 100-question
training split, then reports recall at several sentence budgets. The
trained/ensemble selectors tolerate the corpus's paraphrased answer
sentences far better than surface tf-idf does.
"""

from pathlib import Path

from sieve import ansfind as af
from sieve.bow import BowSelector, BowTrainConfig, train_bow
from sieve.corpus import load_dataset, load_embeddings
from sieve.evdmatch import EnsembleSelector, EvdMatchSelector
from sieve.metrics import contains_answer
from sieve.selection import score_all, select_top_k
from sieve.tfidf import TfIdfSelector

FIXTURES = Path(__file__).resolve().parent.parent / "data" / "fixtures"
KS = [1, 5, 10, 20]


def main():
    table = load_embeddings(FIXTURES / "pipeline_vectors.txt")
    train = load_dataset(FIXTURES / "pipeline_train.jsonl")
    eval_bundles = load_dataset(FIXTURES / "pipeline_eval.jsonl")

    print("training bow and ansfind on the 100-question split...")
    bow_model, _ = train_bow(train, table, BowTrainConfig(seed=13))
    instances = af.training_instances(train, seed=13)
    ans_model, _ = af.train_ansfind(instances, table, af.AnsFindTrainConfig(seed=13))

    selectors = {
        "tfidf": TfIdfSelector(),
        "bow": BowSelector(bow_model, table),
        "evdmatch": EvdMatchSelector(),
        "ansfind": af.AnsFindSelector(ans_model, table),
        "ensemble": EnsembleSelector(ans_model, table),
    }

    print(f"\n{'selector':<10}" + "".join(f"  recall@{k:<3}" for k in KS))
    for name, selector in selectors.items():
        hits = {k: 0 for k in KS}
        for bundle in eval_bundles:
            scored = score_all(selector, bundle)
            for k in KS:
                top = select_top_k(scored, k)
                hits[k] += contains_answer((s.sentence for s in top), bundle.answers)
        row = "".join(f"  {100.0 * hits[k] / len(eval_bundles):8.1f} " for k in KS)
        print(f"{name:<10}{row}")

    upper = 100.0 * sum(
        contains_answer((s for _, s in b.sentences()), b.answers) for b in eval_bundles
    ) / len(eval_bundles)
    print(f"\nretrieval upper bound: {upper:.1f}")


if __name__ == "__main__":
    main()
