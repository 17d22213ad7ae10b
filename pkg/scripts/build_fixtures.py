#!/usr/bin/env python3
"""Regenerate the bundled fixture files under data/fixtures/.

Everything is seeded; rerunning this script reproduces the same files.
"""

from pathlib import Path

from sieve.corpus import dump_dataset
from sieve.synth import (
    ansfind_separable_bundles,
    bow_separable_bundles,
    build_separable_world,
    build_world,
    pipeline_bundles,
    write_embeddings,
)

FIXTURES = Path(__file__).resolve().parent.parent / "data" / "fixtures"


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    world = build_world(seed=11, dim=32)
    write_embeddings(world.entries, FIXTURES / "pipeline_vectors.txt")
    dump_dataset(
        pipeline_bundles(world, 100, seed=101, id_prefix="tr"),
        FIXTURES / "pipeline_train.jsonl",
    )
    dump_dataset(
        pipeline_bundles(world, 200, seed=202, id_prefix="ev"),
        FIXTURES / "pipeline_eval.jsonl",
    )
    dump_dataset(
        pipeline_bundles(world, 5, seed=303, id_prefix="toy", n_docs=2, sentences_per_doc=3),
        FIXTURES / "toy.jsonl",
    )

    sep = build_separable_world(seed=23, dim=32)
    write_embeddings(sep.entries, FIXTURES / "separable_vectors.txt")
    dump_dataset(bow_separable_bundles(sep, 300, seed=41), FIXTURES / "bow_train.jsonl")
    dump_dataset(bow_separable_bundles(sep, 40, seed=42), FIXTURES / "bow_heldout.jsonl")
    dump_dataset(ansfind_separable_bundles(sep, 60, seed=51), FIXTURES / "ansfind_train.jsonl")
    dump_dataset(ansfind_separable_bundles(sep, 25, seed=52), FIXTURES / "ansfind_heldout.jsonl")
    for path in sorted(FIXTURES.iterdir()):
        print(f"{path.name}: {path.stat().st_size} bytes")


if __name__ == "__main__":
    main()
