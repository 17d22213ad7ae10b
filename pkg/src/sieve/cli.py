"""Command-line entry point: train, select, eval, bench, validate.

One binary with subcommands; all randomness funnels through --seed.
Exit codes: 0 success, 1 runtime failure, 2 usage error. The SIEVE_LOG
environment variable sets the log level.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from . import adapter as adapter_mod
from . import ansfind as ansfind_mod
from . import bow as bow_mod
from .corpus import load_dataset, load_embeddings
from .errors import SieveError
from .evdmatch import EnsembleSelector, EvdMatchSelector
from .metrics import evaluate
from .pipeline import (
    PipelineConfig,
    SelectionResult,
    benchmark,
    run_pipeline,
)
from .selection import Selector
from .tfidf import TfIdfSelector

log = logging.getLogger("sieve")

SELECTOR_CHOICES = ["tfidf", "bow", "ansfind-only", "evdmatch-only", "ensemble", "external"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sieve", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--dataset", required=True, help="line-delimited dataset file")
        p.add_argument("--embeddings", help="plain-text word vector file")
        p.add_argument("--selector", choices=SELECTOR_CHOICES, default="tfidf")
        p.add_argument("--model", help="trained model parameter file")
        p.add_argument("--k-sentences", type=int, default=10)
        p.add_argument("--k-documents", type=int, default=50)
        p.add_argument("--adapter", help="external selector command line")
        p.add_argument("--reader", help="external reader command line")
        p.add_argument("--timeout", type=float, default=60.0, help="adapter timeout in seconds")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", help="output file (default: stdout)")

    train = sub.add_parser("train", help="train the bow or ansfind selector")
    train.add_argument("--dataset", required=True)
    train.add_argument("--embeddings", required=True)
    train.add_argument("--selector", choices=["bow", "ansfind"], required=True)
    train.add_argument("--heldout", help="optional held-out dataset for an accuracy report")
    train.add_argument("--seed", type=int, default=0)
    train.add_argument("--out", required=True, help="model file to write")

    select = sub.add_parser("select", help="write top-k selections per question")
    add_common(select)

    evalp = sub.add_parser("eval", help="evaluate selections (recall, EM/F1 with a reader)")
    add_common(evalp)
    evalp.add_argument("--selections", help="selections file from `sieve select`")
    evalp.add_argument("--format", choices=["json", "csv"], default="json")

    bench = sub.add_parser("bench", help="measure selection throughput")
    add_common(bench)
    bench.add_argument("--sample", type=int, default=100)

    validate = sub.add_parser("validate", help="check a dataset file against the schema")
    validate.add_argument("--dataset", required=True)
    return parser


def _build_selector(args, parser: argparse.ArgumentParser) -> Selector:
    name = args.selector
    if name == "tfidf":
        return TfIdfSelector()
    if name == "evdmatch-only":
        return EvdMatchSelector()
    if name == "external":
        if not args.adapter:
            parser.error("--selector external requires --adapter")
        return adapter_mod.ExternalSelector(args.adapter, timeout=args.timeout)
    if not args.model or not args.embeddings:
        parser.error(f"--selector {name} requires --model and --embeddings")
    table = load_embeddings(args.embeddings)
    if name == "bow":
        return bow_mod.BowSelector(bow_mod.load_bow(args.model), table)
    model = ansfind_mod.load_ansfind(args.model)
    if name == "ansfind-only":
        return ansfind_mod.AnsFindSelector(model, table)
    return EnsembleSelector(model, table)


def _write_text(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_train(args) -> int:
    bundles = load_dataset(args.dataset, require_answers=True)
    table = load_embeddings(args.embeddings)
    if args.selector == "bow":
        config = bow_mod.BowTrainConfig(seed=args.seed)
        model, loss = bow_mod.train_bow(bundles, table, config)
        model.save(args.out)
        print(f"final training loss: {loss:.6f}")
        if args.heldout:
            heldout = load_dataset(args.heldout, require_answers=True)
            acc = bow_mod.bow_accuracy(model, heldout, table)
            print(f"held-out accuracy: {acc:.4f}")
    else:
        instances = ansfind_mod.training_instances(bundles, seed=args.seed)
        config = ansfind_mod.AnsFindTrainConfig(seed=args.seed)
        model, loss = ansfind_mod.train_ansfind(instances, table, config)
        model.save(args.out)
        print(f"final training loss: {loss:.6f}")
        if args.heldout:
            heldout = load_dataset(args.heldout, require_answers=True)
            heldout_instances = ansfind_mod.training_instances(heldout, seed=args.seed)
            acc = ansfind_mod.ansfind_accuracy(model, heldout_instances, table)
            print(f"held-out accuracy: {acc:.4f}")
    return 0


def _selection_line(result: SelectionResult) -> dict:
    return {
        "question_id": result.question_id,
        "selected": [
            {"doc_rank": s.doc_rank, "sentence_index": s.sentence_index, "score": s.score}
            for s in result.selected
        ],
        "context": result.context_tokens,
        "wall_time": result.wall_time,
        "error": result.error,
    }


def cmd_select(args, parser) -> int:
    bundles = load_dataset(args.dataset)
    selector = _build_selector(args, parser)
    config = PipelineConfig(
        k_sentences=args.k_sentences, k_documents=args.k_documents, workers=args.workers
    )
    try:
        results = run_pipeline(bundles, selector, config)
    finally:
        if hasattr(selector, "close"):
            selector.close()
    lines = [json.dumps(_selection_line(r), sort_keys=True) for r in results]
    _write_text("".join(line + "\n" for line in lines), args.out)
    return 0


def _results_from_selections(path: str, bundles) -> list[SelectionResult]:
    from .selection import ScoredSentence

    by_id = {b.question_id: b for b in bundles}
    results = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            record = json.loads(line)
            bundle = by_id.get(record["question_id"])
            if bundle is None:
                raise SieveError(
                    f"selections refer to unknown question_id {record['question_id']!r}"
                )
            sentences = {
                (doc.rank, s.sentence_index): s for doc, s in bundle.sentences()
            }
            selected = []
            for item in record["selected"]:
                key = (item["doc_rank"], item["sentence_index"])
                if key not in sentences:
                    raise SieveError(
                        f"selections refer to unknown sentence {key} "
                        f"(question_id={record['question_id']!r})"
                    )
                selected.append(
                    ScoredSentence(
                        doc_rank=key[0],
                        sentence_index=key[1],
                        score=float(item["score"]),
                        sentence=sentences[key],
                    )
                )
            results.append(
                SelectionResult(
                    question_id=record["question_id"],
                    selected=selected,
                    context_tokens=record.get("context", []),
                    wall_time=float(record.get("wall_time", 0.0)),
                    error=record.get("error"),
                )
            )
    return results


def cmd_eval(args, parser) -> int:
    bundles = load_dataset(args.dataset)
    reader = adapter_mod.ExternalReader(args.reader, timeout=args.timeout) if args.reader else None
    selector_name = args.selector
    try:
        if args.selections:
            results = _results_from_selections(args.selections, bundles)
            if reader is not None:
                for result in results:
                    if result.error is not None:
                        continue
                    bundle = next(b for b in bundles if b.question_id == result.question_id)
                    try:
                        answer, score = reader.read(
                            result.question_id, bundle.question.texts(), result.context_tokens
                        )
                        result.reader_answer, result.reader_score = answer, score
                    except adapter_mod.AdapterError as exc:
                        result.error = str(exc)
            selector_name = "selections"
        else:
            selector = _build_selector(args, parser)
            config = PipelineConfig(
                k_sentences=args.k_sentences, k_documents=args.k_documents, workers=args.workers
            )
            try:
                results = run_pipeline(bundles, selector, config, reader=reader)
            finally:
                if hasattr(selector, "close"):
                    selector.close()
    finally:
        if reader is not None:
            reader.close()

    report = evaluate(results, bundles, selector_name=selector_name)
    if args.format == "csv":
        import io

        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerows(report.csv_rows())
        _write_text(buffer.getvalue(), args.out)
    else:
        _write_text(json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n", args.out)
    return 0


def cmd_bench(args, parser) -> int:
    bundles = load_dataset(args.dataset)
    selector = _build_selector(args, parser)
    config = PipelineConfig(
        k_sentences=args.k_sentences, k_documents=args.k_documents, workers=1
    )
    try:
        report = benchmark(bundles, selector, config, sample_size=args.sample, seed=args.seed)
    finally:
        if hasattr(selector, "close"):
            selector.close()
    _write_text(json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n", args.out)
    return 0


def cmd_validate(args) -> int:
    bundles = load_dataset(args.dataset)
    n_sentences = sum(len(d.sentences) for b in bundles for d in b.documents)
    print(f"OK: {len(bundles)} bundles, {n_sentences} sentences")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("SIEVE_LOG", "WARNING").upper())
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "train":
            return cmd_train(args)
        if args.command == "select":
            return cmd_select(args, parser)
        if args.command == "eval":
            return cmd_eval(args, parser)
        if args.command == "bench":
            return cmd_bench(args, parser)
        if args.command == "validate":
            return cmd_validate(args)
    except (SieveError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
