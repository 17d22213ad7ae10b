#!/usr/bin/env node
/** Command line: convert raw dumps, or subsample fixtures.
 *
 *   annotate convert --squad raw.json --retrieval results.jsonl --out corpus.jsonl
 *   annotate fixture --dataset corpus.jsonl --out mini.jsonl --size 200 --seed 1
 */

import { annotateCorpus, readRetrievalResults, readSquadQuestions, writeDataset } from "./convert.js";
import { makeFixture } from "./fixture.js";

function parseFlags(argv: string[]): Map<string, string> {
    const flags = new Map<string, string>();
    for (let i = 0; i < argv.length; i += 2) {
        if (!argv[i].startsWith("--") || i + 1 >= argv.length) {
            throw new Error(`malformed arguments near ${argv[i]}`);
        }
        flags.set(argv[i].slice(2), argv[i + 1]);
    }
    return flags;
}

function required(flags: Map<string, string>, name: string): string {
    const value = flags.get(name);
    if (value === undefined) throw new Error(`--${name} is required`);
    return value;
}

export function main(argv: string[]): number {
    const [command, ...rest] = argv;
    try {
        if (command === "convert") {
            const flags = parseFlags(rest);
            const questions = readSquadQuestions(required(flags, "squad"));
            const retrieval = readRetrievalResults(required(flags, "retrieval"));
            const { bundles, report } = annotateCorpus(questions, retrieval);
            writeDataset(bundles, required(flags, "out"));
            console.log(
                `wrote ${report.questions} questions, ${report.documents} documents ` +
                `(${report.droppedEmptyDocuments} empty documents dropped, ` +
                `${report.sentenceWarnings} parse warnings)`,
            );
            return 0;
        }
        if (command === "fixture") {
            const flags = parseFlags(rest);
            const n = makeFixture(
                required(flags, "dataset"),
                required(flags, "out"),
                Number(flags.get("size") ?? "200"),
                Number(flags.get("seed") ?? "1"),
            );
            console.log(`wrote ${n} questions`);
            return 0;
        }
        console.error("usage: annotate <convert|fixture> [flags]");
        return 2;
    } catch (error) {
        console.error(`error: ${(error as Error).message}`);
        return 1;
    }
}

main(process.argv.slice(2));
