import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import {
    annotateCorpus,
    readRetrievalResults,
    readSquadQuestions,
    writeDataset,
} from "../src/convert.js";
import { makeFixture } from "../src/fixture.js";

const here = path.dirname(fileURLToPath(import.meta.url));
const FIXTURES = path.join(here, "..", "fixtures");

let tmp: string;

beforeAll(() => {
    tmp = fs.mkdtempSync(path.join(os.tmpdir(), "annotate-test-"));
});

afterAll(() => {
    fs.rmSync(tmp, { recursive: true, force: true });
});

describe("readSquadQuestions", () => {
    it("keeps answerable questions with deduplicated answers", () => {
        const questions = readSquadQuestions(path.join(FIXTURES, "raw_squad_mini.json"));
        expect(questions.map((q) => q.question_id)).toEqual([
            "q-hamlet-author", "q-hamlet-setting", "q-danube-length",
        ]);
        expect(questions[0].answers).toEqual(["William Shakespeare", "Shakespeare"]);
    });
});

describe("annotateCorpus", () => {
    it("converts, sorts by question_id, and drops empty documents", () => {
        const questions = readSquadQuestions(path.join(FIXTURES, "raw_squad_mini.json"));
        const retrieval = readRetrievalResults(path.join(FIXTURES, "retrieval_mini.jsonl"));
        const { bundles, report } = annotateCorpus(questions, retrieval);
        expect(bundles.map((b) => b.question_id)).toEqual([
            "q-danube-length", "q-hamlet-author", "q-hamlet-setting",
        ]);
        expect(report.questions).toBe(3);
        expect(report.droppedEmptyDocuments).toBe(1);
        for (const bundle of bundles) {
            for (const doc of bundle.documents) {
                expect(doc.sentences.length).toBeGreaterThan(0);
                expect(doc.rank).toBeGreaterThanOrEqual(1);
            }
        }
    });

    it("is deterministic", () => {
        const questions = readSquadQuestions(path.join(FIXTURES, "raw_squad_mini.json"));
        const retrieval = readRetrievalResults(path.join(FIXTURES, "retrieval_mini.jsonl"));
        const a = annotateCorpus(questions, retrieval);
        const b = annotateCorpus(questions, retrieval);
        expect(JSON.stringify(a.bundles)).toBe(JSON.stringify(b.bundles));
    });
});

describe("makeFixture", () => {
    function convertToFile(): string {
        const questions = readSquadQuestions(path.join(FIXTURES, "raw_squad_mini.json"));
        const retrieval = readRetrievalResults(path.join(FIXTURES, "retrieval_mini.jsonl"));
        const { bundles } = annotateCorpus(questions, retrieval);
        const out = path.join(tmp, "corpus.jsonl");
        writeDataset(bundles, out);
        return out;
    }

    it("same seed reproduces the same file", () => {
        const corpus = convertToFile();
        const out1 = path.join(tmp, "fix1.jsonl");
        const out2 = path.join(tmp, "fix2.jsonl");
        expect(makeFixture(corpus, out1, 2, 1)).toBe(2);
        expect(makeFixture(corpus, out2, 2, 1)).toBe(2);
        expect(fs.readFileSync(out1, "utf-8")).toBe(fs.readFileSync(out2, "utf-8"));
    });

    it("size zero writes an empty valid file", () => {
        const corpus = convertToFile();
        const out = path.join(tmp, "empty.jsonl");
        expect(makeFixture(corpus, out, 0, 1)).toBe(0);
        expect(fs.readFileSync(out, "utf-8")).toBe("");
    });

    it("output stays sorted by question_id", () => {
        const corpus = convertToFile();
        const out = path.join(tmp, "sorted.jsonl");
        makeFixture(corpus, out, 3, 7);
        const ids = fs
            .readFileSync(out, "utf-8")
            .split("\n")
            .filter(Boolean)
            .map((line) => JSON.parse(line).question_id as string);
        expect(ids).toEqual([...ids].sort());
    });
});
