/** Convert raw QA dumps plus retrieval output into dataset lines. */

import * as fs from "node:fs";

import { annotatePassage, annotateSentence, AnnotateStats } from "./annotate.js";
import { BundleRecord, DocumentRecord } from "./schema.js";

export interface RawQuestion {
    question_id: string;
    question: string;
    answers: string[];
}

export interface RankedPassage {
    id: string;
    rank: number;
    text: string;
}

export interface ConversionReport {
    questions: number;
    documents: number;
    droppedEmptyDocuments: number;
    sentenceWarnings: number;
}

interface SquadDump {
    data: Array<{
        title?: string;
        paragraphs: Array<{
            context: string;
            qas: Array<{
                id: string;
                question: string;
                answers?: Array<{ text: string }>;
                is_impossible?: boolean;
            }>;
        }>;
    }>;
}

/** Questions and gold answers from a SQuAD-format JSON dump. */
export function readSquadQuestions(path: string): RawQuestion[] {
    const dump = JSON.parse(fs.readFileSync(path, "utf-8")) as SquadDump;
    const out: RawQuestion[] = [];
    for (const article of dump.data) {
        for (const paragraph of article.paragraphs) {
            for (const qa of paragraph.qas) {
                if (qa.is_impossible) continue;
                const answers = [...new Set((qa.answers ?? []).map((a) => a.text))];
                out.push({ question_id: qa.id, question: qa.question, answers });
            }
        }
    }
    return out;
}

/** `question_id -> ranked passages` from a retrieval-results JSONL file. */
export function readRetrievalResults(path: string): Map<string, RankedPassage[]> {
    const out = new Map<string, RankedPassage[]>();
    const lines = fs.readFileSync(path, "utf-8").split("\n");
    lines.forEach((line, index) => {
        if (!line.trim()) return;
        let record: { question_id: string; passages: RankedPassage[] };
        try {
            record = JSON.parse(line);
        } catch {
            throw new Error(`retrieval file line ${index + 1}: invalid JSON`);
        }
        const passages = [...record.passages].sort((a, b) => a.rank - b.rank);
        out.set(record.question_id, passages);
    });
    return out;
}

/**
 * Annotate every question with its retrieved passages.
 *
 * Passages that segment to zero sentences would violate the dataset
 * schema (documents must be non-empty), so they are dropped and
 * counted. Output is sorted by question_id.
 */
export function annotateCorpus(
    questions: RawQuestion[],
    retrieval: Map<string, RankedPassage[]>,
): { bundles: BundleRecord[]; report: ConversionReport } {
    const report: ConversionReport = {
        questions: 0,
        documents: 0,
        droppedEmptyDocuments: 0,
        sentenceWarnings: 0,
    };
    const stats: AnnotateStats = { sentences: 0, warnings: 0 };
    const bundles: BundleRecord[] = [];
    const sorted = [...questions].sort((a, b) =>
        a.question_id < b.question_id ? -1 : a.question_id > b.question_id ? 1 : 0,
    );
    for (const raw of sorted) {
        const passages = retrieval.get(raw.question_id);
        if (!passages || passages.length === 0) continue;
        const documents: DocumentRecord[] = [];
        for (const passage of passages) {
            const sentences = annotatePassage(passage.text, stats);
            if (sentences.length === 0) {
                report.droppedEmptyDocuments += 1;
                continue;
            }
            documents.push({ doc_id: passage.id, rank: passage.rank, sentences });
        }
        if (documents.length === 0) continue;
        bundles.push({
            question_id: raw.question_id,
            question: annotateSentence(raw.question, stats),
            documents,
            answers: raw.answers,
        });
        report.questions += 1;
        report.documents += documents.length;
    }
    report.sentenceWarnings = stats.warnings;
    return { bundles, report };
}

export function writeDataset(bundles: BundleRecord[], path: string): void {
    const lines = bundles.map((b) => JSON.stringify(b));
    fs.writeFileSync(path, lines.join("\n") + (lines.length ? "\n" : ""), "utf-8");
}
