/** Shallow constituent spans over POS tags.
 *
 * Base chunks (noun groups, verb groups, wh words) directly dominate
 * POS tags and carry is_base = true; the sentence span and
 * preposition-plus-noun-group wrappers dominate other constituents and
 * carry is_base = false.
 */

import { ConstituentRecord } from "./schema.js";

const NOMINAL = new Set(["NN", "NNS", "NNP", "NNPS", "CD", "PRP"]);
const NP_MEMBER = new Set(["DT", "JJ", "CD", "NN", "NNS", "NNP", "NNPS", "POS"]);
const VERBAL = new Set(["VB", "VBD", "VBG", "VBN", "VBP", "VBZ"]);
const VP_MEMBER = new Set([...VERBAL, "MD", "RB"]);

function runs(tags: string[], member: Set<string>, required: Set<string>): Array<[number, number]> {
    const spans: Array<[number, number]> = [];
    let start = -1;
    for (let i = 0; i <= tags.length; i++) {
        const inside = i < tags.length && member.has(tags[i]);
        if (inside && start < 0) start = i;
        if (!inside && start >= 0) {
            const slice = tags.slice(start, i);
            if (slice.some((t) => required.has(t))) spans.push([start, i]);
            start = -1;
        }
    }
    return spans;
}

export function chunk(tags: string[]): ConstituentRecord[] {
    const out: ConstituentRecord[] = [];
    if (tags.length === 0) return out;

    for (let i = 0; i < tags.length; i++) {
        if (tags[i] === "WP") out.push({ start: i, end: i + 1, label: "WHNP", is_base: true });
        if (tags[i] === "WRB") out.push({ start: i, end: i + 1, label: "WHADVP", is_base: true });
    }
    const nounChunks = runs(tags, NP_MEMBER, NOMINAL);
    for (const [start, end] of nounChunks) {
        out.push({ start, end, label: "NP", is_base: true });
    }
    for (const [start, end] of runs(tags, VP_MEMBER, VERBAL)) {
        out.push({ start, end, label: "VP", is_base: true });
    }
    // preposition + noun group wrapper (dominates the NP, not POS tags)
    for (const [start, end] of nounChunks) {
        if (start > 0 && tags[start - 1] === "IN") {
            out.push({ start: start - 1, end, label: "PP", is_base: false });
        }
    }
    out.push({ start: 0, end: tags.length, label: "S", is_base: false });
    out.sort((a, b) => a.start - b.start || a.end - b.end || a.label.localeCompare(b.label));
    return out;
}
