/** Reproducible subsampling of a converted dataset file. */

import * as fs from "node:fs";

/** Deterministic 32-bit PRNG; same seed, same stream, everywhere. */
export function mulberry32(seed: number): () => number {
    let state = seed >>> 0;
    return () => {
        state = (state + 0x6d2b79f5) >>> 0;
        let t = state;
        t = Math.imul(t ^ (t >>> 15), t | 1);
        t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
        return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
}

/**
 * Sample `size` lines of a dataset file without replacement (seeded),
 * writing them back sorted by question_id. size 0 yields an empty,
 * valid file.
 */
export function makeFixture(inPath: string, outPath: string, size: number, seed: number): number {
    const lines = fs
        .readFileSync(inPath, "utf-8")
        .split("\n")
        .filter((line) => line.trim());
    const rand = mulberry32(seed);
    const indices = lines.map((_, i) => i);
    for (let i = indices.length - 1; i > 0; i--) {
        const j = Math.floor(rand() * (i + 1));
        [indices[i], indices[j]] = [indices[j], indices[i]];
    }
    const chosen = indices.slice(0, Math.min(size, indices.length));
    const records = chosen.map((i) => JSON.parse(lines[i]) as { question_id: string });
    records.sort((a, b) =>
        a.question_id < b.question_id ? -1 : a.question_id > b.question_id ? 1 : 0,
    );
    const out = records.map((r) => JSON.stringify(r));
    fs.writeFileSync(outPath, out.join("\n") + (out.length ? "\n" : ""), "utf-8");
    return out.length;
}
