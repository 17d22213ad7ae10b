/** Pattern-based named-entity tags: "O" unless a rule fires. */

import { COMMON_WORDS, MONTHS } from "./lexicon.js";

const NUMBER_RE = /^\d+(?:[.,]\d+)*$/;

export function tagEntities(words: string[], tags: string[]): string[] {
    return words.map((word, i) => {
        const lower = word.toLowerCase();
        if (NUMBER_RE.test(word)) return "NUMBER";
        if (MONTHS.has(lower)) return "DATE";
        if (tags[i] === "NNP") return "ENTITY";
        // sentence-initial capitalized words count when not everyday vocabulary
        if (i === 0 && /^[A-Z]/.test(word) && !COMMON_WORDS.has(lower)) return "ENTITY";
        return "O";
    });
}
