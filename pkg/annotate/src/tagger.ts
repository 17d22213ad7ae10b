/** Rule-based POS tagging over closed-class lists and suffix heuristics. */

import {
    ADVERBS,
    CONJUNCTIONS,
    DETERMINERS,
    MODALS,
    PREPOSITIONS,
    PRONOUNS,
    VERB_FORMS,
    WH_WORDS,
} from "./lexicon.js";

const PUNCT_RE = /^[^A-Za-z0-9]+$/;
const NUMBER_RE = /^\d+(?:[.,]\d+)*$/;

function isCapitalized(word: string): boolean {
    return /^[A-Z]/.test(word);
}

/** Tag one token; `first` marks the sentence-initial position. */
export function tagToken(word: string, first: boolean): string {
    const lower = word.toLowerCase();
    if (PUNCT_RE.test(word)) {
        return /^[.!?]+$/.test(word) ? "." : word === "," ? "," : "SYM";
    }
    if (NUMBER_RE.test(word)) return "CD";
    if (word === "n't") return "RB";
    if (word === "'s") return "POS";
    if (/^'(re|ve|ll|d|m)$/.test(word)) return "VBP";
    if (WH_WORDS.has(lower)) return lower === "how" || lower === "when" || lower === "where" || lower === "why" ? "WRB" : "WP";
    if (DETERMINERS.has(lower)) return "DT";
    if (PREPOSITIONS.has(lower)) return "IN";
    if (PRONOUNS.has(lower)) return "PRP";
    if (CONJUNCTIONS.has(lower)) return "CC";
    if (MODALS.has(lower)) return "MD";
    if (ADVERBS.has(lower)) return "RB";
    const verb = VERB_FORMS[lower];
    if (verb) return verb[0];
    if (isCapitalized(word) && !first) return "NNP";
    if (lower.endsWith("ly")) return "RB";
    if (lower.endsWith("ing") && lower.length > 4) return "VBG";
    if (lower.endsWith("ed") && lower.length > 3) return "VBD";
    if (isCapitalized(word)) return "NNP";
    if (lower.endsWith("s") && !lower.endsWith("ss") && lower.length > 3) return "NNS";
    if (/(tion|ment|ness|ity|ism|ist|er|or)$/.test(lower)) return "NN";
    if (/(ous|ful|ive|ble|al|ic)$/.test(lower)) return "JJ";
    return "NN";
}

export function tagTokens(words: string[]): string[] {
    return words.map((word, i) => tagToken(word, i === 0));
}
