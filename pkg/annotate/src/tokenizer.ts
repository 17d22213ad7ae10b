/** Sentence segmentation and Treebank-flavored tokenization. */

const ABBREVIATIONS = new Set([
    "mr", "mrs", "ms", "dr", "prof", "st", "jr", "sr", "vs", "etc", "inc",
    "ltd", "co", "no", "vol", "gen", "col", "fig", "e.g", "i.e", "u.s", "u.k",
]);

/**
 * Split a passage into sentences on terminal punctuation followed by
 * whitespace and an upper-case or quote opener, guarding a small
 * abbreviation list.
 */
export function splitSentences(text: string): string[] {
    const out: string[] = [];
    let start = 0;
    for (let i = 0; i < text.length; i++) {
        const ch = text[i];
        if (ch !== "." && ch !== "!" && ch !== "?") continue;
        const next = text.slice(i + 1);
        if (!/^\s+["'(]?[A-Z0-9]/.test(next) && next.trim() !== "") continue;
        if (ch === ".") {
            const before = text.slice(start, i);
            const lastWord = before.split(/\s+/).pop()?.toLowerCase() ?? "";
            if (ABBREVIATIONS.has(lastWord.replace(/\.$/, ""))) continue;
            // initials like "J." or dotted acronyms
            if (/^[A-Za-z]$/.test(lastWord) || /[A-Za-z]\.[A-Za-z]$/.test(lastWord)) continue;
        }
        const sentence = text.slice(start, i + 1).trim();
        if (sentence) out.push(sentence);
        start = i + 1;
    }
    const tail = text.slice(start).trim();
    if (tail) out.push(tail);
    return out;
}

const TOKEN_RE =
    /[A-Za-z]+(?=n't\b)|n't\b|'(?:s|re|ve|ll|d|m)\b|[A-Za-z]+(?:\.[A-Za-z]\.?)+|\d+(?:[.,]\d+)*|[A-Za-z]+|[^\sA-Za-z\d]/g;

/** Split one sentence into surface tokens (contractions split off). */
export function tokenize(sentence: string): string[] {
    return sentence.match(TOKEN_RE) ?? [];
}
