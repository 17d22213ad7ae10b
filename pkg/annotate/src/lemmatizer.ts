/** Suffix-rule lemmatization with irregular-form tables; output lowercase. */

import { IRREGULAR_NOUNS, VERB_FORMS } from "./lexicon.js";

function stripPlural(lower: string): string {
    if (IRREGULAR_NOUNS[lower]) return IRREGULAR_NOUNS[lower];
    if (lower.endsWith("ies") && lower.length > 4) return lower.slice(0, -3) + "y";
    if (/(ses|xes|zes|ches|shes)$/.test(lower)) return lower.slice(0, -2);
    if (lower.endsWith("s") && !lower.endsWith("ss") && lower.length > 3) {
        return lower.slice(0, -1);
    }
    return lower;
}

function stripPast(lower: string): string {
    if (lower.endsWith("ied") && lower.length > 4) return lower.slice(0, -3) + "y";
    if (lower.endsWith("ed") && lower.length > 3) {
        let stem = lower.slice(0, -2);
        if (stem.length > 2 && stem[stem.length - 1] === stem[stem.length - 2]) {
            stem = stem.slice(0, -1); // stopped -> stop
        }
        return stem;
    }
    return lower;
}

function stripGerund(lower: string): string {
    if (lower.endsWith("ing") && lower.length > 4) {
        let stem = lower.slice(0, -3);
        if (stem.length > 2 && stem[stem.length - 1] === stem[stem.length - 2]) {
            stem = stem.slice(0, -1); // sitting -> sit
        }
        return stem;
    }
    return lower;
}

/** Lemma for one token given its POS tag. */
export function lemmatize(word: string, pos: string): string {
    const lower = word.toLowerCase();
    const verb = VERB_FORMS[lower];
    if (verb) return verb[1];
    if (pos === "NNS" || pos === "NNPS") return stripPlural(lower);
    if (pos === "VBD" || pos === "VBN") return stripPast(lower);
    if (pos === "VBG") return stripGerund(lower);
    if (pos === "VBZ") return stripPlural(lower);
    if (word === "n't") return "not";
    if (word === "'s") return "'s";
    return lower;
}
