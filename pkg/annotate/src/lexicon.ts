/** Closed-class word lists and irregular forms for tagging and lemmas. */

export const DETERMINERS = new Set([
    "the", "a", "an", "this", "that", "these", "those", "each", "every",
    "some", "any", "no", "both", "all",
]);

export const PREPOSITIONS = new Set([
    "of", "in", "on", "at", "by", "for", "with", "from", "to", "into",
    "about", "over", "under", "between", "during", "after", "before",
    "through", "against", "as", "near", "within", "across",
]);

export const PRONOUNS = new Set([
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
    "them", "its", "his", "their", "our", "your", "my",
]);

export const CONJUNCTIONS = new Set(["and", "or", "but", "nor", "so", "yet"]);

export const MODALS = new Set([
    "can", "could", "may", "might", "must", "shall", "should", "will", "would",
]);

export const WH_WORDS = new Set([
    "who", "whom", "whose", "what", "which", "when", "where", "why", "how",
]);

export const ADVERBS = new Set([
    "not", "also", "very", "too", "then", "there", "here", "now", "only",
    "just", "still", "never", "often", "most", "more",
]);

/** verb form -> [POS tag, lemma] */
export const VERB_FORMS: Record<string, [string, string]> = {
    am: ["VBP", "be"], is: ["VBZ", "be"], are: ["VBP", "be"],
    was: ["VBD", "be"], were: ["VBD", "be"], be: ["VB", "be"],
    been: ["VBN", "be"], being: ["VBG", "be"],
    has: ["VBZ", "have"], have: ["VBP", "have"], had: ["VBD", "have"],
    having: ["VBG", "have"],
    does: ["VBZ", "do"], do: ["VBP", "do"], did: ["VBD", "do"],
    done: ["VBN", "do"], doing: ["VBG", "do"],
    says: ["VBZ", "say"], said: ["VBD", "say"],
    wrote: ["VBD", "write"], written: ["VBN", "write"], writes: ["VBZ", "write"],
    made: ["VBD", "make"], makes: ["VBZ", "make"], making: ["VBG", "make"],
    took: ["VBD", "take"], taken: ["VBN", "take"], taking: ["VBG", "take"],
    became: ["VBD", "become"], becomes: ["VBZ", "become"],
    won: ["VBD", "win"], wins: ["VBZ", "win"], winning: ["VBG", "win"],
    went: ["VBD", "go"], goes: ["VBZ", "go"], gone: ["VBN", "go"],
    held: ["VBD", "hold"], holds: ["VBZ", "hold"],
    found: ["VBD", "find"], finds: ["VBZ", "find"],
    gave: ["VBD", "give"], given: ["VBN", "give"], gives: ["VBZ", "give"],
    built: ["VBD", "build"], builds: ["VBZ", "build"],
    led: ["VBD", "lead"], leads: ["VBZ", "lead"],
    grew: ["VBD", "grow"], grown: ["VBN", "grow"], grows: ["VBZ", "grow"],
    knew: ["VBD", "know"], known: ["VBN", "know"], knows: ["VBZ", "know"],
    saw: ["VBD", "see"], seen: ["VBN", "see"], sees: ["VBZ", "see"],
    came: ["VBD", "come"], comes: ["VBZ", "come"],
    got: ["VBD", "get"], gets: ["VBZ", "get"],
    left: ["VBD", "leave"], leaves: ["VBZ", "leave"],
    met: ["VBD", "meet"], meets: ["VBZ", "meet"],
    ran: ["VBD", "run"], runs: ["VBZ", "run"], running: ["VBG", "run"],
    sent: ["VBD", "send"], sends: ["VBZ", "send"],
    sold: ["VBD", "sell"], sells: ["VBZ", "sell"],
    began: ["VBD", "begin"], begun: ["VBN", "begin"], begins: ["VBZ", "begin"],
};

/** irregular noun plural -> singular */
export const IRREGULAR_NOUNS: Record<string, string> = {
    men: "man", women: "woman", children: "child", people: "person",
    feet: "foot", teeth: "tooth", mice: "mouse", geese: "goose", lives: "life",
};

export const MONTHS = new Set([
    "january", "february", "march", "april", "may", "june", "july", "august",
    "september", "october", "november", "december",
]);

export const COMMON_WORDS = new Set([
    ...DETERMINERS, ...PREPOSITIONS, ...PRONOUNS, ...CONJUNCTIONS,
    ...MODALS, ...WH_WORDS, ...ADVERBS, ...Object.keys(VERB_FORMS),
    "city", "play", "king", "river", "year", "years", "world", "first",
    "new", "one", "two", "three", "part", "time", "work", "state", "war",
    "company", "university", "school", "capital", "largest", "famous",
    "american", "british", "french",
]);
