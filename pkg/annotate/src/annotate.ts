/** Text -> annotated sentences in the pipeline's dataset schema. */

import { chunk } from "./chunker.js";
import { lemmatize } from "./lemmatizer.js";
import { tagEntities } from "./ner.js";
import { tagTokens } from "./tagger.js";
import { splitSentences, tokenize } from "./tokenizer.js";
import { ConstituentRecord, SentenceRecord } from "./schema.js";

export interface AnnotateStats {
    sentences: number;
    warnings: number;
}

/** Annotate one already-segmented sentence. */
export function annotateSentence(text: string, stats?: AnnotateStats): SentenceRecord {
    const words = tokenize(text);
    const tags = tagTokens(words);
    const ners = tagEntities(words, tags);
    const tokens = words.map((word, i) => ({
        text: word,
        lemma: lemmatize(word, tags[i]),
        pos: tags[i],
        ner: ners[i],
    }));
    let constituents: ConstituentRecord[];
    try {
        constituents = chunk(tags);
    } catch {
        // unparseable sentence: keep the tokens, drop the parse
        constituents = [];
        if (stats) stats.warnings += 1;
    }
    if (stats) stats.sentences += 1;
    return { tokens, constituents };
}

/** Segment a passage and annotate every non-empty sentence. */
export function annotatePassage(text: string, stats?: AnnotateStats): SentenceRecord[] {
    const out: SentenceRecord[] = [];
    for (const sentence of splitSentences(text)) {
        const record = annotateSentence(sentence, stats);
        if (record.tokens.length > 0) out.push(record);
    }
    return out;
}
