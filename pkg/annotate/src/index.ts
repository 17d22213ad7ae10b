export { annotatePassage, annotateSentence } from "./annotate.js";
export { chunk } from "./chunker.js";
export { lemmatize } from "./lemmatizer.js";
export { tagEntities } from "./ner.js";
export { tagToken, tagTokens } from "./tagger.js";
export { splitSentences, tokenize } from "./tokenizer.js";
export {
    annotateCorpus,
    readRetrievalResults,
    readSquadQuestions,
    writeDataset,
} from "./convert.js";
export { makeFixture, mulberry32 } from "./fixture.js";
export type {
    BundleRecord,
    ConstituentRecord,
    DocumentRecord,
    SentenceRecord,
    TokenRecord,
} from "./schema.js";
