/** Shapes of the dataset format consumed by the selection pipeline. */

export interface TokenRecord {
    text: string;
    lemma: string;
    pos: string;
    ner: string;
}

export interface ConstituentRecord {
    start: number;
    end: number;
    label: string;
    is_base: boolean;
}

export interface SentenceRecord {
    tokens: TokenRecord[];
    constituents: ConstituentRecord[];
}

export interface DocumentRecord {
    doc_id: string;
    rank: number;
    sentences: SentenceRecord[];
}

export interface BundleRecord {
    question_id: string;
    question: SentenceRecord;
    documents: DocumentRecord[];
    answers: string[];
}
