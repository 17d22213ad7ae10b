"""Score the sentences of one hand-built question with two selectors.

Shows the core loop: build a retrieval bundle, score every sentence,
pick the top k. The evidence matcher sees through the surface-level
word overlap that fools tf-idf here.
"""

from sieve.corpus import AnnotatedSentence, ConstituentSpan, Document, RetrievalBundle, Token
from sieve.evdmatch import EvdMatchSelector, evidence_set
from sieve.selection import score_all, select_top_k
from sieve.tfidf import TfIdfSelector


def tok(text, lemma=None, pos="NN", ner="O"):
    return Token(text=text, lemma=lemma or text.lower(), pos=pos, ner=ner)


def main():
    question = AnnotatedSentence(
        "q", 0,
        tokens=(
            tok("who", pos="WP"), tok("wrote", lemma="write", pos="VBD"),
            tok("the", pos="DT"), tok("Winter", pos="NNP", ner="ENT"),
            tok("Chronicle", pos="NNP", ner="ENT"), tok("?", pos="."),
        ),
        constituents=(
            ConstituentSpan(0, 1, "WHNP", is_base=True),
            ConstituentSpan(1, 2, "VP", is_base=True),
            ConstituentSpan(2, 5, "NP", is_base=True),
            ConstituentSpan(0, 6, "S", is_base=False),
        ),
    )
    print("question:", " ".join(t.text for t in question.tokens))
    print("evidence:", [" ".join(e.lemmas) for e in evidence_set(question)])
    print()

    def sentence(doc_id, idx, words):
        return AnnotatedSentence(doc_id, idx, tuple(tok(*w) for w in words), ())

    # a distractor: copies the question words, scrambles the phrase
    distractor = sentence(
        "d1", 0,
        [("Winter",), ("storms",), ("wrote", "write"), ("the",), ("Chronicle",), ("off",), ("?",)],
    )
    # the answer sentence (different verb surface, same lemma, phrase intact)
    answer = AnnotatedSentence(
        "d1", 1,
        tokens=(
            tok("the", pos="DT"), tok("Winter", pos="NNP", ner="ENT"),
            tok("Chronicle", pos="NNP", ner="ENT"),
            tok("writes", lemma="write", pos="VBZ"), tok("history", pos="NN"),
            tok("says", lemma="say", pos="VBZ"), tok("Miriam", pos="NNP", ner="ENT"),
        ),
        constituents=(ConstituentSpan(0, 3, "NP", is_base=True),),
    )
    filler = sentence("d2", 0, [("unrelated",), ("words",), ("entirely",)])

    bundle = RetrievalBundle(
        question_id="demo",
        question=question,
        documents=(
            Document("d1", 1, (distractor, answer)),
            Document("d2", 2, (filler,)),
        ),
        answers=("Miriam",),
    )

    for selector in (TfIdfSelector(), EvdMatchSelector()):
        scored = score_all(selector, bundle)
        print(f"--- {selector.name}")
        for item in select_top_k(scored, 3):
            text = " ".join(t.text for t in item.sentence.tokens)
            print(f"  {item.score:6.3f}  (doc {item.doc_rank}, sent {item.sentence_index})  {text}")
        print()


if __name__ == "__main__":
    main()
