import { describe, expect, it } from "vitest";

import { splitSentences, tokenize } from "../src/tokenizer.js";

describe("splitSentences", () => {
    it("splits on terminal punctuation before a capital", () => {
        expect(splitSentences("One thing. Another thing! A third? Yes.")).toEqual([
            "One thing.", "Another thing!", "A third?", "Yes.",
        ]);
    });

    it("keeps abbreviations together", () => {
        expect(splitSentences("Mr. Keller wrote about rivers. The Rhine vs. the Danube was his topic.")).toEqual([
            "Mr. Keller wrote about rivers.",
            "The Rhine vs. the Danube was his topic.",
        ]);
    });

    it("returns nothing for blank text", () => {
        expect(splitSentences("   ")).toEqual([]);
    });

    it("keeps a trailing fragment without punctuation", () => {
        expect(splitSentences("First one. And then a fragment")).toEqual([
            "First one.", "And then a fragment",
        ]);
    });

    it("does not split before a lowercase continuation", () => {
        expect(splitSentences("First one. and more")).toEqual(["First one. and more"]);
    });
});

describe("tokenize", () => {
    it("separates punctuation from words", () => {
        expect(tokenize("Hamlet, a play.")).toEqual(["Hamlet", ",", "a", "play", "."]);
    });

    it("splits common contractions", () => {
        expect(tokenize("It doesn't matter")).toEqual(["It", "does", "n't", "matter"]);
        expect(tokenize("Shakespeare's play")).toEqual(["Shakespeare", "'s", "play"]);
    });

    it("keeps numbers with separators intact", () => {
        expect(tokenize("around 1,600.5 meters")).toEqual(["around", "1,600.5", "meters"]);
    });

    it("empty input gives no tokens", () => {
        expect(tokenize("")).toEqual([]);
    });
});
