/** Shared fixture trees: the nine-word standard sentence plus awkward cases. */

export const CANONICAL =
  "(S (NP (DT The) (JJ two) (JJ wayward) (NNS boys)) " +
  "(VP (VBP like) (VP (VBG eating) (NP (NNS apples)) (ADVP (RB quickly)))) (. .))";

export const FIXTURE_TREES: string[] = [
  CANONICAL,
  "(S (NN dog))",
  "(S (NP (DT the) (NN cat)) (VP (VBZ sleeps)) (. .))",
  "(S (SYM -LRB-) (NN aside) (SYM -RRB-))",
  "(S (NP (NP (NP (NP (NN deep))))))",
  "(S (NN café) (, ,) (NN naïve))",
];

export const MINI_LEXICON = [
  "THE DH AH0",
  "TWO T UW1",
  "WAYWARD W EY1 W ER0 D",
  "BOYS B OY1 Z",
  "LIKE L AY1 K",
  "EATING IY1 T IH0 NG",
  "APPLES AE1 P AH0 L Z",
  "QUICKLY K W IH1 K L IY0",
  "DOG D AO1 G",
].join("\n");
