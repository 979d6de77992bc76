"""Random constituency-tree generation for tests and benchmarks.

Trees are emitted as bracketed sources so they also exercise the parser.
Labels come from the shipped default inventories, word counts and
preterminal depths are capped, and a sprinkling of punctuation, bracket
characters and non-ASCII words covers the awkward token cases.
"""

from __future__ import annotations

import random
import string

from .inventories import default_phrase_inventory, default_pos_inventory

__all__ = ["random_corpus", "random_tree_source"]

_WORD_POS = tuple(
    tag for tag in default_pos_inventory().labels if tag not in (".", ",", ":")
)
_PHRASE = default_phrase_inventory().labels

_ODD_WORDS = ("(", ")", "[", "]", "{", "}", "café", "naïve", "re-do", "o'clock", "x", "3.5")


def _random_word(rng: random.Random) -> tuple[str, str]:
    roll = rng.random()
    if roll < 0.04:
        return ",", ","
    if roll < 0.06:
        return ":", ":"
    if roll < 0.09:
        return rng.choice(_ODD_WORDS), rng.choice(_WORD_POS)
    length = rng.randint(1, 8)
    text = "".join(rng.choice(string.ascii_lowercase) for _ in range(length))
    return text, rng.choice(_WORD_POS)


def random_tree_source(rng: random.Random, max_words: int = 50, max_depth: int = 15) -> str:
    """One random well-formed bracketed tree.

    ``max_depth`` caps the preterminal depth (edges from the root), so
    generated trees match corpora whose deepest level is ``max_depth``.
    """
    if max_words < 1 or max_depth < 2:
        raise ValueError("need max_words >= 1 and max_depth >= 2")
    num_words = rng.randint(1, max_words)
    words = [_random_word(rng) for _ in range(num_words)]
    if num_words > 1 and rng.random() < 0.5:
        words[-1] = (".", ".")

    def preterminal(i: int) -> str:
        text, pos = words[i]
        return f"({pos} {_escape(text)})"

    def build(lo: int, hi: int, depth: int) -> str:
        # Node at this depth spanning words [lo, hi); preterminals may
        # not exceed max_depth, children sit at depth + 1.
        size = hi - lo
        if size == 1:
            if depth + 1 <= max_depth - 1 and rng.random() < 0.25:
                return f"({rng.choice(_PHRASE)} {build(lo, hi, depth + 1)})"
            return preterminal(lo)
        if depth + 1 >= max_depth:
            children = [preterminal(i) for i in range(lo, hi)]
        else:
            num_children = rng.randint(2, min(size, 4))
            cuts = sorted(rng.sample(range(lo + 1, hi), num_children - 1))
            bounds = [lo, *cuts, hi]
            children = [build(bounds[i], bounds[i + 1], depth + 1) for i in range(num_children)]
        return f"({rng.choice(_PHRASE)} {' '.join(children)})"

    if num_words == 1:
        return f"({rng.choice(_PHRASE)} {preterminal(0)})"
    return build(0, num_words, 0)


def _escape(text: str) -> str:
    return {
        "(": "-LRB-",
        ")": "-RRB-",
        "[": "-LSB-",
        "]": "-RSB-",
        "{": "-LCB-",
        "}": "-RCB-",
    }.get(text, text)


def random_corpus(seed: int, size: int, max_words: int = 50, max_depth: int = 15) -> list[str]:
    """A deterministic list of random tree sources."""
    rng = random.Random(seed)
    return [random_tree_source(rng, max_words, max_depth) for _ in range(size)]
