import pathlib

import pytest

from synfeat import default_phrase_inventory, default_pos_inventory, load_lexicon, parse_bracketed

DATA_DIR = pathlib.Path(__file__).parent / "data"

# Nine-word sentence exercising every feature: nested verb phrases, a
# phrase-final adverb, and sentence-final punctuation that counts as a word.
CANONICAL = (
    "(S (NP (DT The) (JJ two) (JJ wayward) (NNS boys)) "
    "(VP (VBP like) (VP (VBG eating) (NP (NNS apples)) (ADVP (RB quickly)))) (. .))"
)

SINGLE_WORD = "(S (NN dog))"


@pytest.fixture(scope="session")
def canonical_tree():
    return parse_bracketed(CANONICAL)


@pytest.fixture(scope="session")
def single_word_tree():
    return parse_bracketed(SINGLE_WORD)


@pytest.fixture(scope="session")
def pos_inv():
    return default_pos_inventory()


@pytest.fixture(scope="session")
def phrase_inv():
    return default_phrase_inventory()


@pytest.fixture(scope="session")
def mini_lexicon():
    return load_lexicon(DATA_DIR / "mini_lexicon.txt")


@pytest.fixture(scope="session")
def edge_tree_sources():
    lines = (DATA_DIR / "edge_trees.txt").read_text("utf-8").splitlines()
    return [line for line in lines if line.strip()]


def label_of(tree, node_id):
    return tree.nodes[node_id].label
