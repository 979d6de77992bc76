"""Word-relation features.

One row per word: the POS one-hot, the two junction phrases between the
word and its predecessor (the highest phrase the current word starts,
the highest phrase the preceding word ends), the label of their lowest
common ancestor, and four tree-distance scalars. Levels are measured
upward from the deepest preterminal, so the distance of a preterminal
to an ancestor equals their level difference and the current-to-
preceding distance is the shortest path between the two preterminals
(terminal words excluded).

The sentence-initial word has no junction: its preceding-phrase and LCA
blocks stay zero and all four scalars are 0. With the default
inventories a row is 39 + 3*27 + 4 = 124 columns wide.
"""

from __future__ import annotations

import numpy as np

from ._backend import get_kernels
from .inventories import NONE_LABEL, LabelInventory, label_indices
from .schema import ColumnBlock
from .treebank import SyntaxTree

__all__ = [
    "extract_wrf",
    "heights_and_distances",
    "highest_phrase_ending_before",
    "highest_phrase_starting_at",
    "wrf_schema",
]

DISTANCE_COLUMNS = ("lca_height", "cur_to_lca", "prev_to_lca", "cur_to_prev")


def highest_phrase_starting_at(tree: SyntaxTree, word_index: int) -> str:
    """Label of the highest phrase whose first word is this word.

    ``NONE`` when the word begins no phrase. Candidates with the same
    first word form an ancestor chain, so the closest-to-root one is
    unique.
    """
    tree.word(word_index)
    best = None
    for node in tree.nodes:
        if node.is_preterminal or node.span[0] != word_index:
            continue
        if best is None or node.depth < best.depth:
            best = node
    return NONE_LABEL if best is None else best.label


def highest_phrase_ending_before(tree: SyntaxTree, word_index: int) -> str:
    """Label of the highest phrase whose last word precedes this word.

    ``NONE`` for the sentence-initial word and when no phrase ends at
    the preceding word.
    """
    tree.word(word_index)
    if word_index == 1:
        return NONE_LABEL
    best = None
    for node in tree.nodes:
        if node.is_preterminal or node.span[1] != word_index - 1:
            continue
        if best is None or node.depth < best.depth:
            best = node
    return NONE_LABEL if best is None else best.label


def heights_and_distances(tree: SyntaxTree, word_index: int) -> tuple[int, int, int, int, int, int]:
    """Levels and path lengths for the word and its predecessor.

    Returns ``(lca_height, cur_height, prev_height, cur_to_lca,
    prev_to_lca, cur_to_prev)`` where heights count levels above the
    deepest preterminal of the tree and distances are edge counts from
    the preterminals up to the adjacent pair's lowest common ancestor.
    ``cur_to_prev`` is their sum, the shortest preterminal-to-preterminal
    path. The sentence-initial word has no predecessor and yields all
    zeros.
    """
    tree.word(word_index)
    if word_index == 1:
        return (0, 0, 0, 0, 0, 0)
    depth = tree.arrays.depth
    max_pret_depth = int(depth[tree.arrays.pret].max())
    lca_depth = int(depth[tree.lca(word_index - 1, word_index)])
    cur_depth = int(depth[tree.words[word_index - 1].preterminal])
    prev_depth = int(depth[tree.words[word_index - 2].preterminal])
    lca_height = max_pret_depth - lca_depth
    return (
        lca_height,
        max_pret_depth - cur_depth,
        max_pret_depth - prev_depth,
        cur_depth - lca_depth,
        prev_depth - lca_depth,
        (cur_depth - lca_depth) + (prev_depth - lca_depth),
    )


def extract_wrf(
    tree: SyntaxTree,
    pos_inv: LabelInventory,
    phrase_inv: LabelInventory,
    unknown_policy: str = "error",
) -> np.ndarray:
    """Word-relation feature matrix, one float32 row per word.

    Distances are stored raw (unnormalized). Under the ``error`` policy
    every POS and phrase label in the tree must be known.
    """
    arrays = tree.arrays
    pos_idx = label_indices((tree.pos_of(w) for w in range(1, tree.num_words + 1)), pos_inv, unknown_policy)
    plabel_idx = label_indices(
        (node.label if not node.is_preterminal else NONE_LABEL for node in tree.nodes),
        phrase_inv,
        unknown_policy,
    )
    kernels = get_kernels()
    return kernels.wrf_fill(
        pos_idx,
        arrays.pret,
        arrays.parent,
        arrays.depth,
        arrays.first,
        arrays.last,
        arrays.is_phrase,
        plabel_idx,
        len(pos_inv),
        len(phrase_inv),
    )


def wrf_schema(pos_inv: LabelInventory, phrase_inv: LabelInventory) -> list[ColumnBlock]:
    pos_dim, phrase_dim = len(pos_inv), len(phrase_inv)
    return [
        ColumnBlock("pos", 0, pos_dim, pos_inv.labels),
        ColumnBlock("starts_phrase", pos_dim, phrase_dim, phrase_inv.labels),
        ColumnBlock("prev_ends_phrase", pos_dim + phrase_dim, phrase_dim, phrase_inv.labels),
        ColumnBlock("lca", pos_dim + 2 * phrase_dim, phrase_dim, phrase_inv.labels),
        ColumnBlock("distance", pos_dim + 3 * phrase_dim, 4, DISTANCE_COLUMNS),
    ]
