"""Phrase-structure features.

One row per word: the POS one-hot followed by N tree-level blocks, each
holding a phrase-label one-hot, a phrase-initial boundary flag, and the
word's relative position within that phrase. Levels are taken from the
word's phrase-ancestor chain either top-down (root first) or bottom-up
(lowest phrase first); words with shorter chains get all-zero blocks at
the tail of the level stack, so level semantics stay fixed.

With the default inventories a row is 39 + 29 * N columns wide.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import get_kernels
from .inventories import NONE_LABEL, LabelInventory, label_indices
from .schema import ColumnBlock
from .treebank import SyntaxTree

__all__ = [
    "BOTTOM_UP",
    "TOP_DOWN",
    "PsfConfig",
    "boundary_flag",
    "extract_psf",
    "psf_schema",
    "relative_position",
    "select_layers",
]

TOP_DOWN = "top-down"
BOTTOM_UP = "bottom-up"
_DIRECTIONS = (TOP_DOWN, BOTTOM_UP)


@dataclass(frozen=True)
class PsfConfig:
    """Number of tree levels per word and the direction they are taken in."""

    num_levels: int = 10
    direction: str = TOP_DOWN

    def __post_init__(self):
        if self.num_levels < 1:
            raise ValueError(f"num_levels must be >= 1, got {self.num_levels}")
        if self.direction not in _DIRECTIONS:
            raise ValueError(f"direction must be one of {_DIRECTIONS}, got {self.direction!r}")


def select_layers(tree: SyntaxTree, word_index: int, config: PsfConfig) -> list[int | None]:
    """The phrase nodes feeding each level block, ``None`` where absent.

    Top-down takes the first ``num_levels`` entries of the ancestor chain
    (root first); bottom-up takes the last entries, lowest phrase first.
    """
    chain = tree.phrase_ancestors(word_index)
    present = min(config.num_levels, len(chain))
    if config.direction == TOP_DOWN:
        selected: list[int | None] = list(chain[:present])
    else:
        selected = list(chain[len(chain) - present :][::-1])
    selected.extend([None] * (config.num_levels - present))
    return selected


def _check_phrase_ancestor(tree: SyntaxTree, word_index: int, node_id: int) -> None:
    tree.word(word_index)
    node = tree.nodes[node_id]
    if node.is_preterminal or not node.span[0] <= word_index <= node.span[1]:
        raise ValueError(f"node {node_id} ({node.label}) is not a phrase ancestor of word {word_index}")


def relative_position(tree: SyntaxTree, word_index: int, node_id: int) -> float:
    """Word position within the phrase, scaled to (0, 1].

    The 1-based position of the word among the phrase's words, divided by
    the phrase's word count; punctuation counts like any word.
    """
    _check_phrase_ancestor(tree, word_index, node_id)
    first, last = tree.nodes[node_id].span
    return (word_index - first + 1) / (last - first + 1)


def boundary_flag(tree: SyntaxTree, word_index: int, node_id: int) -> float:
    """1.0 iff the word is the first word of the phrase."""
    _check_phrase_ancestor(tree, word_index, node_id)
    return 1.0 if tree.nodes[node_id].span[0] == word_index else 0.0


def extract_psf(
    tree: SyntaxTree,
    config: PsfConfig,
    pos_inv: LabelInventory,
    phrase_inv: LabelInventory,
    unknown_policy: str = "error",
) -> np.ndarray:
    """Phrase-structure feature matrix, one float32 row per word.

    Under the ``error`` policy every POS and phrase label in the tree
    must be known, whether or not its level is selected; mismatched
    tagsets fail instead of silently zeroing.
    """
    arrays = tree.arrays
    pos_idx = label_indices((tree.pos_of(w) for w in range(1, tree.num_words + 1)), pos_inv, unknown_policy)
    plabel_idx = label_indices(
        (node.label if not node.is_preterminal else NONE_LABEL for node in tree.nodes),
        phrase_inv,
        unknown_policy,
    )
    kernels = get_kernels()
    return kernels.psf_fill(
        pos_idx,
        arrays.pret,
        arrays.parent,
        arrays.depth,
        arrays.first,
        arrays.last,
        plabel_idx,
        config.num_levels,
        config.direction == TOP_DOWN,
        len(pos_inv),
        len(phrase_inv),
    )


def psf_schema(config: PsfConfig, pos_inv: LabelInventory, phrase_inv: LabelInventory) -> list[ColumnBlock]:
    blocks = [ColumnBlock("pos", 0, len(pos_inv), pos_inv.labels)]
    offset = len(pos_inv)
    for level in range(1, config.num_levels + 1):
        blocks.append(ColumnBlock(f"level{level}_label", offset, len(phrase_inv), phrase_inv.labels))
        offset += len(phrase_inv)
        blocks.append(ColumnBlock(f"level{level}_boundary", offset, 1))
        offset += 1
        blocks.append(ColumnBlock(f"level{level}_relpos", offset, 1))
        offset += 1
    return blocks
