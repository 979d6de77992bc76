"""Syntactic features from constituency parse trees for TTS front ends.

Parses Penn-Treebank bracketed trees and turns them into two per-word
feature families for conditioning speech synthesis: phrase-structure
features (POS plus per-tree-level phrase label, boundary flag and
relative position) and word-relation features (POS, junction phrases,
lowest common ancestor and tree distances between adjacent words), with
optional phoneme-level upsampling and a seeded ReLU projection.
"""

from .conditioning import DEFAULT_OUT_DIM, Projection, init_projection, project_relu
from .inventories import (
    NONE_LABEL,
    PHRASE,
    POS,
    LabelInventory,
    UnknownLabelError,
    build_inventory_from_corpus,
    default_phrase_inventory,
    default_pos_inventory,
    load_inventory,
    one_hot,
    save_inventory,
)
from .matrixio import read_matrix, write_matrix
from .phonemes import (
    PUNCTUATION_POS,
    Lexicon,
    OovError,
    PhonemeAlignment,
    WordPhonemes,
    load_lexicon,
    phonemize,
    upsample,
)
from .psf import (
    BOTTOM_UP,
    TOP_DOWN,
    PsfConfig,
    boundary_flag,
    extract_psf,
    psf_schema,
    relative_position,
    select_layers,
)
from .treebank import (
    Node,
    SyntaxTree,
    TreeParseError,
    Word,
    parse_bracketed,
    parse_corpus,
    read_corpus,
    serialize,
)
from .wrf import (
    extract_wrf,
    heights_and_distances,
    highest_phrase_ending_before,
    highest_phrase_starting_at,
    wrf_schema,
)

__version__ = "0.1.0"

__all__ = [
    "BOTTOM_UP",
    "DEFAULT_OUT_DIM",
    "LabelInventory",
    "Lexicon",
    "NONE_LABEL",
    "Node",
    "OovError",
    "PHRASE",
    "POS",
    "PUNCTUATION_POS",
    "PhonemeAlignment",
    "Projection",
    "PsfConfig",
    "SyntaxTree",
    "TOP_DOWN",
    "TreeParseError",
    "UnknownLabelError",
    "Word",
    "WordPhonemes",
    "boundary_flag",
    "build_inventory_from_corpus",
    "default_phrase_inventory",
    "default_pos_inventory",
    "extract_psf",
    "extract_wrf",
    "heights_and_distances",
    "highest_phrase_ending_before",
    "highest_phrase_starting_at",
    "init_projection",
    "load_inventory",
    "load_lexicon",
    "one_hot",
    "parse_bracketed",
    "parse_corpus",
    "phonemize",
    "project_relu",
    "psf_schema",
    "read_corpus",
    "read_matrix",
    "relative_position",
    "save_inventory",
    "select_layers",
    "serialize",
    "upsample",
    "wrf_schema",
    "write_matrix",
]
