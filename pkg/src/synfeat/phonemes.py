"""Pronunciation lexicon and word-to-phoneme upsampling.

Word-level feature rows are conditioned on phoneme sequences downstream,
so each word's row is repeated once per phoneme. Punctuation words keep
a single silence phoneme: they carry junction/boundary information that
must survive into the phoneme-level stream.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .treebank import SyntaxTree

__all__ = [
    "DEFAULT_SILENCE",
    "Lexicon",
    "OovError",
    "PUNCTUATION_POS",
    "PhonemeAlignment",
    "WordPhonemes",
    "load_lexicon",
    "phonemize",
    "upsample",
]

DEFAULT_SILENCE = "sil"

# PTB punctuation POS tags; words tagged with these become silence.
PUNCTUATION_POS = frozenset({".", ",", ":", "``", "''", "-LRB-", "-RRB-"})

_OOV_POLICIES = ("error", "letters", "skip")

_VARIANT_MARKER = re.compile(r"\(\d+\)$")


class OovError(KeyError):
    """A word missing from the lexicon under the ``error`` policy."""

    def __init__(self, message: str, word: str | None = None):
        super().__init__(message)
        self.word = word

    @classmethod
    def for_word(cls, word: str) -> "OovError":
        return cls(f"word {word!r} not in lexicon", word)


@dataclass(frozen=True)
class Lexicon:
    """Case-insensitive word to phoneme-sequence mapping."""

    entries: Mapping[str, tuple[str, ...]]
    silence_symbol: str = DEFAULT_SILENCE
    oov_policy: str = "error"

    def __post_init__(self):
        if self.oov_policy not in _OOV_POLICIES:
            raise ValueError(f"oov_policy must be one of {_OOV_POLICIES}")

    def lookup(self, word: str) -> tuple[str, ...] | None:
        return self.entries.get(word.lower())


def load_lexicon(
    path: str | os.PathLike,
    silence_symbol: str = DEFAULT_SILENCE,
    oov_policy: str = "error",
) -> Lexicon:
    """Read a CMUdict-style lexicon: ``WORD PH1 PH2 ...`` per line.

    ``;;;`` comment lines are skipped, ``WORD(2)`` variant markers are
    dropped, and duplicate words keep their first pronunciation.
    """
    entries: dict[str, tuple[str, ...]] = {}
    with open(path, encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise ValueError(f"{path}:{lineno}: entry {parts[0]!r} has no phonemes")
            word = _VARIANT_MARKER.sub("", parts[0]).lower()
            entries.setdefault(word, tuple(parts[1:]))
    return Lexicon(entries, silence_symbol, oov_policy)


@dataclass(frozen=True)
class WordPhonemes:
    word_index: int  # 1-based index into the source sentence
    count: int
    symbols: tuple[str, ...]


@dataclass(frozen=True)
class PhonemeAlignment:
    """Per-word phoneme expansion; skipped words carry no entry."""

    entries: tuple[WordPhonemes, ...] = field(default_factory=tuple)

    @property
    def total_phonemes(self) -> int:
        return sum(e.count for e in self.entries)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(e.count for e in self.entries)

    @property
    def word_indices(self) -> tuple[int, ...]:
        return tuple(e.word_index for e in self.entries)


def phonemize(
    tree: SyntaxTree,
    lexicon: Lexicon,
    punctuation_pos: frozenset[str] = PUNCTUATION_POS,
) -> PhonemeAlignment:
    """Expand the sentence's words to phonemes.

    Punctuation words map to a single silence phoneme. Out-of-vocabulary
    words follow the lexicon's policy: ``error`` raises, ``letters``
    emits one pseudo-phoneme per character, ``skip`` drops the word.
    """
    entries: list[WordPhonemes] = []
    for word in tree.words:
        if tree.nodes[word.preterminal].label in punctuation_pos:
            symbols: tuple[str, ...] = (lexicon.silence_symbol,)
        else:
            found = lexicon.lookup(word.text)
            if found is not None:
                symbols = found
            elif lexicon.oov_policy == "error":
                raise OovError.for_word(word.text)
            elif lexicon.oov_policy == "letters":
                symbols = tuple(ch.upper() for ch in word.text)
            else:  # skip
                continue
        entries.append(WordPhonemes(word.index, len(symbols), symbols))
    return PhonemeAlignment(tuple(entries))


def upsample(word_features: np.ndarray, alignment: PhonemeAlignment) -> np.ndarray:
    """Repeat each word's feature row once per phoneme.

    ``word_features`` must have one row per alignment entry (skipped
    words already dropped); column count and row bits are preserved.
    """
    if word_features.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {word_features.shape}")
    if word_features.shape[0] != len(alignment.entries):
        raise ValueError(
            f"row/alignment mismatch: {word_features.shape[0]} rows for {len(alignment.entries)} aligned words"
        )
    if not alignment.entries:
        return word_features[:0].copy()
    return np.repeat(word_features, alignment.counts, axis=0)
