"""Categorical label vocabularies and one-hot encoding.

An inventory is an ordered list of unique labels; its order fixes the
one-hot layout and therefore every feature dimension downstream. The
shipped defaults (39 POS tags, 27 phrase labels) live in
``synfeat/data/``; corpora with other tagsets can load or build their
own and all dimensions follow from the inventory sizes.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import cache, cached_property
from importlib import resources
from typing import Iterable, Mapping

import numpy as np

from .treebank import SyntaxTree

__all__ = [
    "NONE_LABEL",
    "POS",
    "PHRASE",
    "LabelInventory",
    "UnknownLabelError",
    "build_inventory_from_corpus",
    "default_phrase_inventory",
    "default_pos_inventory",
    "load_inventory",
    "one_hot",
    "save_inventory",
]

POS = "POS"
PHRASE = "PHRASE"
_KINDS = (POS, PHRASE)

# Sentinel for "no phrase here" (e.g. a word that begins no phrase).
# Always encoded as the all-zero vector, never as an extra category.
NONE_LABEL = "NONE"

_UNKNOWN_POLICIES = ("error", "zero")


class UnknownLabelError(KeyError):
    """A label missing from the inventory under the ``error`` policy."""

    def __init__(self, message: str, label: str | None = None):
        super().__init__(message)
        self.label = label

    @classmethod
    def for_label(cls, label: str, inventory: "LabelInventory") -> "UnknownLabelError":
        return cls(f"label {label!r} not in {inventory.kind} inventory of size {len(inventory)}", label)


@dataclass(frozen=True)
class LabelInventory:
    """Ordered categorical vocabulary; serialized order is authoritative."""

    kind: str
    labels: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        seen = set()
        for label in self.labels:
            if not label or re.search(r"\s", label):
                raise ValueError(f"invalid label {label!r}")
            if label in seen:
                raise ValueError(f"duplicate label {label!r}")
            seen.add(label)

    @cached_property
    def index(self) -> Mapping[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index_of(self, label: str) -> int:
        return self.index[label]

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self.index


def load_inventory(path: str | os.PathLike, kind: str) -> LabelInventory:
    """Read an inventory file: one label per line, ``#`` comments ignored."""
    with open(path, encoding="utf-8") as fh:
        labels = [ln.strip() for ln in fh]
    labels = [lb for lb in labels if lb and not lb.startswith("#")]
    if not labels:
        raise ValueError(f"inventory file {path} contains no labels")
    return LabelInventory(kind, tuple(labels))


def save_inventory(inventory: LabelInventory, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for label in inventory.labels:
            fh.write(label + "\n")


@cache
def default_pos_inventory() -> LabelInventory:
    return _load_default("pos_tags.txt", POS)


@cache
def default_phrase_inventory() -> LabelInventory:
    return _load_default("phrase_labels.txt", PHRASE)


def _load_default(filename: str, kind: str) -> LabelInventory:
    text = resources.files("synfeat").joinpath("data", filename).read_text("utf-8")
    labels = [ln.strip() for ln in text.splitlines()]
    return LabelInventory(kind, tuple(lb for lb in labels if lb and not lb.startswith("#")))


def build_inventory_from_corpus(trees: Iterable[SyntaxTree], kind: str) -> LabelInventory:
    """Collect labels in first-occurrence (preorder, corpus-order) order.

    Preterminal labels for ``kind=POS``, phrase labels for ``kind=PHRASE``.
    """
    if kind not in _KINDS:
        raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")
    want_preterminal = kind == POS
    labels: dict[str, None] = {}
    empty = True
    for tree in trees:
        empty = False
        for node_id in _preorder(tree):
            node = tree.nodes[node_id]
            if node.is_preterminal == want_preterminal:
                labels.setdefault(node.label, None)
    if empty:
        raise ValueError("cannot build an inventory from an empty corpus")
    return LabelInventory(kind, tuple(labels))


def _preorder(tree: SyntaxTree):
    stack = [tree.root]
    while stack:
        node_id = stack.pop()
        yield node_id
        stack.extend(reversed(tree.nodes[node_id].children))


def one_hot(label: str, inventory: LabelInventory, unknown_policy: str = "error") -> np.ndarray:
    """One-hot encode a label against the inventory.

    ``NONE`` always yields the all-zero vector. An unknown label raises
    under the ``error`` policy and yields the all-zero vector under
    ``zero`` (silent zeros hide tagset mismatches, so ``error`` is the
    default).
    """
    if unknown_policy not in _UNKNOWN_POLICIES:
        raise ValueError(f"unknown_policy must be one of {_UNKNOWN_POLICIES}")
    vec = np.zeros(len(inventory), dtype=np.float32)
    if label == NONE_LABEL:
        return vec
    position = inventory.index.get(label)
    if position is None:
        if unknown_policy == "error":
            raise UnknownLabelError.for_label(label, inventory)
        return vec
    vec[position] = 1.0
    return vec


def label_indices(
    labels: Iterable[str],
    inventory: LabelInventory,
    unknown_policy: str = "error",
) -> np.ndarray:
    """Map labels to inventory positions for the numeric kernels.

    ``NONE`` and (under the ``zero`` policy) unknown labels map to -1,
    which the kernels leave as an all-zero block.
    """
    if unknown_policy not in _UNKNOWN_POLICIES:
        raise ValueError(f"unknown_policy must be one of {_UNKNOWN_POLICIES}")
    index = inventory.index
    out = []
    for label in labels:
        if label == NONE_LABEL:
            out.append(-1)
            continue
        position = index.get(label)
        if position is None:
            if unknown_policy == "error":
                raise UnknownLabelError.for_label(label, inventory)
            out.append(-1)
        else:
            out.append(position)
    return np.asarray(out, dtype=np.int32)
