"""Penn-Treebank-style bracketed constituency trees.

Parsing, validation, serialization and the tree geometry queries
(ancestor chains, spans, lowest common ancestors) that the feature
extractors are built on. Trees are immutable after construction and all
queries are read-only, so they can be shared freely across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from importlib import resources
from typing import NamedTuple

import numpy as np

__all__ = [
    "Node",
    "SyntaxTree",
    "TreeParseError",
    "Word",
    "default_phrase_label_guard",
    "parse_bracketed",
    "parse_corpus",
    "read_corpus",
    "serialize",
]


class TreeParseError(ValueError):
    """Malformed bracketed input. ``offset`` is the character position."""

    def __init__(self, message: str, offset: int = -1):
        # Single-arg form keeps the exception picklable across process pools.
        super().__init__(f"{message} (at offset {offset})" if offset >= 0 else message)
        self.offset = offset


# Tokens Penn-Treebank-style parsers emit in place of literal brackets.
# They are unescaped in word text but kept verbatim as labels.
_BRACKET_ESCAPES = {
    "-LRB-": "(",
    "-RRB-": ")",
    "-LSB-": "[",
    "-RSB-": "]",
    "-LCB-": "{",
    "-RCB-": "}",
}
_BRACKET_UNESCAPES = {v: k for k, v in _BRACKET_ESCAPES.items()}

_WRAPPER_LABELS = frozenset({"ROOT", "TOP"})

_TOKEN = re.compile(r"[()]|[^()\s]+")


@lru_cache(maxsize=1)
def default_phrase_label_guard() -> frozenset[str]:
    """Labels that may never tag a single word directly.

    A node like ``(NP dog)`` is structurally a preterminal, but a phrase
    label in that position means the POS layer was dropped somewhere
    upstream; the parser rejects it rather than emitting a tree with a
    phrase label as a POS tag. The set is the shipped default phrase
    inventory; pass ``phrase_label_guard=frozenset()`` to disable.
    """
    text = resources.files("synfeat").joinpath("data", "phrase_labels.txt").read_text("utf-8")
    labels = [ln.strip() for ln in text.splitlines()]
    return frozenset(lb for lb in labels if lb and not lb.startswith("#"))


@dataclass(frozen=True)
class Word:
    """A terminal token. Punctuation occupies a word index like any word."""

    index: int  # 1-based sentence position
    text: str
    preterminal: int  # node id of the POS node directly above


@dataclass(frozen=True)
class Node:
    """One tree node: a phrase or a preterminal (POS) node.

    ``span`` is the inclusive 1-based range of word indices covered.
    ``depth`` counts edges from the root (root depth 0). Preterminals
    have no child node ids; their single child is the word itself.
    """

    id: int
    label: str
    parent: int | None
    children: tuple[int, ...]
    span: tuple[int, int]
    depth: int
    is_preterminal: bool


class TreeArrays(NamedTuple):
    """Flat integer views of the tree, shared with the numeric kernels."""

    parent: np.ndarray  # int32 per node, -1 at root
    depth: np.ndarray  # int32 per node
    first: np.ndarray  # int32 per node, 1-based
    last: np.ndarray  # int32 per node, 1-based
    is_phrase: np.ndarray  # uint8 per node
    pret: np.ndarray  # int32 per word: preterminal node id


@dataclass(frozen=True)
class SyntaxTree:
    """Immutable rooted labeled ordered tree over one sentence."""

    root: int
    nodes: tuple[Node, ...]
    words: tuple[Word, ...]

    @property
    def num_words(self) -> int:
        return len(self.words)

    def word(self, index: int) -> Word:
        self._check_word_index(index)
        return self.words[index - 1]

    def pos_of(self, index: int) -> str:
        """POS tag of the word at the given 1-based index."""
        return self.nodes[self.word(index).preterminal].label

    def first_word_of(self, node_id: int) -> int:
        return self.nodes[node_id].span[0]

    def last_word_of(self, node_id: int) -> int:
        return self.nodes[node_id].span[1]

    def phrase_ancestors(self, index: int) -> tuple[int, ...]:
        """Phrase nodes above the word, root first, preterminal excluded."""
        self._check_word_index(index)
        chain: list[int] = []
        node = self.nodes[self.words[index - 1].preterminal].parent
        while node is not None:
            chain.append(node)
            node = self.nodes[node].parent
        chain.reverse()
        return tuple(chain)

    def lca(self, index_a: int, index_b: int) -> int:
        """Deepest node whose span contains both words.

        For two distinct adjacent words this is always a phrase node
        strictly above both preterminals; for ``index_a == index_b`` it
        degenerates to the word's own preterminal.
        """
        self._check_word_index(index_a)
        self._check_word_index(index_b)
        arrays = self.arrays
        a = int(arrays.pret[index_a - 1])
        b = int(arrays.pret[index_b - 1])
        parent, depth = arrays.parent, arrays.depth
        while depth[a] > depth[b]:
            a = parent[a]
        while depth[b] > depth[a]:
            b = parent[b]
        while a != b:
            a = parent[a]
            b = parent[b]
        return int(a)

    @cached_property
    def arrays(self) -> TreeArrays:
        n = len(self.nodes)
        parent = np.empty(n, dtype=np.int32)
        depth = np.empty(n, dtype=np.int32)
        first = np.empty(n, dtype=np.int32)
        last = np.empty(n, dtype=np.int32)
        is_phrase = np.empty(n, dtype=np.uint8)
        for node in self.nodes:
            parent[node.id] = -1 if node.parent is None else node.parent
            depth[node.id] = node.depth
            first[node.id] = node.span[0]
            last[node.id] = node.span[1]
            is_phrase[node.id] = 0 if node.is_preterminal else 1
        pret = np.fromiter((w.preterminal for w in self.words), dtype=np.int32, count=len(self.words))
        for arr in (parent, depth, first, last, is_phrase, pret):
            arr.flags.writeable = False
        return TreeArrays(parent, depth, first, last, is_phrase, pret)

    def _check_word_index(self, index: int) -> None:
        if not 1 <= index <= len(self.words):
            raise IndexError(f"word index {index} out of range 1..{len(self.words)}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SyntaxTree):
            return NotImplemented
        return serialize(self) == serialize(other)

    def __hash__(self) -> int:
        return hash(serialize(self))

    def __repr__(self) -> str:
        return f"SyntaxTree({serialize(self)!r})"


# ---------------------------------------------------------------------------
# Parsing


@dataclass
class _RawNode:
    label: str
    offset: int
    children: list = field(default_factory=list)  # _RawNode | _RawWord


@dataclass
class _RawWord:
    text: str
    offset: int


def _tokenize(text: str):
    for m in _TOKEN.finditer(text):
        yield m.group(), m.start()


def parse_bracketed(
    text: str,
    *,
    phrase_label_guard: frozenset[str] | None = None,
) -> SyntaxTree:
    """Parse a single bracketed s-expression into a ``SyntaxTree``.

    A wrapper node labeled ROOT or TOP with a single child is stripped.
    Escaped bracket tokens (``-LRB-`` etc.) are unescaped in word text
    but kept verbatim as labels. Whitespace between tokens is
    insignificant. Raises ``TreeParseError`` with a character offset on
    unbalanced parentheses, empty labels, childless nodes, or words
    outside a preterminal.
    """
    guard = default_phrase_label_guard() if phrase_label_guard is None else phrase_label_guard
    tokens = list(_tokenize(text))
    if not tokens:
        raise TreeParseError("empty input, expected a bracketed tree", 0)

    stack: list[_RawNode] = []
    root: _RawNode | None = None
    pos = 0
    while pos < len(tokens):
        tok, offset = tokens[pos]
        if root is not None:
            raise TreeParseError("trailing content after complete tree", offset)
        if tok == "(":
            if pos + 1 >= len(tokens):
                raise TreeParseError("unbalanced parentheses: unclosed node", len(text))
            label, label_offset = tokens[pos + 1]
            if label in ("(", ")"):
                raise TreeParseError("empty node label", label_offset)
            if not (label.isascii() and label.isprintable()):
                # Word text is opaque unicode, labels are not.
                raise TreeParseError(f"label {label!r} is not printable ASCII", label_offset)
            stack.append(_RawNode(label, offset))
            pos += 2
        elif tok == ")":
            if not stack:
                raise TreeParseError("unbalanced parentheses: unexpected ')'", offset)
            node = stack.pop()
            if not node.children:
                raise TreeParseError(f"node '{node.label}' has no children", offset)
            _check_children(node, guard)
            if stack:
                stack[-1].children.append(node)
            else:
                root = node
            pos += 1
        else:
            if not stack:
                raise TreeParseError("word outside any node, expected '('", offset)
            stack[-1].children.append(_RawWord(tok, offset))
            pos += 1

    if root is None:
        raise TreeParseError("unbalanced parentheses: unclosed node", len(text))

    while (
        root.label in _WRAPPER_LABELS
        and len(root.children) == 1
        and isinstance(root.children[0], _RawNode)
    ):
        root = root.children[0]

    return _build(root)


def _check_children(node: _RawNode, guard: frozenset[str]) -> None:
    words = [c for c in node.children if isinstance(c, _RawWord)]
    if not words:
        return
    if len(words) < len(node.children):
        raise TreeParseError(
            f"word '{words[0].text}' outside a preterminal: node '{node.label}' mixes words and subtrees",
            words[0].offset,
        )
    if len(words) > 1:
        raise TreeParseError(
            f"preterminal '{node.label}' has {len(words)} words, expected exactly one",
            words[1].offset,
        )
    if node.label in guard:
        raise TreeParseError(
            f"word '{words[0].text}' directly under phrase label '{node.label}': missing POS level",
            words[0].offset,
        )


def _build(raw_root: _RawNode) -> SyntaxTree:
    # Iterative two-phase construction (ids/words on the way down, spans
    # on the way back up) so pathologically deep chains cannot overflow
    # the interpreter stack.
    nodes: list[Node | None] = []
    words: list[Word] = []
    stack: list[tuple[_RawNode, int | None, int, bool]] = [(raw_root, None, 0, False)]
    id_of: dict[int, int] = {}
    while stack:
        raw, parent, depth, expanded = stack.pop()
        if expanded:
            node_id = id_of[id(raw)]
            child_ids = tuple(id_of[id(child)] for child in raw.children)
            span = (nodes[child_ids[0]].span[0], nodes[child_ids[-1]].span[1])
            nodes[node_id] = Node(node_id, raw.label, parent, child_ids, span, depth, False)
            continue
        node_id = len(nodes)
        id_of[id(raw)] = node_id
        nodes.append(None)
        if len(raw.children) == 1 and isinstance(raw.children[0], _RawWord):
            index = len(words) + 1
            words.append(Word(index, _unescape_word(raw.children[0].text), node_id))
            nodes[node_id] = Node(node_id, raw.label, parent, (), (index, index), depth, True)
        else:
            stack.append((raw, parent, depth, True))
            for child in reversed(raw.children):
                stack.append((child, node_id, depth + 1, False))
    return SyntaxTree(root=0, nodes=tuple(nodes), words=tuple(words))


def _unescape_word(token: str) -> str:
    return _BRACKET_ESCAPES.get(token, token)


def _escape_word(text: str) -> str:
    escaped = _BRACKET_UNESCAPES.get(text, text)
    if re.search(r"[()\s]", escaped):
        raise ValueError(f"word {text!r} cannot be serialized to bracketed form")
    return escaped


def serialize(tree: SyntaxTree) -> str:
    """Canonical single-line bracketed form; inverse of ``parse_bracketed``."""
    parts: list[str] = []
    stack: list[int | str] = [tree.root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        node = tree.nodes[item]
        if node.is_preterminal:
            word = tree.words[node.span[0] - 1]
            parts.append(f"({node.label} {_escape_word(word.text)})")
        else:
            parts.append(f"({node.label} ")
            stack.append(")")
            last = len(node.children) - 1
            for i, child in enumerate(reversed(node.children)):
                stack.append(child)
                if i != last:
                    stack.append(" ")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Corpus reading


def read_corpus(text: str) -> list[tuple[str, int]]:
    """Split a treebank stream into per-tree sources.

    Accepts one tree per line as well as a whitespace-separated stream of
    s-expressions; trees are delimited by bracket balance either way.
    Returns ``(source, line_number)`` pairs with 1-based line numbers.
    """
    chunks: list[tuple[str, int]] = []
    depth = 0
    start = -1
    start_line = 1
    line = 1
    for i, ch in enumerate(text):
        if ch == "\n":
            line += 1
        if ch == "(":
            if depth == 0:
                start = i
                start_line = line
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise TreeParseError("unbalanced parentheses: unexpected ')'", i)
            if depth == 0:
                chunks.append((text[start : i + 1], start_line))
                start = -1
        elif depth == 0 and not ch.isspace():
            raise TreeParseError(f"content outside parentheses: {ch!r}", i)
    if depth != 0:
        raise TreeParseError("unbalanced parentheses: unclosed tree at end of input", len(text))
    return chunks


def parse_corpus(
    text: str,
    *,
    phrase_label_guard: frozenset[str] | None = None,
) -> list[SyntaxTree]:
    """Parse every tree in a treebank stream."""
    return [
        parse_bracketed(source, phrase_label_guard=phrase_label_guard)
        for source, _ in read_corpus(text)
    ]
