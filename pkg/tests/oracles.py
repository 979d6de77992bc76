"""Brute-force reference implementations for the tree queries.

Deliberately naive: ancestor-path intersection for LCA, exhaustive node
scans for junction phrases, path splicing for distances, and a fresh
leaf-order traversal for spans. The extractors must agree with these on
every tree.
"""

from synfeat import NONE_LABEL


def root_path(tree, node_id):
    """Nodes from the given node up to the root, inclusive."""
    path = [node_id]
    while tree.nodes[path[-1]].parent is not None:
        path.append(tree.nodes[path[-1]].parent)
    return path


def lca_oracle(tree, index_a, index_b):
    """Deepest node on both words' root paths."""
    path_a = root_path(tree, tree.words[index_a - 1].preterminal)
    path_b = set(root_path(tree, tree.words[index_b - 1].preterminal))
    common = [n for n in path_a if n in path_b]
    return max(common, key=lambda n: tree.nodes[n].depth)


def starting_phrase_oracle(tree, word_index):
    candidates = [
        node
        for node in tree.nodes
        if not node.is_preterminal and node.span[0] == word_index
    ]
    if not candidates:
        return NONE_LABEL
    return min(candidates, key=lambda n: n.depth).label


def ending_phrase_oracle(tree, word_index):
    if word_index == 1:
        return NONE_LABEL
    candidates = [
        node
        for node in tree.nodes
        if not node.is_preterminal and node.span[1] == word_index - 1
    ]
    if not candidates:
        return NONE_LABEL
    return min(candidates, key=lambda n: n.depth).label


def path_distance_oracle(tree, word_index):
    """Edge count between the adjacent pair's preterminals via the LCA."""
    lca = lca_oracle(tree, word_index - 1, word_index)
    up = root_path(tree, tree.words[word_index - 2].preterminal)
    down = root_path(tree, tree.words[word_index - 1].preterminal)
    return up.index(lca) + down.index(lca)


def spans_oracle(tree):
    """Recompute every node's span by fresh traversal to the leaves."""
    spans = {}

    def visit(node_id):
        node = tree.nodes[node_id]
        if node.is_preterminal:
            word = next(w for w in tree.words if w.preterminal == node_id)
            spans[node_id] = (word.index, word.index)
        else:
            child_spans = [visit(c) for c in node.children]
            spans[node_id] = (child_spans[0][0], child_spans[-1][1])
        return spans[node_id]

    visit(tree.root)
    return spans
