"""Numba-compiled kernels; the hot path for batch extraction.

Mirrors ``_kernels_numpy`` operation for operation. Stored values are
0/1 indicators, small integers, or one float64 division rounded once to
float32, keeping both backends bitwise-identical.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND_NAME = "numba"


@njit(cache=True)
def psf_fill(pos_idx, pret, parent, depth, first, last, plabel_idx, num_levels, top_down, pos_dim, phrase_dim):
    num_words = pos_idx.shape[0]
    num_nodes = parent.shape[0]
    level_width = phrase_dim + 2
    out = np.zeros((num_words, pos_dim + level_width * num_levels), dtype=np.float32)
    chain = np.empty(num_nodes, dtype=np.int64)
    for w in range(num_words):
        if pos_idx[w] >= 0:
            out[w, pos_idx[w]] = 1.0
        length = 0  # phrase ancestors, lowest first
        node = np.int64(parent[pret[w]])
        while node >= 0:
            chain[length] = node
            length += 1
            node = parent[node]
        present = min(num_levels, length)
        for level in range(present):
            node = chain[length - 1 - level] if top_down else chain[level]
            base = pos_dim + level * level_width
            if plabel_idx[node] >= 0:
                out[w, base + plabel_idx[node]] = 1.0
            if first[node] == w + 1:
                out[w, base + phrase_dim] = 1.0
            out[w, base + phrase_dim + 1] = (w + 2 - first[node]) / (last[node] - first[node] + 1)
    return out


@njit(cache=True)
def wrf_fill(pos_idx, pret, parent, depth, first, last, is_phrase, plabel_idx, pos_dim, phrase_dim):
    num_words = pos_idx.shape[0]
    num_nodes = parent.shape[0]
    out = np.zeros((num_words, pos_dim + 3 * phrase_dim + 4), dtype=np.float32)

    max_pret_depth = 0
    for w in range(num_words):
        if depth[pret[w]] > max_pret_depth:
            max_pret_depth = int(depth[pret[w]])

    start_node = np.full(num_words, -1, dtype=np.int64)
    end_node = np.full(num_words, -1, dtype=np.int64)
    for node in range(num_nodes):
        if not is_phrase[node]:
            continue
        w = first[node] - 1
        if start_node[w] < 0 or depth[node] < depth[start_node[w]]:
            start_node[w] = node
        w = last[node] - 1
        if end_node[w] < 0 or depth[node] < depth[end_node[w]]:
            end_node[w] = node

    dist_base = pos_dim + 3 * phrase_dim
    for w in range(num_words):
        if pos_idx[w] >= 0:
            out[w, pos_idx[w]] = 1.0
        node = start_node[w]
        if node >= 0 and plabel_idx[node] >= 0:
            out[w, pos_dim + plabel_idx[node]] = 1.0
        if w == 0:
            continue
        node = end_node[w - 1]
        if node >= 0 and plabel_idx[node] >= 0:
            out[w, pos_dim + phrase_dim + plabel_idx[node]] = 1.0
        a = np.int64(pret[w - 1])
        b = np.int64(pret[w])
        while depth[a] > depth[b]:
            a = parent[a]
        while depth[b] > depth[a]:
            b = parent[b]
        while a != b:
            a = parent[a]
            b = parent[b]
        if plabel_idx[a] >= 0:
            out[w, pos_dim + 2 * phrase_dim + plabel_idx[a]] = 1.0
        cur_to_lca = depth[pret[w]] - depth[a]
        prev_to_lca = depth[pret[w - 1]] - depth[a]
        out[w, dist_base] = max_pret_depth - depth[a]
        out[w, dist_base + 1] = cur_to_lca
        out[w, dist_base + 2] = prev_to_lca
        out[w, dist_base + 3] = cur_to_lca + prev_to_lca
    return out
