import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synfeat import (
    BOTTOM_UP,
    TOP_DOWN,
    PsfConfig,
    UnknownLabelError,
    boundary_flag,
    extract_psf,
    one_hot,
    parse_bracketed,
    psf_schema,
    relative_position,
    select_layers,
)
from synfeat.schema import total_width
from synfeat.treegen import random_tree_source

from conftest import label_of


def node_named(tree, label, depth):
    (node,) = [n.id for n in tree.nodes if n.label == label and n.depth == depth]
    return node


class TestConfig:
    def test_defaults(self):
        config = PsfConfig()
        assert config.num_levels == 10
        assert config.direction == TOP_DOWN

    def test_invalid_levels(self):
        with pytest.raises(ValueError):
            PsfConfig(num_levels=0)

    def test_invalid_direction(self):
        with pytest.raises(ValueError):
            PsfConfig(direction="sideways")


class TestSelectLayers:
    def test_top_down_pads_tail(self, canonical_tree):
        layers = select_layers(canonical_tree, 5, PsfConfig(3, TOP_DOWN))
        assert [label_of(canonical_tree, n) for n in layers[:2]] == ["S", "VP"]
        assert layers[2] is None

    def test_bottom_up_starts_at_lowest_phrase(self, canonical_tree):
        layers = select_layers(canonical_tree, 7, PsfConfig(3, BOTTOM_UP))
        labels = [label_of(canonical_tree, n) for n in layers]
        depths = [canonical_tree.nodes[n].depth for n in layers]
        assert labels == ["NP", "VP", "VP"]
        assert depths == [3, 2, 1]

    def test_single_word_tree_pads(self, single_word_tree):
        layers = select_layers(single_word_tree, 1, PsfConfig(5, TOP_DOWN))
        assert label_of(single_word_tree, layers[0]) == "S"
        assert layers[1:] == [None] * 4

    def test_truncates_deep_chains(self, canonical_tree):
        layers = select_layers(canonical_tree, 7, PsfConfig(2, TOP_DOWN))
        assert [label_of(canonical_tree, n) for n in layers] == ["S", "VP"]


class TestRelativePosition:
    def test_like_in_sentence(self, canonical_tree):
        assert relative_position(canonical_tree, 5, canonical_tree.root) == pytest.approx(5 / 9)

    def test_like_in_outer_vp(self, canonical_tree):
        outer_vp = node_named(canonical_tree, "VP", 1)
        assert relative_position(canonical_tree, 5, outer_vp) == pytest.approx(1 / 4)

    def test_only_word_of_phrase(self, single_word_tree):
        assert relative_position(single_word_tree, 1, single_word_tree.root) == 1.0

    def test_non_ancestor_rejected(self, canonical_tree):
        subject_np = node_named(canonical_tree, "NP", 1)
        with pytest.raises(ValueError, match="not a phrase ancestor"):
            relative_position(canonical_tree, 5, subject_np)

    def test_preterminal_rejected(self, canonical_tree):
        preterminal = canonical_tree.words[4].preterminal
        with pytest.raises(ValueError, match="not a phrase ancestor"):
            relative_position(canonical_tree, 5, preterminal)


class TestBoundaryFlag:
    def test_like_starts_outer_vp(self, canonical_tree):
        assert boundary_flag(canonical_tree, 5, node_named(canonical_tree, "VP", 1)) == 1.0

    def test_like_does_not_start_sentence(self, canonical_tree):
        assert boundary_flag(canonical_tree, 5, canonical_tree.root) == 0.0

    def test_single_word_is_boundary(self, single_word_tree):
        assert boundary_flag(single_word_tree, 1, single_word_tree.root) == 1.0


class TestExtract:
    def test_default_row_length_is_329(self, canonical_tree, pos_inv, phrase_inv):
        matrix = extract_psf(canonical_tree, PsfConfig(10), pos_inv, phrase_inv)
        assert matrix.shape == (9, 329)
        assert matrix.dtype == np.float32

    @pytest.mark.parametrize("levels", [3, 5, 10, 15])
    def test_row_length_formula(self, canonical_tree, pos_inv, phrase_inv, levels):
        matrix = extract_psf(canonical_tree, PsfConfig(levels), pos_inv, phrase_inv)
        assert matrix.shape[1] == len(pos_inv) + (len(phrase_inv) + 2) * levels

    def test_like_row_blocks(self, canonical_tree, pos_inv, phrase_inv):
        matrix = extract_psf(canonical_tree, PsfConfig(3, TOP_DOWN), pos_inv, phrase_inv)
        row = matrix[4]
        pos_dim, phrase_dim = len(pos_inv), len(phrase_inv)
        level = phrase_dim + 2
        np.testing.assert_array_equal(row[:pos_dim], one_hot("VBP", pos_inv))
        lvl1 = row[pos_dim : pos_dim + level]
        np.testing.assert_array_equal(lvl1[:phrase_dim], one_hot("S", phrase_inv))
        assert lvl1[phrase_dim] == 0.0
        assert lvl1[phrase_dim + 1] == np.float32(5 / 9)
        lvl2 = row[pos_dim + level : pos_dim + 2 * level]
        np.testing.assert_array_equal(lvl2[:phrase_dim], one_hot("VP", phrase_inv))
        assert lvl2[phrase_dim] == 1.0
        assert lvl2[phrase_dim + 1] == np.float32(1 / 4)
        assert not row[pos_dim + 2 * level :].any()

    def test_single_word_row(self, single_word_tree, pos_inv, phrase_inv):
        matrix = extract_psf(single_word_tree, PsfConfig(1), pos_inv, phrase_inv)
        expected = np.concatenate(
            [one_hot("NN", pos_inv), one_hot("S", phrase_inv), [1.0, 1.0]]
        ).astype(np.float32)
        np.testing.assert_array_equal(matrix[0], expected)

    def test_unknown_pos_label(self, phrase_inv, pos_inv):
        tree = parse_bracketed("(S (ZZZ dog))")
        with pytest.raises(UnknownLabelError):
            extract_psf(tree, PsfConfig(3), pos_inv, phrase_inv)
        matrix = extract_psf(tree, PsfConfig(3), pos_inv, phrase_inv, "zero")
        assert not matrix[0, : len(pos_inv)].any()

    def test_schema_matches_matrix(self, canonical_tree, pos_inv, phrase_inv):
        config = PsfConfig(4)
        blocks = psf_schema(config, pos_inv, phrase_inv)
        matrix = extract_psf(canonical_tree, config, pos_inv, phrase_inv)
        assert total_width(blocks) == matrix.shape[1]
        assert blocks[0].name == "pos"
        assert blocks[-1].name == "level4_relpos"


class TestProperties:
    @given(st.integers(0, 10_000), st.sampled_from([1, 3, 10]), st.sampled_from([TOP_DOWN, BOTTOM_UP]))
    @settings(max_examples=60, deadline=None)
    def test_row_length_constant(self, seed, levels, direction):
        from synfeat import default_phrase_inventory, default_pos_inventory

        pos_inv = default_pos_inventory()
        phrase_inv = default_phrase_inventory()
        tree = parse_bracketed(random_tree_source(random.Random(seed), max_words=20))
        matrix = extract_psf(tree, PsfConfig(levels, direction), pos_inv, phrase_inv)
        assert matrix.shape == (tree.num_words, 39 + 29 * levels)

    @given(st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_each_selected_phrase_has_one_boundary_word(self, seed):
        from synfeat import default_phrase_inventory, default_pos_inventory

        pos_inv, phrase_inv = default_pos_inventory(), default_phrase_inventory()
        levels = 4
        tree = parse_bracketed(random_tree_source(random.Random(seed), max_words=25))
        matrix = extract_psf(tree, PsfConfig(levels, TOP_DOWN), pos_inv, phrase_inv)
        config = PsfConfig(levels, TOP_DOWN)
        # Under top-down selection a phrase sits at one fixed level for
        # every word it covers; exactly its first word carries the flag.
        for node in tree.nodes:
            if node.is_preterminal:
                continue
            flags = []
            for w in range(node.span[0], node.span[1] + 1):
                layers = select_layers(tree, w, config)
                if node.id in layers:
                    level = layers.index(node.id)
                    flags.append(matrix[w - 1, 39 + level * 29 + 27])
            if flags:
                assert sum(flags) == 1.0

    @given(st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_relpos_in_unit_interval_and_last_word_exact(self, seed):
        from synfeat import default_phrase_inventory, default_pos_inventory

        pos_inv, phrase_inv = default_pos_inventory(), default_phrase_inventory()
        tree = parse_bracketed(random_tree_source(random.Random(seed), max_words=25))
        config = PsfConfig(5, TOP_DOWN)
        matrix = extract_psf(tree, config, pos_inv, phrase_inv)
        for w in range(1, tree.num_words + 1):
            for level, node in enumerate(select_layers(tree, w, config)):
                relpos = matrix[w - 1, 39 + level * 29 + 28]
                if node is None:
                    assert relpos == 0.0
                else:
                    assert 0.0 < relpos <= 1.0
                    if tree.last_word_of(node) == w:
                        assert relpos == 1.0

    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_directions_agree_when_levels_cover_all_chains(self, seed):
        from synfeat import default_phrase_inventory, default_pos_inventory

        pos_inv, phrase_inv = default_pos_inventory(), default_phrase_inventory()
        tree = parse_bracketed(random_tree_source(random.Random(seed), max_words=15))
        levels = max(len(tree.phrase_ancestors(w)) for w in range(1, tree.num_words + 1))
        top = extract_psf(tree, PsfConfig(levels, TOP_DOWN), pos_inv, phrase_inv)
        bottom = extract_psf(tree, PsfConfig(levels, BOTTOM_UP), pos_inv, phrase_inv)
        for w in range(tree.num_words):
            top_blocks = {top[w, 39 + i * 29 : 39 + (i + 1) * 29].tobytes() for i in range(levels)}
            bottom_blocks = {bottom[w, 39 + i * 29 : 39 + (i + 1) * 29].tobytes() for i in range(levels)}
            assert top_blocks == bottom_blocks
