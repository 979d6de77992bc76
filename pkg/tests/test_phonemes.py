import numpy as np
import pytest

from synfeat import (
    Lexicon,
    OovError,
    load_lexicon,
    parse_bracketed,
    phonemize,
    upsample,
)

from conftest import DATA_DIR


class TestLoadLexicon:
    def test_basic_entry(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("DOG D AO1 G\n", encoding="utf-8")
        lex = load_lexicon(path)
        assert lex.lookup("dog") == ("D", "AO1", "G")
        assert lex.lookup("DOG") == ("D", "AO1", "G")

    def test_duplicates_keep_first(self, mini_lexicon):
        assert mini_lexicon.lookup("read") == ("R", "IY1", "D")

    def test_variant_markers_ignored(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("NEW(2) N UW1\n", encoding="utf-8")
        assert load_lexicon(path).lookup("new") == ("N", "UW1")

    def test_comments_skipped(self, mini_lexicon):
        assert mini_lexicon.lookup(";;;") is None

    def test_entry_without_phonemes(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("DOG D AO1 G\nCAT\n", encoding="utf-8")
        with pytest.raises(ValueError, match=":2:"):
            load_lexicon(path)

    def test_bad_oov_policy(self):
        with pytest.raises(ValueError, match="oov_policy"):
            Lexicon({}, oov_policy="mumble")


class TestPhonemize:
    def test_single_word(self, mini_lexicon):
        alignment = phonemize(parse_bracketed("(S (NN dog))"), mini_lexicon)
        assert alignment.entries[0].word_index == 1
        assert alignment.entries[0].symbols == ("D", "AO1", "G")
        assert alignment.total_phonemes == 3

    def test_punctuation_becomes_silence(self, canonical_tree, mini_lexicon):
        alignment = phonemize(canonical_tree, mini_lexicon)
        last = alignment.entries[-1]
        assert last.word_index == 9
        assert last.symbols == ("sil",)

    def test_canonical_total(self, canonical_tree, mini_lexicon):
        # 2+2+5+3+3+4+5+6 lexical phonemes plus one silence for "."
        assert phonemize(canonical_tree, mini_lexicon).total_phonemes == 31

    def test_oov_error_policy(self, mini_lexicon):
        tree = parse_bracketed("(S (NN zzyzx))")
        with pytest.raises(OovError):
            phonemize(tree, mini_lexicon)

    def test_oov_letters_policy(self):
        lex = Lexicon({}, oov_policy="letters")
        alignment = phonemize(parse_bracketed("(S (NN zzyzx))"), lex)
        assert alignment.entries[0].count == 5
        assert alignment.entries[0].symbols == ("Z", "Z", "Y", "Z", "X")

    def test_oov_skip_policy(self, canonical_tree):
        lex = Lexicon({"like": ("L", "AY1", "K")}, oov_policy="skip")
        alignment = phonemize(canonical_tree, lex)
        # only "like" and the punctuation word survive
        assert alignment.word_indices == (5, 9)

    def test_case_folded_lookup(self, mini_lexicon):
        alignment = phonemize(parse_bracketed("(S (DT The) (NN dog))"), mini_lexicon)
        assert alignment.entries[0].symbols == ("DH", "AH0")


class TestUpsample:
    def test_repeats_rows_per_phoneme(self):
        lex = Lexicon({"dog": ("D", "AO1", "G")})
        alignment = phonemize(parse_bracketed("(S (NN dog))"), lex)
        features = np.arange(4, dtype=np.float32).reshape(1, 4)
        out = upsample(features, alignment)
        assert out.shape == (3, 4)
        for row in out:
            assert row.tobytes() == features[0].tobytes()

    def test_canonical_row_count(self, canonical_tree, mini_lexicon, pos_inv, phrase_inv):
        from synfeat import extract_wrf

        features = extract_wrf(canonical_tree, pos_inv, phrase_inv)
        alignment = phonemize(canonical_tree, mini_lexicon)
        out = upsample(features, alignment)
        assert out.shape == (31, 124)
        offsets = np.cumsum([0] + list(alignment.counts))
        for i, entry in enumerate(alignment.entries):
            for r in range(offsets[i], offsets[i + 1]):
                assert out[r].tobytes() == features[entry.word_index - 1].tobytes()

    def test_empty_alignment(self):
        from synfeat.phonemes import PhonemeAlignment

        features = np.zeros((0, 7), dtype=np.float32)
        out = upsample(features, PhonemeAlignment())
        assert out.shape == (0, 7)

    def test_mismatch_rejected(self, canonical_tree, mini_lexicon):
        alignment = phonemize(canonical_tree, mini_lexicon)
        with pytest.raises(ValueError, match="mismatch"):
            upsample(np.zeros((3, 4), dtype=np.float32), alignment)

    def test_column_count_preserved(self, canonical_tree, mini_lexicon):
        alignment = phonemize(canonical_tree, mini_lexicon)
        features = np.random.default_rng(0).random((9, 17)).astype(np.float32)
        assert upsample(features, alignment).shape[1] == 17


def test_real_lexicon_fixture_loads():
    lex = load_lexicon(DATA_DIR / "mini_lexicon.txt")
    assert lex.lookup("wayward") == ("W", "EY1", "W", "ER0", "D")
