"""The numba kernels and the numpy fallback must agree bit for bit."""

import pytest

from synfeat import PsfConfig, default_phrase_inventory, default_pos_inventory, parse_bracketed
from synfeat._backend import BACKEND_ENV, get_kernels, resolve_backend
from synfeat.psf import extract_psf
from synfeat.treegen import random_corpus
from synfeat.wrf import extract_wrf


class TestSelection:
    def test_env_var_forces_numpy(self, monkeypatch):
        monkeypatch.setenv(BACKEND_ENV, "numpy")
        assert resolve_backend() == "numpy"
        assert get_kernels().BACKEND_NAME == "numpy"

    def test_env_var_forces_numba(self, monkeypatch):
        monkeypatch.setenv(BACKEND_ENV, "numba")
        assert resolve_backend() == "numba"
        assert get_kernels().BACKEND_NAME == "numba"

    def test_auto_prefers_numba_when_importable(self, monkeypatch):
        monkeypatch.delenv(BACKEND_ENV, raising=False)
        pytest.importorskip("numba")
        assert resolve_backend() == "numba"

    def test_explicit_argument_overrides_env(self, monkeypatch):
        monkeypatch.setenv(BACKEND_ENV, "numba")
        assert resolve_backend("numpy") == "numpy"

    def test_invalid_name_rejected(self):
        with pytest.raises(ValueError, match="backend"):
            resolve_backend("fortran")


@pytest.fixture(scope="module")
def trees():
    return [parse_bracketed(src) for src in random_corpus(seed=99, size=60, max_words=40)]


class TestParity:
    def test_psf_bitwise_parity(self, trees, monkeypatch):
        pos_inv, phrase_inv = default_pos_inventory(), default_phrase_inventory()
        for direction in ("top-down", "bottom-up"):
            config = PsfConfig(7, direction)
            for tree in trees:
                monkeypatch.setenv(BACKEND_ENV, "numpy")
                plain = extract_psf(tree, config, pos_inv, phrase_inv)
                monkeypatch.setenv(BACKEND_ENV, "numba")
                jitted = extract_psf(tree, config, pos_inv, phrase_inv)
                assert plain.tobytes() == jitted.tobytes()

    def test_wrf_bitwise_parity(self, trees, monkeypatch):
        pos_inv, phrase_inv = default_pos_inventory(), default_phrase_inventory()
        for tree in trees:
            monkeypatch.setenv(BACKEND_ENV, "numpy")
            plain = extract_wrf(tree, pos_inv, phrase_inv)
            monkeypatch.setenv(BACKEND_ENV, "numba")
            jitted = extract_wrf(tree, pos_inv, phrase_inv)
            assert plain.tobytes() == jitted.tobytes()
