"""Kernel backend selection.

The extractors run on numba-compiled kernels when numba is importable
and fall back to pure numpy otherwise. The ``SYNFEAT_BACKEND``
environment variable (``auto`` | ``numba`` | ``numpy``) forces a
choice; both backends produce bitwise-identical matrices.
"""

from __future__ import annotations

import importlib
import os

BACKEND_ENV = "SYNFEAT_BACKEND"
_CHOICES = ("auto", "numba", "numpy")
_modules: dict[str, object] = {}


def resolve_backend(name: str | None = None) -> str:
    """Resolve ``auto``/env-var selection to a concrete backend name."""
    if name is None:
        name = os.environ.get(BACKEND_ENV, "auto")
    if name not in _CHOICES:
        raise ValueError(f"backend must be one of {_CHOICES}, got {name!r}")
    if name == "auto":
        try:
            importlib.import_module("numba")
        except ImportError:
            return "numpy"
        return "numba"
    return name


def get_kernels(name: str | None = None):
    """Return the kernel module for the resolved backend."""
    resolved = resolve_backend(name)
    module = _modules.get(resolved)
    if module is None:
        try:
            module = importlib.import_module(f"synfeat._kernels_{resolved}")
        except ImportError as exc:
            raise RuntimeError(
                f"backend {resolved!r} is unavailable ({exc}); "
                f"set {BACKEND_ENV}=numpy to use the fallback"
            ) from exc
        _modules[resolved] = module
    return module
