"""Binary feature-matrix format.

Layout: magic ``SYNF``, format version (u16), row count (u64), column
count (u64), then row-major float32 values; everything little-endian.
The fixed 22-byte header makes the payload trivially memory-mappable.
"""

from __future__ import annotations

import os
import struct

import numpy as np

__all__ = ["FORMAT_VERSION", "MAGIC", "MatrixFormatError", "read_matrix", "write_matrix"]

MAGIC = b"SYNF"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sHQQ")


class MatrixFormatError(ValueError):
    pass


def write_matrix(path: str | os.PathLike, matrix: np.ndarray) -> None:
    if matrix.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {matrix.shape}")
    rows, cols = matrix.shape
    payload = np.ascontiguousarray(matrix, dtype="<f4")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, FORMAT_VERSION, rows, cols))
        fh.write(payload.tobytes())


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise MatrixFormatError(f"{path}: truncated header")
        magic, version, rows, cols = _HEADER.unpack(header)
        if magic != MAGIC:
            raise MatrixFormatError(f"{path}: bad magic {magic!r}")
        if version != FORMAT_VERSION:
            raise MatrixFormatError(f"{path}: unsupported format version {version}")
        payload = fh.read()
    expected = rows * cols * 4
    if len(payload) != expected:
        raise MatrixFormatError(f"{path}: payload is {len(payload)} bytes, expected {expected}")
    return np.frombuffer(payload, dtype="<f4").reshape(rows, cols).astype(np.float32, copy=False)
