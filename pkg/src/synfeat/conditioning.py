"""Seeded affine + rectifier projection to fixed-width conditioning vectors.

Synthesis models embed the feature rows into a fixed width (256 by
default) through a fully-connected layer with ReLU. The weights here are
not learned; they are seeded pseudo-random (numpy's default PCG64
generator, uniform in [-0.1, 0.1]) so that shapes and the injection
pathway can be verified reproducibly across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["DEFAULT_OUT_DIM", "Projection", "init_projection", "project_relu"]

DEFAULT_OUT_DIM = 256


@dataclass(frozen=True)
class Projection:
    weights: np.ndarray  # (in_dim, out_dim) float32
    bias: np.ndarray  # (out_dim,) float32
    seed: int

    @property
    def in_dim(self) -> int:
        return self.weights.shape[0]

    @property
    def out_dim(self) -> int:
        return self.weights.shape[1]


def init_projection(seed: int, in_dim: int, out_dim: int = DEFAULT_OUT_DIM) -> Projection:
    """Deterministic weights in [-0.1, 0.1] from the seed; zero bias."""
    if in_dim < 1 or out_dim < 1:
        raise ValueError(f"dimensions must be >= 1, got in_dim={in_dim}, out_dim={out_dim}")
    rng = np.random.default_rng(seed)
    weights = rng.uniform(-0.1, 0.1, size=(in_dim, out_dim)).astype(np.float32)
    bias = np.zeros(out_dim, dtype=np.float32)
    weights.flags.writeable = False
    bias.flags.writeable = False
    return Projection(weights, bias, seed)


def project_relu(features: np.ndarray, projection: Projection) -> np.ndarray:
    """Rows -> max(0, row @ W + b); output is float32, rows preserved."""
    if features.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {features.shape}")
    if features.shape[1] != projection.in_dim:
        raise ValueError(
            f"feature columns ({features.shape[1]}) do not match projection input ({projection.in_dim})"
        )
    out = features.astype(np.float32, copy=False) @ projection.weights + projection.bias
    return np.maximum(out, 0.0, out=out)
