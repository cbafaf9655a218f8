"""Pixel-wise binary cross-entropy on raw logits."""

from __future__ import annotations

import numpy as np

from .ops import sigmoid


def _validate(y: np.ndarray, z: np.ndarray):
    y = np.asarray(y, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if y.shape != z.shape:
        raise ValueError(f"label shape {y.shape} != logit shape {z.shape}")
    return y, z


def bce_loss(y: np.ndarray, z: np.ndarray) -> float:
    """Mean over pixels of -[y log s(z) + (1-y) log(1-s(z))].

    Evaluated in the overflow-free logit form
    max(z, 0) - z*y + log(1 + exp(-|z|)).
    """
    y, z = _validate(y, z)
    per_pixel = np.maximum(z, 0.0) - z * y + np.log1p(np.exp(-np.abs(z)))
    return float(per_pixel.mean())


def bce_grad(y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """d bce_loss / d z = (sigmoid(z) - y) / N."""
    y, z = _validate(y, z)
    return (sigmoid(z) - y) / y.size
