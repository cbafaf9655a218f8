"""Image containers and pixel-level primitives.

Conventions used across the package:

* RGB image:  ``(H, W, 3) uint8`` array, row-major.
* Gray image: ``(H, W) float32`` array with intensities in [0, 255].
* Binary mask: ``(H, W) uint8`` array with values in {0, 1}.
* Probability map: ``(H, W)`` float array with values in [0, 1].
"""

from __future__ import annotations

import numpy as np

# ITU-R BT.601 luma weights.
GRAY_WEIGHTS = (0.299, 0.587, 0.114)


def as_rgb(img: np.ndarray) -> np.ndarray:
    """Validate and return an RGB image as (H, W, 3) uint8."""
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) RGB image, got shape {img.shape}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"image dimensions must be >= 1, got {img.shape[:2]}")
    if img.dtype != np.uint8:
        raise ValueError(f"RGB image must be uint8, got {img.dtype}")
    return img


def as_gray(img: np.ndarray) -> np.ndarray:
    """Validate and return a grayscale image as (H, W) float32."""
    img = np.asarray(img)
    if img.ndim != 2:
        raise ValueError(f"expected (H, W) gray image, got shape {img.shape}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"image dimensions must be >= 1, got {img.shape}")
    img = img.astype(np.float32, copy=False)
    if not np.all(np.isfinite(img)):
        raise ValueError("gray image contains non-finite values")
    return img


def as_mask(mask: np.ndarray) -> np.ndarray:
    """Validate and return a binary mask as (H, W) uint8 with values {0, 1}."""
    mask = np.asarray(mask)
    if mask.ndim != 2:
        raise ValueError(f"expected (H, W) mask, got shape {mask.shape}")
    out = mask.astype(np.uint8, copy=False)
    if not np.array_equal(np.asarray(mask), out) or out.max(initial=0) > 1:
        raise ValueError("mask values must be 0 or 1")
    return out


def rgb_to_gray(img: np.ndarray) -> np.ndarray:
    """BT.601 luma conversion: 0.299 R + 0.587 G + 0.114 B."""
    img = as_rgb(img)
    r, g, b = GRAY_WEIGHTS
    out = r * img[:, :, 0] + g * img[:, :, 1] + b * img[:, :, 2]
    return out.astype(np.float32)


def degrade_photometric(img: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """Reduce contrast (about mid-gray 128) and brightness.

    Each channel value v maps to ``clamp(round(alpha * (v - 128) + 128 + beta),
    0, 255)``. Requires ``alpha`` in (0, 1] and ``beta`` in [-128, 0].
    """
    img = as_rgb(img)
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    if not (-128.0 <= beta <= 0.0):
        raise ValueError(f"beta must be in [-128, 0], got {beta}")
    v = img.astype(np.float64)
    out = np.rint(alpha * (v - 128.0) + 128.0 + beta)
    return np.clip(out, 0.0, 255.0).astype(np.uint8)


def luma_stats(img: np.ndarray) -> tuple[float, float]:
    """Mean and standard deviation of the BT.601 luma of an RGB image."""
    gray = rgb_to_gray(img)
    return float(gray.mean()), float(gray.std())
