"""Separable filtering, gradients, and resampling on grayscale rasters.

All convolutions use reflect-101 borders (the edge sample is not repeated).
The 1-D correlation kernel exists in a numba and a numpy variant; both
accumulate taps in identical order so the two paths agree bit-for-bit on
float32 inputs.
"""

from __future__ import annotations

import math

import numpy as np

from ..accel import njit, select
from .image import as_gray


def reflect101_indices(n: int, pad: int) -> np.ndarray:
    """Indices of length n + 2*pad implementing reflect-101 addressing."""
    if n < 1:
        raise ValueError("n must be >= 1")
    idx = np.arange(-pad, n + pad)
    if n == 1:
        return np.zeros_like(idx)
    period = 2 * (n - 1)
    idx = np.abs(idx) % period
    return np.where(idx >= n, period - idx, idx)


def _correlate_rows_numpy(img: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    h, w = img.shape
    r = kernel.size // 2
    padded = img[:, reflect101_indices(w, r)]
    out = np.zeros_like(img)
    for k in range(kernel.size):
        out += kernel[k] * padded[:, k : k + w]
    return out


@njit(cache=True)
def _correlate_rows_numba(img: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    h, w = img.shape
    r = kernel.size // 2
    period = 2 * (w - 1) if w > 1 else 1
    out = np.zeros_like(img)
    for y in range(h):
        for x in range(w):
            acc = img[0, 0] * 0
            for k in range(kernel.size):
                j = x + k - r
                if w > 1:
                    j = abs(j) % period
                    if j >= w:
                        j = period - j
                else:
                    j = 0
                acc += kernel[k] * img[y, j]
            out[y, x] = acc
    return out


_correlate_rows = select(_correlate_rows_numba, _correlate_rows_numpy)


def correlate1d(img: np.ndarray, kernel: np.ndarray, axis: int) -> np.ndarray:
    """Cross-correlate a 2-D array with an odd-length 1-D kernel along an axis."""
    kernel = np.asarray(kernel, dtype=img.dtype)
    if kernel.ndim != 1 or kernel.size % 2 != 1:
        raise ValueError("kernel must be 1-D with odd length")
    if axis == 1:
        return _correlate_rows(np.ascontiguousarray(img), kernel)
    if axis == 0:
        return _correlate_rows(np.ascontiguousarray(img.T), kernel).T
    raise ValueError(f"axis must be 0 or 1, got {axis}")


def gaussian_kernel1d(sigma: float, dtype=np.float64) -> np.ndarray:
    """Normalized 1-D Gaussian with radius ceil(3*sigma)."""
    if sigma <= 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    radius = math.ceil(3.0 * sigma)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-0.5 * (x / sigma) ** 2)
    kernel /= kernel.sum()
    return kernel.astype(dtype)


def gaussian_blur(img: np.ndarray, sigma: float) -> np.ndarray:
    """Separable Gaussian blur with reflect-101 borders."""
    img = as_gray(img)
    kernel = gaussian_kernel1d(sigma, dtype=img.dtype)
    return correlate1d(correlate1d(img, kernel, axis=1), kernel, axis=0)


_SOBEL_DIFF = np.array([-1.0, 0.0, 1.0])
_SOBEL_SMOOTH = np.array([1.0, 2.0, 1.0])


def sobel_gradients(img: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """3x3 Sobel gradients (gx, gy) with reflect-101 borders."""
    img = as_gray(img)
    if img.shape[0] < 3 or img.shape[1] < 3:
        raise ValueError(f"image must be at least 3x3, got {img.shape}")
    gx = correlate1d(correlate1d(img, _SOBEL_DIFF, axis=1), _SOBEL_SMOOTH, axis=0)
    gy = correlate1d(correlate1d(img, _SOBEL_DIFF, axis=0), _SOBEL_SMOOTH, axis=1)
    return gx, gy


def _axis_lerp_coords(n_in: int, n_out: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Half-pixel-aligned source indices and weights for 1-D linear resize."""
    src = (np.arange(n_out) + 0.5) * (n_in / n_out) - 0.5
    i0 = np.floor(src).astype(np.int64)
    frac = src - i0
    i0c = np.clip(i0, 0, n_in - 1)
    i1c = np.clip(i0 + 1, 0, n_in - 1)
    return i0c, i1c, frac


def resize_bilinear(img: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Bilinear resize of an (H, W) or (H, W, C) array, edges clamped."""
    img = np.asarray(img)
    if out_h < 1 or out_w < 1:
        raise ValueError("output dimensions must be >= 1")
    work = img.astype(np.float64, copy=False)
    r0, r1, rf = _axis_lerp_coords(img.shape[0], out_h)
    rf = rf.reshape(-1, *([1] * (work.ndim - 1)))
    work = work[r0] * (1.0 - rf) + work[r1] * rf
    c0, c1, cf = _axis_lerp_coords(img.shape[1], out_w)
    cf = cf.reshape(1, -1, *([1] * (work.ndim - 2)))
    work = work[:, c0] * (1.0 - cf) + work[:, c1] * cf
    if img.dtype == np.uint8:
        return np.clip(np.rint(work), 0, 255).astype(np.uint8)
    return work.astype(img.dtype)


def resize_nearest(img: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Nearest-neighbor resize; keeps masks binary."""
    img = np.asarray(img)
    if out_h < 1 or out_w < 1:
        raise ValueError("output dimensions must be >= 1")
    rows = np.minimum((np.arange(out_h) + 0.5) * (img.shape[0] / out_h), img.shape[0] - 1).astype(np.int64)
    cols = np.minimum((np.arange(out_w) + 0.5) * (img.shape[1] / out_w), img.shape[1] - 1).astype(np.int64)
    return img[rows][:, cols]
