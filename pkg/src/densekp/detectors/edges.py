"""Edge maps: multi-stage thin edges and thick gradient-magnitude edges.

The thin detector blurs (sigma 1.4), takes Sobel gradients, suppresses
non-maxima along the quantized gradient direction (4 bins), then links via
hysteresis between a low and a high magnitude threshold. The thick detector
thresholds raw Sobel magnitude with no thinning.
"""

from __future__ import annotations

import numpy as np

from ..accel import njit, select
from ..imgcore import as_gray, gaussian_blur, sobel_gradients
from .profiles import DetectorProfile

BLUR_SIGMA = 1.4

# neighbor offsets (dx, dy) per quantized gradient direction bin
_DIR_OFFSETS = np.array([(1, 0), (1, 1), (0, 1), (-1, 1)], dtype=np.int64)


def quantize_directions(gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Fold gradient angles into 4 direction bins over [0, pi)."""
    theta = np.arctan2(gy.astype(np.float64), gx.astype(np.float64))
    theta = np.where(theta < 0, theta + np.pi, theta)
    return (np.floor((theta + np.pi / 8) / (np.pi / 4)).astype(np.int64)) % 4


def directional_nms(mag: np.ndarray, bins: np.ndarray) -> np.ndarray:
    """Keep pixels strictly above the previous and at least the next neighbor
    along their quantized gradient direction; out-of-bounds counts as 0."""
    h, w = mag.shape
    padded = np.zeros((h + 2, w + 2), dtype=mag.dtype)
    padded[1 : 1 + h, 1 : 1 + w] = mag
    keep = np.zeros((h, w), dtype=bool)
    for b in range(4):
        dx, dy = int(_DIR_OFFSETS[b, 0]), int(_DIR_OFFSETS[b, 1])
        prev = padded[1 - dy : 1 - dy + h, 1 - dx : 1 - dx + w]
        nxt = padded[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]
        keep |= (bins == b) & (mag > prev) & (mag >= nxt)
    return keep


def _hysteresis_numpy(strong: np.ndarray, weak: np.ndarray) -> np.ndarray:
    h, w = strong.shape
    edges = strong.copy()
    while True:
        padded = np.zeros((h + 2, w + 2), dtype=bool)
        padded[1 : 1 + h, 1 : 1 + w] = edges
        grown = np.zeros((h, w), dtype=bool)
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                if dy == 0 and dx == 0:
                    continue
                grown |= padded[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]
        new_edges = edges | (grown & weak)
        if np.array_equal(new_edges, edges):
            return edges
        edges = new_edges


@njit(cache=True)
def _hysteresis_numba(strong: np.ndarray, weak: np.ndarray) -> np.ndarray:
    h, w = strong.shape
    edges = strong.copy()
    stack_y = np.empty(h * w, dtype=np.int64)
    stack_x = np.empty(h * w, dtype=np.int64)
    top = 0
    for y in range(h):
        for x in range(w):
            if strong[y, x]:
                stack_y[top] = y
                stack_x[top] = x
                top += 1
    while top > 0:
        top -= 1
        y = stack_y[top]
        x = stack_x[top]
        for dy in range(-1, 2):
            for dx in range(-1, 2):
                ny = y + dy
                nx = x + dx
                if ny < 0 or ny >= h or nx < 0 or nx >= w:
                    continue
                if weak[ny, nx] and not edges[ny, nx]:
                    edges[ny, nx] = True
                    stack_y[top] = ny
                    stack_x[top] = nx
                    top += 1
    return edges


hysteresis_link = select(_hysteresis_numba, _hysteresis_numpy)


def edges_canny(img: np.ndarray, profile: DetectorProfile) -> np.ndarray:
    """Thin hysteresis-linked edge map as (H, W) uint8 {0,1}."""
    img = as_gray(img)
    if img.shape[0] < 5 or img.shape[1] < 5:
        raise ValueError(f"image must be at least 5x5, got {img.shape}")
    gx, gy = sobel_gradients(gaussian_blur(img, BLUR_SIGMA))
    mag = np.hypot(gx.astype(np.float64), gy.astype(np.float64))
    bins = quantize_directions(gx, gy)
    thin = directional_nms(mag, bins)
    strong = thin & (mag >= profile.canny_hi)
    weak = thin & (mag >= profile.canny_lo)
    edges = hysteresis_link(
        np.ascontiguousarray(strong), np.ascontiguousarray(weak)
    )
    return edges.astype(np.uint8)


def edges_sobel(img: np.ndarray, profile: DetectorProfile) -> np.ndarray:
    """Thick edge map: Sobel magnitude above profile.sobel_mag_t."""
    gx, gy = sobel_gradients(img)
    mag = np.hypot(gx.astype(np.float64), gy.astype(np.float64))
    return (mag > profile.sobel_mag_t).astype(np.uint8)
