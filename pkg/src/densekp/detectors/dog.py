"""Blob detection via difference-of-Gaussians scale-space extrema.

Three octaves with three sampled scales each (base sigma 1.6, step 2^(1/3)).
Candidates are strict extrema of the 26-pixel scale-space neighborhood above
a contrast threshold; a 2x2 spatial Hessian ratio test rejects edge
responses. Coordinates are mapped back to base resolution and the scale
field carries the detection sigma.
"""

from __future__ import annotations

import math

import numpy as np

from ..accel import njit, select
from ..imgcore import as_gray, gaussian_blur, make_keypoints
from .profiles import DetectorProfile

N_OCTAVES = 3
SCALES_PER_OCTAVE = 3
SIGMA0 = 1.6
K_STEP = 2.0 ** (1.0 / SCALES_PER_OCTAVE)
_LEVELS = SCALES_PER_OCTAVE + 3  # Gaussian images per octave


def gaussian_octave(base: np.ndarray) -> list[np.ndarray]:
    """Gaussian levels at sigma0 * k^i for i in [0, levels); base is sharp."""
    levels = [gaussian_blur(base, SIGMA0)]
    for i in range(1, _LEVELS):
        lo = SIGMA0 * K_STEP ** (i - 1)
        hi = SIGMA0 * K_STEP**i
        levels.append(gaussian_blur(levels[-1], math.sqrt(hi * hi - lo * lo)))
    return levels


def build_dog_pyramid(img: np.ndarray) -> list[np.ndarray]:
    """Per-octave stacks of difference-of-Gaussian images, shape (L-1, h, w)."""
    img = as_gray(img)
    if min(img.shape) < 32:
        raise ValueError(f"image must be at least 32 pixels on a side, got {img.shape}")
    octaves = []
    base = img
    for _ in range(N_OCTAVES):
        gauss = gaussian_octave(base)
        dog = np.stack([gauss[i + 1] - gauss[i] for i in range(_LEVELS - 1)])
        octaves.append(dog)
        # next octave starts from the sigma-doubled level, subsampled 2x
        base = gauss[SCALES_PER_OCTAVE][::2, ::2]
    return octaves


def _extrema_numpy(dog: np.ndarray, contrast_t: float) -> np.ndarray:
    n_levels, h, w = dog.shape
    core = dog[1:-1, 1:-1, 1:-1]
    is_max = np.abs(core) > contrast_t
    is_min = is_max.copy()
    for dl in (-1, 0, 1):
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                if dl == 0 and dy == 0 and dx == 0:
                    continue
                nb = dog[1 + dl : n_levels - 1 + dl, 1 + dy : h - 1 + dy, 1 + dx : w - 1 + dx]
                is_max &= core > nb
                is_min &= core < nb
    out = np.zeros(dog.shape, dtype=bool)
    out[1:-1, 1:-1, 1:-1] = is_max | is_min
    return out


@njit(cache=True)
def _extrema_numba(dog: np.ndarray, contrast_t: float) -> np.ndarray:
    n_levels, h, w = dog.shape
    out = np.zeros((n_levels, h, w), dtype=np.bool_)
    for level in range(1, n_levels - 1):
        for y in range(1, h - 1):
            for x in range(1, w - 1):
                v = dog[level, y, x]
                if abs(v) <= contrast_t:
                    continue
                is_max = True
                is_min = True
                for dl in range(-1, 2):
                    for dy in range(-1, 2):
                        for dx in range(-1, 2):
                            if dl == 0 and dy == 0 and dx == 0:
                                continue
                            nb = dog[level + dl, y + dy, x + dx]
                            if v <= nb:
                                is_max = False
                            if v >= nb:
                                is_min = False
                    if not (is_max or is_min):
                        break
                if is_max or is_min:
                    out[level, y, x] = True
    return out


scale_space_extrema = select(_extrema_numba, _extrema_numpy)


def passes_edge_test(dog_level: np.ndarray, y: int, x: int, edge_r: float) -> bool:
    """2x2 spatial Hessian principal-curvature ratio test."""
    d = dog_level
    dxx = float(d[y, x + 1] + d[y, x - 1] - 2.0 * d[y, x])
    dyy = float(d[y + 1, x] + d[y - 1, x] - 2.0 * d[y, x])
    dxy = 0.25 * float(d[y + 1, x + 1] - d[y + 1, x - 1] - d[y - 1, x + 1] + d[y - 1, x - 1])
    trace = dxx + dyy
    det = dxx * dyy - dxy * dxy
    if det <= 0.0:
        return False
    return trace * trace / det < (edge_r + 1.0) ** 2 / edge_r


def detect_dog(img: np.ndarray, profile: DetectorProfile) -> np.ndarray:
    """Difference-of-Gaussian keypoints at base resolution."""
    octaves = build_dog_pyramid(img)
    xs, ys, scores, scales = [], [], [], []
    for octave_idx, dog in enumerate(octaves):
        flags = scale_space_extrema(
            np.ascontiguousarray(dog), float(profile.dog_contrast_t)
        )
        factor = 2**octave_idx
        for level, y, x in zip(*np.nonzero(flags)):
            if not passes_edge_test(dog[level], int(y), int(x), profile.dog_edge_r):
                continue
            xs.append(float(x) * factor)
            ys.append(float(y) * factor)
            scores.append(abs(float(dog[level, y, x])))
            scales.append(SIGMA0 * K_STEP ** int(level) * factor)
    return make_keypoints(xs, ys, score=np.array(scores), scale=np.array(scales))
