"""Multi-scale segment-test detectors.

The ORB-style stage runs the FAST-9 test on a geometric image pyramid and
ranks the surviving corners by their Harris response on the level image. The
BRISK-style stage runs FAST-9 over octave plus intra-octave layers (factors
1, 1.5, 2, 3, ...) and keeps a corner only when its score is no smaller than
the raw segment scores in the corresponding 3x3 patches of the neighboring
layers. Both report coordinates at base resolution and put the layer scale
factor in the keypoint scale field.
"""

from __future__ import annotations

import numpy as np

from ..imgcore import as_gray, make_keypoints, resize_bilinear
from .corners import harris_response
from .fast import segment_test_maps
from .nms import suppress_candidates
from .profiles import DetectorProfile

_MIN_SIDE = 7  # segment test needs a 7x7 window


def _level_image(base: np.ndarray, factor: float) -> np.ndarray | None:
    if factor == 1.0:
        return base
    h = int(round(base.shape[0] / factor))
    w = int(round(base.shape[1] / factor))
    if h < _MIN_SIDE or w < _MIN_SIDE:
        return None
    return resize_bilinear(base, h, w).astype(np.float32)


def _to_base(coords: np.ndarray, n_level: int, n_base: int) -> np.ndarray:
    """Map level pixel centers to base resolution (half-pixel convention)."""
    if n_level == n_base:
        return coords.astype(np.float64)
    ratio = n_base / n_level
    return (coords + 0.5) * ratio - 0.5


def detect_orb(img: np.ndarray, profile: DetectorProfile) -> np.ndarray:
    """Pyramid FAST-9 corners ranked by Harris response."""
    base = as_gray(img)
    if base.shape[0] < _MIN_SIDE or base.shape[1] < _MIN_SIDE:
        raise ValueError(f"image must be at least 7x7, got {base.shape}")
    rows = []
    for level in range(profile.orb_levels):
        factor = profile.orb_scale**level
        lvl = _level_image(base, factor)
        if lvl is None:
            break
        cand, score = segment_test_maps(
            np.ascontiguousarray(lvl), float(profile.fast_t), False
        )
        keep = suppress_candidates(score, cand, profile.nms_radius)
        ys, xs = np.nonzero(keep)
        if ys.size == 0:
            continue
        harris = harris_response(lvl, profile.harris_k)[ys, xs]
        bx = _to_base(xs, lvl.shape[1], base.shape[1])
        by = _to_base(ys, lvl.shape[0], base.shape[0])
        for i in range(ys.size):
            rows.append((float(harris[i]), level, int(ys[i]), int(xs[i]), bx[i], by[i], factor))
    # strongest Harris response first; position breaks exact ties
    rows.sort(key=lambda r: (-r[0], r[1], r[2], r[3]))
    if not rows:
        return make_keypoints([], [])
    arr = np.array([(r[4], r[5], r[0], r[6]) for r in rows], dtype=np.float64)
    return make_keypoints(arr[:, 0], arr[:, 1], score=arr[:, 2], scale=arr[:, 3])


def brisk_layer_factors(octaves: int) -> list[float]:
    """Octave and intra-octave scale factors, ascending."""
    factors = []
    for i in range(octaves):
        factors.append(2.0**i)
        factors.append(2.0**i * 1.5)
    return sorted(factors)


def detect_brisk(img: np.ndarray, profile: DetectorProfile) -> np.ndarray:
    """Scale-space FAST-9 corners that dominate their neighbors in scale."""
    base = as_gray(img)
    if base.shape[0] < _MIN_SIDE or base.shape[1] < _MIN_SIDE:
        raise ValueError(f"image must be at least 7x7, got {base.shape}")
    layers = []
    for factor in brisk_layer_factors(profile.brisk_octaves):
        lvl = _level_image(base, factor)
        if lvl is None:
            break
        cand, score = segment_test_maps(
            np.ascontiguousarray(lvl), float(profile.fast_t), False
        )
        layers.append((factor, lvl, cand, score))
    xs_out, ys_out, scores_out, scales_out = [], [], [], []
    for j, (factor, lvl, cand, score) in enumerate(layers):
        keep = suppress_candidates(score, cand, profile.nms_radius)
        ys, xs = np.nonzero(keep)
        for y, x in zip(ys, xs):
            s = score[y, x]
            dominated = False
            for nj in (j - 1, j + 1):
                if nj < 0 or nj >= len(layers):
                    continue
                _, nlvl, _, nscore = layers[nj]
                ny = int(round(_to_base(np.array([y]), lvl.shape[0], nlvl.shape[0])[0]))
                nx = int(round(_to_base(np.array([x]), lvl.shape[1], nlvl.shape[1])[0]))
                y0, y1 = max(0, ny - 1), min(nlvl.shape[0], ny + 2)
                x0, x1 = max(0, nx - 1), min(nlvl.shape[1], nx + 2)
                if y1 > y0 and x1 > x0 and nscore[y0:y1, x0:x1].max() > s:
                    dominated = True
                    break
            if dominated:
                continue
            xs_out.append(_to_base(np.array([x]), lvl.shape[1], base.shape[1])[0])
            ys_out.append(_to_base(np.array([y]), lvl.shape[0], base.shape[0])[0])
            scores_out.append(float(s))
            scales_out.append(factor)
    return make_keypoints(
        xs_out, ys_out, score=np.array(scores_out), scale=np.array(scales_out)
    )
