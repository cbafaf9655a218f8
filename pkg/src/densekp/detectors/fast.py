"""Segment-test corner detection on a 16-pixel Bresenham circle.

A pixel is a corner when at least 9 circularly contiguous circle pixels are
all brighter than center + t or all darker than center - t. Its score is the
maximum over qualifying 9-long windows of the summed absolute contrast
|I_p - I_center|. The accelerated variant applies a two-stage evaluation
(4-pixel compass pretest, then the full test) and returns the identical
keypoint set.
"""

from __future__ import annotations

import numpy as np

from ..accel import njit, select
from ..imgcore import as_gray, make_keypoints
from .nms import suppress_candidates
from .profiles import DetectorProfile

ARC_LENGTH = 9

# (dx, dy) offsets of the radius-3 circle, clockwise from the top pixel.
CIRCLE_OFFSETS = np.array(
    [
        (0, -3), (1, -3), (2, -2), (3, -1), (3, 0), (3, 1), (2, 2), (1, 3),
        (0, 3), (-1, 3), (-2, 2), (-3, 1), (-3, 0), (-3, -1), (-2, -2), (-1, -3),
    ],
    dtype=np.int64,
)

_OFF_X = np.ascontiguousarray(CIRCLE_OFFSETS[:, 0])
_OFF_Y = np.ascontiguousarray(CIRCLE_OFFSETS[:, 1])

# Compass pixels 0/4/8/12: any 9-long window covers at least 2 of them.
_COMPASS = (0, 4, 8, 12)


def _segment_maps_numpy(img: np.ndarray, t: float, pretest: bool):
    h, w = img.shape
    ih, iw = h - 6, w - 6
    center = img[3 : 3 + ih, 3 : 3 + iw]
    vals = np.empty((16, ih, iw), dtype=img.dtype)
    for k in range(16):
        dx, dy = int(_OFF_X[k]), int(_OFF_Y[k])
        vals[k] = img[3 + dy : 3 + dy + ih, 3 + dx : 3 + dx + iw]
    tt = img.dtype.type(t)
    bright = vals > center + tt
    dark = vals < center - tt
    absd = np.abs(vals - center)

    active = np.ones((ih, iw), dtype=bool)
    if pretest:
        nb = sum(bright[k].astype(np.int32) for k in _COMPASS)
        nd = sum(dark[k].astype(np.int32) for k in _COMPASS)
        active = (nb >= 2) | (nd >= 2)

    cand = np.zeros((ih, iw), dtype=bool)
    score = np.zeros((ih, iw), dtype=img.dtype)
    for start in range(16):
        idx = [(start + j) % 16 for j in range(ARC_LENGTH)]
        for flags in (bright, dark):
            ok = active & flags[idx[0]]
            for k in idx[1:]:
                ok &= flags[k]
            if not ok.any():
                continue
            s = absd[idx[0]].copy()
            for k in idx[1:]:
                s = s + absd[k]
            cand |= ok
            score = np.where(ok & (s > score), s, score)

    cand_full = np.zeros((h, w), dtype=bool)
    score_full = np.zeros((h, w), dtype=np.float64)
    cand_full[3 : 3 + ih, 3 : 3 + iw] = cand
    score_full[3 : 3 + ih, 3 : 3 + iw] = score.astype(np.float64)
    return cand_full, score_full


@njit(cache=True)
def _segment_maps_kernel(img, t, off_x, off_y, pretest):
    h, w = img.shape
    cand = np.zeros((h, w), dtype=np.bool_)
    score = np.zeros((h, w), dtype=np.float64)
    tt = img.dtype.type(t)
    for y in range(3, h - 3):
        for x in range(3, w - 3):
            c = img[y, x]
            if pretest:
                nb = 0
                nd = 0
                for k in (0, 4, 8, 12):
                    v = img[y + off_y[k], x + off_x[k]]
                    if v > c + tt:
                        nb += 1
                    elif v < c - tt:
                        nd += 1
                if nb < 2 and nd < 2:
                    continue
            found = False
            best = img[y, x] * 0
            for start in range(16):
                okb = True
                okd = True
                s = img[y, x] * 0
                for j in range(ARC_LENGTH):
                    k = (start + j) % 16
                    v = img[y + off_y[k], x + off_x[k]]
                    if v <= c + tt:
                        okb = False
                    if v >= c - tt:
                        okd = False
                    if not (okb or okd):
                        break
                    s = s + abs(v - c)
                if okb or okd:
                    found = True
                    if s > best:
                        best = s
            if found:
                cand[y, x] = True
                score[y, x] = best
    return cand, score


def _segment_maps_numba(img: np.ndarray, t: float, pretest: bool):
    return _segment_maps_kernel(img, t, _OFF_X, _OFF_Y, pretest)


segment_test_maps = select(_segment_maps_numba, _segment_maps_numpy)


def _detect(img: np.ndarray, profile: DetectorProfile, pretest: bool) -> np.ndarray:
    img = as_gray(img)
    if img.shape[0] < 7 or img.shape[1] < 7:
        raise ValueError(f"image must be at least 7x7 for the segment test, got {img.shape}")
    cand, score = segment_test_maps(np.ascontiguousarray(img), float(profile.fast_t), pretest)
    keep = suppress_candidates(score, cand, profile.nms_radius)
    ys, xs = np.nonzero(keep)
    return make_keypoints(xs, ys, score=score[ys, xs])


def detect_fast(img: np.ndarray, profile: DetectorProfile) -> np.ndarray:
    """FAST-9 corners with NMS; integer coordinates, score filled."""
    return _detect(img, profile, pretest=False)


def detect_agast(img: np.ndarray, profile: DetectorProfile) -> np.ndarray:
    """Accelerated segment test; identical keypoint set to detect_fast."""
    return _detect(img, profile, pretest=True)
