"""Keypoint array conventions and CSV serialization.

A keypoint list is an ``(N, 4) float64`` array with columns ``x`` (column),
``y`` (row), ``score`` (detector response, 0 when unavailable) and ``scale``
(patch radius hint, default 8). Detectors return keypoints strictly inside
the source image bounds.
"""

from __future__ import annotations

import numpy as np

KP_X, KP_Y, KP_SCORE, KP_SCALE = 0, 1, 2, 3
DEFAULT_SCALE = 8.0

CSV_HEADER = "x,y,score,scale"


def empty_keypoints() -> np.ndarray:
    return np.zeros((0, 4), dtype=np.float64)


def make_keypoints(x, y, score=None, scale=None) -> np.ndarray:
    """Pack coordinate/score/scale columns into an (N, 4) keypoint array."""
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size:
        raise ValueError("x and y must have equal length")
    n = x.size
    score_col = np.zeros(n) if score is None else np.broadcast_to(np.asarray(score, dtype=np.float64), (n,))
    scale_col = np.full(n, DEFAULT_SCALE) if scale is None else np.broadcast_to(np.asarray(scale, dtype=np.float64), (n,))
    return np.stack([x, y, score_col, scale_col], axis=1)


def check_keypoints_in_bounds(kps: np.ndarray, width: int, height: int) -> np.ndarray:
    """Validate 0 <= x < width and 0 <= y < height; names the first offender."""
    kps = np.asarray(kps, dtype=np.float64)
    if kps.ndim != 2 or kps.shape[1] != 4:
        raise ValueError(f"keypoints must have shape (N, 4), got {kps.shape}")
    x, y = kps[:, KP_X], kps[:, KP_Y]
    bad = (x < 0) | (x >= width) | (y < 0) | (y >= height)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise ValueError(
            f"keypoint {i} at ({x[i]:.3f}, {y[i]:.3f}) outside {width}x{height} image"
        )
    return kps


def save_keypoints_csv(path, kps: np.ndarray) -> None:
    """Write keypoints as CSV with 6-decimal fixed-point values."""
    kps = np.asarray(kps, dtype=np.float64)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in kps:
            fh.write(f"{row[0]:.6f},{row[1]:.6f},{row[2]:.6f},{row[3]:.6f}\n")


def load_keypoints_csv(path) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"bad keypoint CSV header: {header!r}")
        rows = [line.split(",") for line in fh if line.strip()]
    if not rows:
        return empty_keypoints()
    return np.array(rows, dtype=np.float64)
