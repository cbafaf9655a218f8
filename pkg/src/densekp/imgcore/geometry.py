"""Planar homographies: normalization, inversion, point projection."""

from __future__ import annotations

import numpy as np

DET_EPS = 1e-12
W_EPS = 1e-12


class PointAtInfinityError(ValueError):
    """Projection produced a vanishing homogeneous w coordinate."""


def as_homography(m: np.ndarray) -> np.ndarray:
    """Validate a 3x3 projective map; returns it scaled so m[2, 2] == 1."""
    m = np.asarray(m, dtype=np.float64)
    if m.shape != (3, 3):
        raise ValueError(f"homography must be 3x3, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("homography contains non-finite values")
    if abs(np.linalg.det(m)) <= DET_EPS:
        raise ValueError("homography is singular")
    if abs(m[2, 2]) <= W_EPS:
        raise ValueError("homography cannot be normalized: m[2, 2] is zero")
    return m / m[2, 2]


def invert_homography(h: np.ndarray) -> np.ndarray:
    return as_homography(np.linalg.inv(as_homography(h)))


def project_points(h: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Apply a homography to (N, 2) points: homogeneous multiply then divide."""
    h = np.asarray(h, dtype=np.float64)
    pts = np.atleast_2d(np.asarray(pts, dtype=np.float64))
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"points must have shape (N, 2), got {pts.shape}")
    ones = np.ones((pts.shape[0], 1))
    proj = np.hstack([pts, ones]) @ h.T
    w = proj[:, 2]
    if np.any(np.abs(w) < W_EPS):
        raise PointAtInfinityError("point projects to infinity (|w| < 1e-12)")
    return proj[:, :2] / w[:, None]


def project_point(h: np.ndarray, p: tuple[float, float]) -> tuple[float, float]:
    out = project_points(h, np.array([p], dtype=np.float64))[0]
    return float(out[0]), float(out[1])
