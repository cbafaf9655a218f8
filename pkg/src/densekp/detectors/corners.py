"""Structure-tensor corner detection: Harris response and minimum eigenvalue.

Sobel gradients feed a sigma=1 Gaussian-windowed structure tensor M. Harris
keeps R = det(M) - k * trace(M)^2 above a fraction of its maximum; the
Shi-Tomasi variant thresholds the smaller eigenvalue of M the same way. Both
finish with NMS over the response map.
"""

from __future__ import annotations

import numpy as np

from ..imgcore import as_gray, correlate1d, gaussian_kernel1d, make_keypoints, sobel_gradients
from .nms import suppress_candidates
from .profiles import DetectorProfile

WINDOW_SIGMA = 1.0


def structure_tensor(img: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gaussian-smoothed gradient outer products (Sxx, Syy, Sxy)."""
    gx, gy = sobel_gradients(img)
    kernel = gaussian_kernel1d(WINDOW_SIGMA, dtype=gx.dtype)

    def smooth(a):
        return correlate1d(correlate1d(a, kernel, axis=1), kernel, axis=0)

    return smooth(gx * gx), smooth(gy * gy), smooth(gx * gy)


def harris_response(img: np.ndarray, k: float) -> np.ndarray:
    sxx, syy, sxy = structure_tensor(img)
    det = sxx * syy - sxy * sxy
    trace = sxx + syy
    return (det - k * trace * trace).astype(np.float64)


def min_eigenvalue_response(img: np.ndarray) -> np.ndarray:
    sxx, syy, sxy = structure_tensor(img)
    sxx = sxx.astype(np.float64)
    syy = syy.astype(np.float64)
    sxy = sxy.astype(np.float64)
    half_trace = 0.5 * (sxx + syy)
    disc = np.sqrt(np.maximum(0.25 * (sxx - syy) ** 2 + sxy * sxy, 0.0))
    return half_trace - disc


def _threshold_and_suppress(response: np.ndarray, rel_t: float, nms_radius: int) -> np.ndarray:
    peak = float(response.max())
    if peak <= 0.0:
        return make_keypoints([], [])
    cand = response > rel_t * peak
    keep = suppress_candidates(response, cand, nms_radius)
    ys, xs = np.nonzero(keep)
    return make_keypoints(xs, ys, score=response[ys, xs])


def detect_harris(img: np.ndarray, profile: DetectorProfile) -> np.ndarray:
    """Harris corners above profile.harris_rel_t * max response, after NMS."""
    img = as_gray(img)
    if img.shape[0] < 5 or img.shape[1] < 5:
        raise ValueError(f"image must be at least 5x5, got {img.shape}")
    return _threshold_and_suppress(
        harris_response(img, profile.harris_k), profile.harris_rel_t, profile.nms_radius
    )


def detect_shi_tomasi(img: np.ndarray, profile: DetectorProfile) -> np.ndarray:
    """Corners by thresholded minimum structure-tensor eigenvalue, after NMS."""
    img = as_gray(img)
    if img.shape[0] < 5 or img.shape[1] < 5:
        raise ValueError(f"image must be at least 5x5, got {img.shape}")
    return _threshold_and_suppress(
        min_eigenvalue_response(img), profile.shi_rel_t, profile.nms_radius
    )
