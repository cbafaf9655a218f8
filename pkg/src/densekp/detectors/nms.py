"""Non-maximum suppression over sparse score maps.

A candidate pixel survives iff no other candidate within Chebyshev radius r
has a strictly higher score, or an equal score at a lexicographically smaller
(row, col) position. The tie rule makes the survivor set unique, so the numba
and numpy paths (and the brute-force test oracles) agree exactly.
"""

from __future__ import annotations

import numpy as np

from ..accel import njit, select


def _suppress_numpy(score_map: np.ndarray, cand: np.ndarray, radius: int) -> np.ndarray:
    h, w = score_map.shape
    neg = np.full((h + 2 * radius, w + 2 * radius), -np.inf, dtype=np.float64)
    neg[radius : radius + h, radius : radius + w] = np.where(cand, score_map, -np.inf)
    order = np.arange(h * w, dtype=np.int64).reshape(h, w)
    order_pad = np.full(neg.shape, np.iinfo(np.int64).max, dtype=np.int64)
    order_pad[radius : radius + h, radius : radius + w] = order
    center = neg[radius : radius + h, radius : radius + w]
    keep = cand.copy()
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            if dy == 0 and dx == 0:
                continue
            other = neg[radius + dy : radius + dy + h, radius + dx : radius + dx + w]
            other_order = order_pad[radius + dy : radius + dy + h, radius + dx : radius + dx + w]
            beaten = (other > center) | ((other == center) & (other_order < order))
            keep &= ~beaten
    return keep


@njit(cache=True)
def _suppress_numba(score_map: np.ndarray, cand: np.ndarray, radius: int) -> np.ndarray:
    h, w = score_map.shape
    keep = np.zeros((h, w), dtype=np.bool_)
    for y in range(h):
        for x in range(w):
            if not cand[y, x]:
                continue
            s = score_map[y, x]
            ok = True
            for ny in range(max(0, y - radius), min(h, y + radius + 1)):
                for nx in range(max(0, x - radius), min(w, x + radius + 1)):
                    if ny == y and nx == x:
                        continue
                    if not cand[ny, nx]:
                        continue
                    t = score_map[ny, nx]
                    if t > s or (t == s and (ny * w + nx) < (y * w + x)):
                        ok = False
                        break
                if not ok:
                    break
            keep[y, x] = ok
    return keep


_suppress = select(_suppress_numba, _suppress_numpy)


def suppress_candidates(score_map: np.ndarray, cand: np.ndarray, radius: int) -> np.ndarray:
    """Boolean map of candidates surviving NMS within a Chebyshev radius."""
    score_map = np.ascontiguousarray(score_map, dtype=np.float64)
    cand = np.ascontiguousarray(cand, dtype=np.bool_)
    if score_map.shape != cand.shape:
        raise ValueError("score map and candidate mask shapes differ")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if radius == 0:
        return cand.copy()
    return _suppress(score_map, cand, radius)
