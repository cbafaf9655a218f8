"""Multi-detector supervision masks and training-corpus generation.

For an image, every keypoint detector's output is rasterized to a binary
mask, the two edge detectors contribute their maps directly, and the final
label is the pixel-wise OR of all nine masks. Low-visibility images get the
extremely permissive threshold profile so the label stays dense.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .detectors import EDGE_DETECTORS, KEYPOINT_DETECTORS, LOW, NORMAL, DetectorProfile
from .imgcore import (
    as_mask,
    as_rgb,
    check_keypoints_in_bounds,
    degrade_photometric,
    load_image,
    luma_stats,
    rgb_to_gray,
    save_image,
    save_mask,
)

LOW_MEAN_LUMA = 60.0
LOW_STD_LUMA = 20.0

DEGRADE_ALPHA_RANGE = (0.1, 0.4)
DEGRADE_BETA_RANGE = (-100.0, -50.0)

_IMAGE_EXTENSIONS = {".ppm", ".pgm", ".png"}


@dataclass(frozen=True)
class LabeledSample:
    image_path: str
    mask_path: str
    profile_used: str
    degraded: bool

    def to_json(self) -> dict:
        return {
            "image": self.image_path,
            "mask": self.mask_path,
            "profile": self.profile_used,
            "degraded": self.degraded,
        }

    @staticmethod
    def from_json(obj: dict) -> "LabeledSample":
        return LabeledSample(
            image_path=obj["image"],
            mask_path=obj["mask"],
            profile_used=obj["profile"],
            degraded=bool(obj["degraded"]),
        )


def rasterize_keypoints(kps: np.ndarray, width: int, height: int, dilate: int = 0) -> np.ndarray:
    """Paint one mask pixel per keypoint at its rounded position.

    ``dilate`` > 0 additionally paints a disc of that pixel radius around
    each keypoint.
    """
    kps = check_keypoints_in_bounds(np.asarray(kps, dtype=np.float64).reshape(-1, 4), width, height)
    mask = np.zeros((height, width), dtype=np.uint8)
    if len(kps) == 0:
        return mask
    xs = np.clip(np.rint(kps[:, 0]).astype(np.int64), 0, width - 1)
    ys = np.clip(np.rint(kps[:, 1]).astype(np.int64), 0, height - 1)
    mask[ys, xs] = 1
    if dilate > 0:
        dy, dx = np.mgrid[-dilate : dilate + 1, -dilate : dilate + 1]
        disc = (dy**2 + dx**2) <= dilate**2
        for oy, ox in zip(*np.nonzero(disc)):
            ny = np.clip(ys + (oy - dilate), 0, height - 1)
            nx = np.clip(xs + (ox - dilate), 0, width - 1)
            mask[ny, nx] = 1
    return mask


def fuse_masks(masks: list[np.ndarray]) -> np.ndarray:
    """Pixel-wise logical OR of equally sized binary masks."""
    if not masks:
        raise ValueError("fuse_masks requires at least one mask")
    out = as_mask(masks[0]).copy()
    for m in masks[1:]:
        m = as_mask(m)
        if m.shape != out.shape:
            raise ValueError(f"mask shape {m.shape} != {out.shape}")
        out |= m
    return out


def constituent_masks(img: np.ndarray, profile: DetectorProfile, dilate: int = 0) -> dict[str, np.ndarray]:
    """The 9 per-detector masks that make up a label, keyed by detector name."""
    img = as_rgb(img)
    gray = rgb_to_gray(img)
    height, width = gray.shape
    out = {}
    for name, fn in KEYPOINT_DETECTORS.items():
        out[name] = rasterize_keypoints(fn(gray, profile), width, height, dilate=dilate)
    for name, fn in EDGE_DETECTORS.items():
        out[name] = as_mask(fn(gray, profile))
    return out


def build_label(img: np.ndarray, profile: DetectorProfile, dilate: int = 0) -> np.ndarray:
    """Supervision mask: OR over all 7 keypoint and 2 edge detector masks."""
    return fuse_masks(list(constituent_masks(img, profile, dilate=dilate).values()))


def select_profile(img: np.ndarray, low_visibility: bool | None = None) -> DetectorProfile:
    """Pick the threshold profile; an explicit flag wins over the heuristic."""
    if low_visibility is not None:
        return LOW if low_visibility else NORMAL
    mean, std = luma_stats(img)
    if mean < LOW_MEAN_LUMA or std < LOW_STD_LUMA:
        return LOW
    return NORMAL


def list_corpus_images(src_dir) -> list[str]:
    names = sorted(
        n for n in os.listdir(src_dir)
        if os.path.splitext(n)[1].lower() in _IMAGE_EXTENSIONS
    )
    return [os.path.join(src_dir, n) for n in names]


def generate_corpus(src_dir, out_dir, degrade_fraction: float, seed: int) -> list[LabeledSample]:
    """Build image+mask training pairs and a JSON-lines manifest.

    A seeded choice of floor(fraction * N) readable images is photometrically
    degraded and labeled with the low profile; the rest are labeled with the
    auto-selected profile. Unreadable inputs produce a skip record in the
    manifest instead of a sample. Manifest order follows sorted input paths.
    """
    if not (0.0 <= degrade_fraction <= 1.0):
        raise ValueError(f"degrade_fraction must be in [0, 1], got {degrade_fraction}")
    paths = list_corpus_images(src_dir)
    if not paths:
        raise ValueError(f"no images found in {src_dir}")
    os.makedirs(out_dir, exist_ok=True)

    loaded: list[tuple[str, np.ndarray]] = []
    failures: list[tuple[str, str]] = []
    for path in paths:
        try:
            loaded.append((path, load_image(path)))
        except (OSError, ValueError) as exc:
            failures.append((path, str(exc)))

    rng = np.random.default_rng(seed)
    n_degrade = int(np.floor(degrade_fraction * len(loaded)))
    degrade_idx = set(
        rng.choice(len(loaded), size=n_degrade, replace=False).tolist()
    ) if n_degrade else set()

    records: dict[str, dict] = {path: {"image": path, "skipped": True, "error": msg} for path, msg in failures}
    samples: dict[str, LabeledSample] = {}
    for i, (path, img) in enumerate(loaded):
        stem = os.path.splitext(os.path.basename(path))[0]
        degraded = i in degrade_idx
        if degraded:
            alpha = float(rng.uniform(*DEGRADE_ALPHA_RANGE))
            beta = float(rng.uniform(*DEGRADE_BETA_RANGE))
            img = degrade_photometric(img, alpha, beta)
            profile = LOW
        else:
            profile = select_profile(img)
        image_out = os.path.join(out_dir, f"{stem}.ppm")
        mask_out = os.path.join(out_dir, f"{stem}_mask.pgm")
        save_image(img, image_out)
        save_mask(build_label(img, profile), mask_out)
        sample = LabeledSample(image_out, mask_out, profile.name, degraded)
        samples[path] = sample
        records[path] = sample.to_json() | {"seed": seed}

    manifest_path = os.path.join(out_dir, "manifest.jsonl")
    with open(manifest_path, "w", encoding="ascii") as fh:
        for path in paths:
            fh.write(json.dumps(records[path], sort_keys=True) + "\n")
    return [samples[p] for p in paths if p in samples]


def load_manifest(path) -> list[LabeledSample]:
    """Read sample records from a JSON-lines manifest, ignoring skip records."""
    samples = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            if obj.get("skipped"):
                continue
            samples.append(LabeledSample.from_json(obj))
    return samples
